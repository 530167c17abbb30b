"""Binary extension fields GF(2^k) sized to carry the DFT of an odd-order abelian group."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd
from typing import Tuple

import numpy as np

from .errors import FieldError, InvalidParameterError


def multiplicative_order(base: int, modulus: int) -> int:
    """Smallest t >= 1 with base^t = 1 mod modulus."""
    if modulus == 1:
        return 1
    if gcd(base, modulus) != 1:
        raise InvalidParameterError(f"{base} is not invertible modulo {modulus}")
    value, t = base % modulus, 1
    while value != 1:
        value = value * base % modulus
        t += 1
    return t


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def clmul_mod(a: int, b: int, poly: int, degree: int) -> int:
    """Carry-less product of a and b reduced by ``poly``."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= poly
    return out


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(poly: int) -> bool:
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if divisor.bit_length() - 1 > degree // 2:
            break
        if _poly_mod(poly, divisor) == 0:
            return False
    return True


@lru_cache(maxsize=32)
def smallest_irreducible(degree: int) -> int:
    """Numerically smallest irreducible binary polynomial of the given degree."""
    for poly in range(1 << degree, 1 << (degree + 1)):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


def _prime_factors(value: int) -> Tuple[int, ...]:
    out, p = [], 2
    while p * p <= value:
        if value % p == 0:
            out.append(p)
            while value % p == 0:
                value //= p
        p += 1
    if value > 1:
        out.append(value)
    return tuple(out)


@dataclass(frozen=True)
class GF2mField:
    """GF(2^k) as polynomials modulo ``poly`` with exp/log tables over a multiplicative generator."""

    degree: int
    poly: int
    generator: int
    exp: np.ndarray = field(repr=False, compare=False)
    log: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def build(cls, degree: int) -> "GF2mField":
        poly = smallest_irreducible(degree)
        order = (1 << degree) - 1
        factors = _prime_factors(order) if order > 1 else ()
        for candidate in range(2 if degree > 1 else 1, 1 << degree):
            if all(cls._power(candidate, order // q, poly, degree) != 1 for q in factors):
                break
        else:  # pragma: no cover
            raise FieldError(f"no generator found in GF(2^{degree})")
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(1 << degree, -1, dtype=np.int64)
        value = 1
        for t in range(order):
            exp[t] = value
            log[value] = t
            value = clmul_mod(value, candidate, poly, degree)
        exp[order:] = exp[:order]
        exp.setflags(write=False)
        log.setflags(write=False)
        return cls(degree, poly, candidate, exp, log)

    @staticmethod
    def _power(a: int, e: int, poly: int, degree: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = clmul_mod(out, a, poly, degree)
            a = clmul_mod(a, a, poly, degree)
            e >>= 1
        return out

    @property
    def size(self) -> int:
        return 1 << self.degree

    @property
    def order(self) -> int:
        """Size of the multiplicative group."""
        return self.size - 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return clmul_mod(a, b, self.poly, self.degree)

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nonzero = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        la = np.broadcast_to(self.log[a], out.shape)
        lb = np.broadcast_to(self.log[b], out.shape)
        out[nonzero] = self.exp[(la[nonzero] + lb[nonzero]) % self.order]
        return out

    def square_array(self, a: np.ndarray) -> np.ndarray:
        return self.mul_array(a, a)


@dataclass(frozen=True)
class FieldSpec:
    """The extension field of a group together with a root of unity per cyclic factor."""

    gf: GF2mField
    cyclic_orders: Tuple[int, ...]
    alpha_logs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.gf.degree

    @property
    def poly(self) -> int:
        return self.gf.poly

    @property
    def alphas(self) -> Tuple[int, ...]:
        return tuple(int(self.gf.exp[t]) for t in self.alpha_logs)


@lru_cache(maxsize=32)
def _field_for_orders(cyclic_orders: Tuple[int, ...]) -> FieldSpec:
    if any(order % 2 == 0 for order in cyclic_orders):
        raise FieldError(f"group orders {cyclic_orders} include an even order")
    degree = reduce(_lcm, (multiplicative_order(2, order) for order in cyclic_orders), 1)
    gf = GF2mField.build(degree)
    logs = tuple(gf.order // order for order in cyclic_orders)
    return FieldSpec(gf, cyclic_orders, logs)


def build_field(group) -> FieldSpec:
    """Smallest GF(2^k) holding primitive m_l-th roots of unity for every cyclic factor of ``group``."""
    return _field_for_orders(tuple(group.cyclic_orders))
