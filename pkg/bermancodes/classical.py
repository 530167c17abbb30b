"""Classical group-algebra generators of dual Berman codes over Z_p^m when 2 is primitive mod p."""
from __future__ import annotations

from itertools import combinations
from typing import List, Sequence

import numpy as np

from .abelian import GroupSpec, group_algebra_product, monomial_shift
from .coords import tuple_table
from .errors import InvalidParameterError
from .field import multiplicative_order
from .gf2 import BitMatrix, BitVector, row_basis


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def check_two_primitive(p: int) -> None:
    if not _is_prime(p) or p == 2:
        raise InvalidParameterError(f"{p} is not an odd prime")
    if multiplicative_order(2, p) != p - 1:
        raise InvalidParameterError(f"2 is not a primitive root modulo {p}")


def axis_element(p: int, m: int, k: int) -> BitVector:
    """a^(k) = sum over beta of X^(beta e_k): the indicator of the k-th axis."""
    table = tuple_table(p, m)
    off_axis = np.delete(table, k, axis=1)
    return BitVector.from_bits((off_axis == 0).all(axis=1).astype(np.uint8))


def blackmore_norton_generators(p: int, r: int, m: int) -> List[BitVector]:
    """Products b^(k) over a set S of at most r positions times a^(k) over the rest, with b^(k) = 1 + a^(k)."""
    check_two_primitive(p)
    if not 0 <= r <= m:
        raise InvalidParameterError(f"r must lie in [0, {m}], got {r}")
    group = GroupSpec((p,), m)
    identity = BitVector.unit(group.size, 0)
    axes = [axis_element(p, m, k) for k in range(m)]
    complements = [identity ^ a for a in axes]
    out = []
    for s in range(r + 1):
        for chosen in combinations(range(m), s):
            element = identity
            for k in range(m):
                factor = complements[k] if k in chosen else axes[k]
                element = group_algebra_product(element, factor, group)
            out.append(element)
    return out


def blackmore_norton_ideal(p: int, r: int, m: int) -> BitMatrix:
    """Basis of the ideal generated by the products above; it equals C_p(r,m)."""
    group = GroupSpec((p,), m)
    rows = []
    for element in blackmore_norton_generators(p, r, m):
        rows.extend(monomial_shift(element, k, group) for k in range(group.size))
    return row_basis(BitMatrix.from_rows(rows))


def irreducible_generator_matrix(p: int, m: int, j: Sequence[int]) -> BitMatrix:
    """(p-1) x p^m matrix with entry 1 when i.j differs from k, for k = 1..p-1.

    Its rows span the irreducible code whose spectrum is supported on the
    conjugacy class of j.
    """
    check_two_primitive(p)
    if len(j) != m or any(not 0 <= x < p for x in j):
        raise InvalidParameterError(f"{tuple(j)} is not an element of Z_{p}^{m}")
    if not any(j):
        raise InvalidParameterError("the zero class gives the repetition code; pick j != 0")
    dots = (tuple_table(p, m) @ np.asarray(j, dtype=np.int64)) % p
    levels = np.arange(1, p)[:, None]
    return BitMatrix.from_array((dots[None, :] != levels).astype(np.uint8))
