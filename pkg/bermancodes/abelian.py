"""Abelian codes in F_2[G^m]: the DFT over GF(2^k), conjugacy classes and zero-set codes."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .codes import CodeSpec, Family, generator_matrix
from .coords import tuple_table, weight_table
from .errors import DimensionMismatchError, InvalidParameterError, ZeroSetError
from .field import FieldSpec, build_field
from .gf2 import BitMatrix, BitVector, null_space, rank, row_space_equal, vstack
from .symmetry import CoordinateAutomorphism, apply_automorphism


@dataclass(frozen=True)
class GroupSpec:
    """G^m for G = Z_{m_0} x ... x Z_{m_{s-1}} with every m_l odd.

    A group element is stored as its mixed-radix index (first factor least
    significant), so 0 is the identity and G^m shares the colexicographic
    coordinates of the Berman codes of length |G|^m.
    """

    cyclic_orders: Tuple[int, ...]
    m: int = 1

    def __post_init__(self) -> None:
        orders = tuple(int(x) for x in self.cyclic_orders)
        object.__setattr__(self, "cyclic_orders", orders)
        if not orders:
            raise InvalidParameterError("a group needs at least one cyclic factor")
        if any(x < 3 or x % 2 == 0 for x in orders):
            raise InvalidParameterError(f"cyclic orders must be odd and at least 3, got {orders}")
        if self.m < 1:
            raise InvalidParameterError(f"m must be at least 1, got {self.m}")

    @classmethod
    def parse(cls, text: str, m: int = 1) -> "GroupSpec":
        try:
            orders = tuple(int(x) for x in text.split(",") if x.strip())
        except ValueError as exc:
            raise InvalidParameterError(f"not a comma separated list of orders: {text!r}") from exc
        return cls(orders, m)

    @property
    def order(self) -> int:
        """|G|."""
        return int(np.prod(self.cyclic_orders))

    @property
    def size(self) -> int:
        """|G^m|."""
        return self.order**self.m

    @property
    def label(self) -> str:
        return " x ".join(f"Z_{x}" for x in self.cyclic_orders) + f", m={self.m}"


# ---------- element tables ----------

def _radix(orders: Tuple[int, ...]) -> np.ndarray:
    return np.concatenate([[1], np.cumprod(orders[:-1])]).astype(np.int64)


@lru_cache(maxsize=64)
def element_components(group: GroupSpec) -> np.ndarray:
    """(|G|^m, m, s) array of cyclic components of every element of G^m."""
    orders = np.array(group.cyclic_orders, dtype=np.int64)
    radix = _radix(group.cyclic_orders)
    table = tuple_table(group.order, group.m)
    comps = (table[:, :, None] // radix[None, None, :]) % orders[None, None, :]
    comps.setflags(write=False)
    return comps


def _encode(group: GroupSpec, comps: np.ndarray) -> np.ndarray:
    elements = (comps * _radix(group.cyclic_orders)).sum(axis=-1)
    powers = group.order ** np.arange(group.m, dtype=np.int64)
    return elements @ powers


def _componentwise(group: GroupSpec, scale: np.ndarray) -> np.ndarray:
    orders = np.array(group.cyclic_orders, dtype=np.int64)
    return _encode(group, (element_components(group) * scale) % orders)


@lru_cache(maxsize=64)
def doubling_map(group: GroupSpec) -> np.ndarray:
    """Index of 2j for every j."""
    return _componentwise(group, np.int64(2))


@lru_cache(maxsize=64)
def negation_map(group: GroupSpec) -> np.ndarray:
    return _componentwise(group, np.int64(-1))


def pi_map(group: GroupSpec, k: int) -> np.ndarray:
    """Index of (i_0, ..., 2 i_k, ..., i_{m-1}) for every i."""
    if not 0 <= k < group.m:
        raise InvalidParameterError(f"position {k} outside [0, {group.m})")
    scale = np.ones((group.m, 1), dtype=np.int64)
    scale[k] = 2
    return _componentwise(group, scale)


def translation_map(group: GroupSpec, k: int) -> np.ndarray:
    """Index of k + t for every t."""
    orders = np.array(group.cyclic_orders, dtype=np.int64)
    comps = element_components(group)
    return _encode(group, (comps + comps[k]) % orders)


def element_tuple(group: GroupSpec, index: int) -> Tuple[Union[int, Tuple[int, ...]], ...]:
    """Readable form of an element of G^m: ints for cyclic G, component tuples otherwise."""
    comps = element_components(group)[index]
    if len(group.cyclic_orders) == 1:
        return tuple(int(c[0]) for c in comps)
    return tuple(tuple(int(x) for x in c) for c in comps)


def element_index(group: GroupSpec, entries: Sequence[Union[int, Sequence[int]]]) -> int:
    if len(entries) != group.m:
        raise InvalidParameterError(f"element of G^{group.m} needs {group.m} entries, got {len(entries)}")
    radix = _radix(group.cyclic_orders)
    index = 0
    for k in reversed(range(group.m)):
        entry = entries[k]
        if isinstance(entry, (int, np.integer)):
            value = int(entry)
        else:
            parts = [int(x) for x in entry]
            if len(parts) != len(group.cyclic_orders) or any(
                not 0 <= x < o for x, o in zip(parts, group.cyclic_orders)
            ):
                raise InvalidParameterError(f"bad group element {entry!r} for {group.cyclic_orders}")
            value = int(np.dot(parts, radix))
        if not 0 <= value < group.order:
            raise InvalidParameterError(f"group element {entry!r} outside [0, {group.order})")
        index = index * group.order + value
    return index


# ---------- classes ----------

@lru_cache(maxsize=64)
def conjugacy_partition(group: GroupSpec) -> Tuple[Tuple[int, ...], ...]:
    """Orbits of j -> 2j on G^m as sorted index tuples, ordered by their smallest member."""
    double = doubling_map(group)
    seen = np.zeros(group.size, dtype=bool)
    classes = []
    for start in range(group.size):
        if seen[start]:
            continue
        orbit, j = [], start
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = int(double[j])
        classes.append(tuple(sorted(orbit)))
    return tuple(classes)


def weight_classes(group: GroupSpec) -> Dict[int, Tuple[int, ...]]:
    weights = weight_table(group.order, group.m)
    return {w: tuple(int(i) for i in np.flatnonzero(weights == w)) for w in range(group.m + 1)}


# ---------- transform ----------

@lru_cache(maxsize=16)
def character_exponents(group: GroupSpec, fs: FieldSpec) -> np.ndarray:
    """E[j, i] with alpha^(i.j) = g^E[j, i] for the field generator g."""
    comps = element_components(group).reshape(group.size, -1)
    steps = np.tile(np.array(fs.alpha_logs, dtype=np.int64), group.m)
    exponents = ((comps * steps) @ comps.T) % fs.gf.order
    exponents.setflags(write=False)
    return exponents


@dataclass(frozen=True, eq=False)
class Spectrum:
    group: GroupSpec
    field: FieldSpec
    values: np.ndarray

    def __getitem__(self, j: int) -> int:
        return int(self.values[j])

    def is_conjugate_symmetric(self) -> bool:
        """A_{2j} = A_j^2 for every j."""
        squares = self.field.gf.square_array(self.values)
        return bool(np.array_equal(self.values[doubling_map(self.group)], squares))

    def zeros(self) -> FrozenSet[int]:
        return frozenset(int(j) for j in np.flatnonzero(self.values == 0))


def _field_for(group: GroupSpec, fs: Optional[FieldSpec]) -> FieldSpec:
    fs = fs or build_field(group)
    if tuple(fs.cyclic_orders) != group.cyclic_orders:
        raise InvalidParameterError("field was built for a different group")
    return fs


def dft(a: BitVector, group: GroupSpec, fs: Optional[FieldSpec] = None) -> Spectrum:
    """A_j = sum_i alpha^(i.j) a_i."""
    if len(a) != group.size:
        raise DimensionMismatchError(f"{group.label} needs length {group.size}, got {len(a)}")
    fs = _field_for(group, fs)
    support = a.support()
    if support.size == 0:
        return Spectrum(group, fs, np.zeros(group.size, dtype=np.int64))
    terms = fs.gf.exp[character_exponents(group, fs)[:, support]]
    return Spectrum(group, fs, np.bitwise_xor.reduce(terms, axis=1))


def idft(spectrum: Spectrum) -> np.ndarray:
    """a_i = sum_j alpha^(-i.j) A_j; |G^m| is odd so no scaling is needed."""
    group, fs = spectrum.group, spectrum.field
    values = np.asarray(spectrum.values, dtype=np.int64)
    nonzero = np.flatnonzero(values)
    if nonzero.size == 0:
        return np.zeros(group.size, dtype=np.int64)
    logs = fs.gf.log[values[nonzero]]
    exponents = (logs[None, :] - character_exponents(group, fs)[:, nonzero]) % fs.gf.order
    return np.bitwise_xor.reduce(fs.gf.exp[exponents], axis=1)


def idft_binary(spectrum: Spectrum) -> BitVector:
    values = idft(spectrum)
    if (values > 1).any():
        raise InvalidParameterError("spectrum is not the transform of a binary sequence")
    return BitVector.from_bits(values.astype(np.uint8))


# ---------- zero sets ----------

@dataclass(frozen=True)
class ZeroSet:
    group: GroupSpec
    members: FrozenSet[int]

    def __post_init__(self) -> None:
        members = frozenset(int(j) for j in self.members)
        if any(not 0 <= j < self.group.size for j in members):
            raise ZeroSetError(f"zero-set index outside [0, {self.group.size})")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members

    @classmethod
    def from_tuples(cls, group: GroupSpec, tuples: Iterable[Sequence]) -> "ZeroSet":
        return cls(group, frozenset(element_index(group, t) for t in tuples))

    def to_tuples(self) -> List[Tuple]:
        return [element_tuple(self.group, j) for j in sorted(self.members)]

    def complement(self) -> "ZeroSet":
        return ZeroSet(self.group, frozenset(range(self.group.size)) - self.members)

    def _closed_under(self, mapping: np.ndarray) -> bool:
        return all(int(mapping[j]) in self.members for j in self.members)

    def is_doubling_closed(self) -> bool:
        return self._closed_under(doubling_map(self.group))

    def to_json(self) -> str:
        document = {
            "group": list(self.group.cyclic_orders),
            "m": self.group.m,
            "zero_set": [_jsonable(t) for t in self.to_tuples()],
        }
        return json.dumps(document, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ZeroSet":
        try:
            document = json.loads(text)
            group = GroupSpec(tuple(document["group"]), int(document["m"]))
            entries = document["zero_set"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ZeroSetError(f"malformed zero-set document: {exc}") from exc
        return cls.from_tuples(group, entries)

    @classmethod
    def load(cls, path: Path) -> "ZeroSet":
        return cls.from_json(Path(path).read_text())


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def weight_zero_set(group: GroupSpec, weights: Iterable[int]) -> ZeroSet:
    wanted = set(weights)
    table = weight_table(group.order, group.m)
    return ZeroSet(group, frozenset(int(j) for j in np.flatnonzero(np.isin(table, list(wanted)))))


def odd_weight_zero_set(group: GroupSpec) -> ZeroSet:
    return weight_zero_set(group, range(1, group.m + 1, 2))


def code_from_zero_set(Z: ZeroSet, fs: Optional[FieldSpec] = None) -> BitMatrix:
    """Generator basis of {a : dft(a)_j = 0 for all j in Z}.

    Each conjugacy class inside Z contributes one representative, expanded
    into k binary constraints through the polynomial basis of GF(2^k).
    """
    group = Z.group
    if not Z.is_doubling_closed():
        raise ZeroSetError("zero-set is not closed under doubling")
    if not Z.members:
        return BitMatrix.identity(group.size)
    fs = _field_for(group, fs)
    reps = [cls[0] for cls in conjugacy_partition(group) if cls[0] in Z.members]
    values = fs.gf.exp[character_exponents(group, fs)[reps]]
    bits = (values[:, None, :] >> np.arange(fs.degree)[None, :, None]) & 1
    constraints = BitMatrix.from_array(bits.reshape(-1, group.size).astype(np.uint8))
    return null_space(constraints)


def berman_zero_sets(group: GroupSpec, r: int) -> Tuple[ZeroSet, ZeroSet]:
    """Zero-sets of C_G(r,m) (weights >= r+1) and D_G(r,m) (weights <= r)."""
    if not 0 <= r <= group.m:
        raise InvalidParameterError(f"r must lie in [0, {group.m}], got {r}")
    high = weight_zero_set(group, range(r + 1, group.m + 1))
    return high, high.complement()


@dataclass(frozen=True)
class EquivalenceReport:
    dual_matches: bool
    berman_matches: bool
    complementary: bool

    @property
    def equivalent(self) -> bool:
        return self.dual_matches and self.berman_matches and self.complementary


def equivalence_check(group: GroupSpec, r: int, fs: Optional[FieldSpec] = None) -> EquivalenceReport:
    zs, zs_bar = berman_zero_sets(group, r)
    dual_code = code_from_zero_set(zs, fs)
    berman_code = code_from_zero_set(zs_bar, fs)
    n = group.order
    dual_ok = row_space_equal(dual_code, generator_matrix(CodeSpec(n, r, group.m, Family.DUAL)))
    berman_ok = row_space_equal(berman_code, generator_matrix(CodeSpec(n, r, group.m, Family.BERMAN)))
    complementary = rank(vstack([dual_code, berman_code])) == dual_code.rows + berman_code.rows
    return EquivalenceReport(dual_ok, berman_ok, complementary)


@dataclass(frozen=True)
class ZeroSetReport:
    doubling_closed: bool
    pi_closed: Tuple[bool, ...]
    position_closed: bool

    @property
    def holds(self) -> bool:
        return self.doubling_closed and all(self.pi_closed) and self.position_closed


def validate_capacity_family_zero_set(Z: ZeroSet) -> ZeroSetReport:
    """Closure of Z under doubling, every pi_k and the adjacent position swaps."""
    group = Z.group
    pi_closed = tuple(Z._closed_under(pi_map(group, k)) for k in range(group.m))
    position_closed = True
    for k in range(group.m - 1):
        gamma = list(range(group.m))
        gamma[k], gamma[k + 1] = gamma[k + 1], gamma[k]
        swap = CoordinateAutomorphism.position_permutation(gamma, group.order).index_map()
        position_closed = position_closed and Z._closed_under(swap)
    return ZeroSetReport(Z.is_doubling_closed(), pi_closed, position_closed)


# ---------- group algebra ----------

def _bits(a: BitVector, group: GroupSpec) -> np.ndarray:
    if len(a) != group.size:
        raise DimensionMismatchError(f"{group.label} needs length {group.size}, got {len(a)}")
    return a.to_array()


def monomial_shift(a: BitVector, k: int, group: GroupSpec) -> BitVector:
    """X^k a, i.e. (X^k a)_i = a_{i-k}."""
    bits = _bits(a, group)
    out = np.empty_like(bits)
    out[translation_map(group, k)] = bits
    return BitVector.from_bits(out)


def group_algebra_product(a: BitVector, b: BitVector, group: GroupSpec) -> BitVector:
    """(ab)_i = sum_k a_k b_{i-k} over GF(2)."""
    left = _bits(a, group)
    right = _bits(b, group)
    out = np.zeros(group.size, dtype=np.uint8)
    for k in np.flatnonzero(left):
        shifted = np.empty_like(right)
        shifted[translation_map(group, int(k))] = right
        out ^= shifted
    return BitVector.from_bits(out)


def time_reversal(a: BitVector, group: GroupSpec) -> BitVector:
    """c_i = a_{-i}."""
    return BitVector.from_bits(_bits(a, group)[negation_map(group)])


def pi_permutation(a: BitVector, k: int, group: GroupSpec) -> BitVector:
    """b_{pi_k(i)} = a_i."""
    bits = _bits(a, group)
    out = np.empty_like(bits)
    out[pi_map(group, k)] = bits
    return BitVector.from_bits(out)


def position_permutation(a: BitVector, gamma: Sequence[int], group: GroupSpec) -> BitVector:
    _bits(a, group)
    auto = CoordinateAutomorphism.position_permutation(gamma, group.order)
    return apply_automorphism(auto, a, group.order, group.m)
