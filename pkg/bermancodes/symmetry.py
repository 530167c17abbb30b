"""Coordinate symmetries: automorphisms, puncturing, orbits and the double-transitivity test."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Sequence, Set, Tuple

import numpy as np

from .codes import CodeSpec, Family, generator_matrix, parameters
from .coords import CoordTuple, coord_index, coord_tuple, tuple_table
from .errors import DimensionMismatchError, InvalidParameterError
from .gf2 import BitMatrix, BitVector, row_basis

__all__ = [
    "AutomorphismKind",
    "CoordinateAutomorphism",
    "DirectProductSubset",
    "DoubleTransitivityReport",
    "apply_automorphism",
    "coord_index",
    "coord_tuple",
    "double_transitivity_necessary_check",
    "orbit_lower_bound",
    "puncture_code",
    "punctured_spec",
    "random_automorphism",
    "transitivity_witness",
    "weight_class_orbit",
]


def _is_permutation(values: Sequence[int], size: int) -> bool:
    return sorted(values) == list(range(size))


def _inverse(perm: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * len(perm)
    for k, p in enumerate(perm):
        out[p] = k
    return tuple(out)


class AutomorphismKind(str, Enum):
    PER_COORDINATE = "per_coordinate"
    POSITION = "position"


@dataclass(frozen=True)
class CoordinateAutomorphism:
    """A relabeling of [n]^m that preserves both code families.

    Per-coordinate: (i_0, ..., i_{m-1}) -> (σ_0(i_0), ..., σ_{m-1}(i_{m-1})).
    Position: (i_0, ..., i_{m-1}) -> (i_γ(0), ..., i_γ(m-1)).
    """

    kind: AutomorphismKind
    n: int
    m: int
    sigmas: Tuple[Tuple[int, ...], ...] = ()
    gamma: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is AutomorphismKind.PER_COORDINATE:
            if len(self.sigmas) != self.m or not all(_is_permutation(s, self.n) for s in self.sigmas):
                raise InvalidParameterError(f"need {self.m} permutations of [0, {self.n})")
        elif not _is_permutation(self.gamma, self.m):
            raise InvalidParameterError(f"gamma must permute [0, {self.m})")

    @classmethod
    def per_coordinate(cls, sigmas: Sequence[Sequence[int]]) -> "CoordinateAutomorphism":
        sigmas = tuple(tuple(int(x) for x in s) for s in sigmas)
        n = len(sigmas[0]) if sigmas else 0
        return cls(AutomorphismKind.PER_COORDINATE, n, len(sigmas), sigmas=sigmas)

    @classmethod
    def position_permutation(cls, gamma: Sequence[int], n: int) -> "CoordinateAutomorphism":
        gamma = tuple(int(x) for x in gamma)
        return cls(AutomorphismKind.POSITION, n, len(gamma), gamma=gamma)

    @classmethod
    def identity(cls, n: int, m: int) -> "CoordinateAutomorphism":
        return cls.position_permutation(range(m), n)

    def inverse(self) -> "CoordinateAutomorphism":
        if self.kind is AutomorphismKind.PER_COORDINATE:
            return CoordinateAutomorphism.per_coordinate([_inverse(s) for s in self.sigmas])
        return CoordinateAutomorphism.position_permutation(_inverse(self.gamma), self.n)

    def map_tuple(self, i: Sequence[int]) -> CoordTuple:
        if self.kind is AutomorphismKind.PER_COORDINATE:
            return tuple(self.sigmas[k][i[k]] for k in range(self.m))
        return tuple(i[self.gamma[k]] for k in range(self.m))

    def index_map(self) -> np.ndarray:
        """Entry idx is the linear index of a(idx)."""
        table = tuple_table(self.n, self.m)
        if self.kind is AutomorphismKind.PER_COORDINATE:
            sig = np.array(self.sigmas, dtype=np.int64)
            mapped = sig[np.arange(self.m)[None, :], table]
        else:
            mapped = table[:, list(self.gamma)]
        powers = self.n ** np.arange(self.m, dtype=np.int64)
        return mapped @ powers


def apply_automorphism(a: CoordinateAutomorphism, v: BitVector, n: int, m: int) -> BitVector:
    """Move the bit at coordinate i to coordinate a(i)."""
    if (a.n, a.m) != (n, m):
        raise InvalidParameterError(f"automorphism acts on [{a.n}]^{a.m}, not [{n}]^{m}")
    if len(v) != n**m:
        raise DimensionMismatchError(f"expected length {n**m}, got {len(v)}")
    out = np.empty(n**m, dtype=np.uint8)
    out[a.index_map()] = v.to_array()
    return BitVector.from_bits(out)


def transitivity_witness(i: Sequence[int], j: Sequence[int], n: int) -> CoordinateAutomorphism:
    """Per-coordinate automorphism sending tuple i to tuple j with transpositions (i_k j_k)."""
    if len(i) != len(j):
        raise DimensionMismatchError("tuples of different lengths")
    sigmas = []
    for a, b in zip(i, j):
        perm = list(range(n))
        perm[a], perm[b] = b, a
        sigmas.append(perm)
    return CoordinateAutomorphism.per_coordinate(sigmas)


def random_automorphism(
    rng: np.random.Generator, n: int, m: int, kind: AutomorphismKind
) -> CoordinateAutomorphism:
    if AutomorphismKind(kind) is AutomorphismKind.PER_COORDINATE:
        return CoordinateAutomorphism.per_coordinate([rng.permutation(n).tolist() for _ in range(m)])
    return CoordinateAutomorphism.position_permutation(rng.permutation(m).tolist(), n)


# ---------- puncturing ----------

@dataclass(frozen=True)
class DirectProductSubset:
    """H = {i : i_K = b}."""

    K: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "K", tuple(int(k) for k in self.K))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.K) != len(self.b):
            raise InvalidParameterError("K and b must have the same length")
        if len(set(self.K)) != len(self.K):
            raise InvalidParameterError(f"repeated positions in K={self.K}")

    def validate(self, n: int, m: int) -> None:
        if any(not 0 <= k < m for k in self.K):
            raise InvalidParameterError(f"positions {self.K} outside [0, {m})")
        if any(not 0 <= x < n for x in self.b):
            raise InvalidParameterError(f"values {self.b} outside [0, {n})")

    def size(self, n: int, m: int) -> int:
        return n ** (m - len(self.K))

    def indices(self, n: int, m: int) -> np.ndarray:
        self.validate(n, m)
        table = tuple_table(n, m)
        if not self.K:
            return np.arange(n**m)
        keep = (table[:, list(self.K)] == np.array(self.b)[None, :]).all(axis=1)
        return np.flatnonzero(keep)


def punctured_spec(spec: CodeSpec, H: DirectProductSubset) -> CodeSpec:
    """The shorter member of the same family that puncturing onto H produces."""
    H.validate(spec.n, spec.m)
    k = len(H.K)
    if k >= spec.m:
        raise InvalidParameterError(
            f"|K|={k}: puncturing [{spec.n}]^{spec.m} supports 0 <= |K| <= {spec.m - 1} fixed positions"
        )
    if spec.family is Family.DUAL:
        if spec.r > spec.m - k:
            raise InvalidParameterError(f"puncturing {spec.label} needs r <= m - |K| = {spec.m - k}")
        return CodeSpec(spec.n, spec.r, spec.m - k, Family.DUAL)
    if spec.r < k:
        raise InvalidParameterError(f"puncturing {spec.label} needs r >= |K| = {k}")
    return CodeSpec(spec.n, spec.r - k, spec.m - k, Family.BERMAN)


def puncture_code(spec: CodeSpec, H: DirectProductSubset) -> BitMatrix:
    """Generator rows restricted to the columns in H, reduced to a basis."""
    punctured_spec(spec, H)
    G = generator_matrix(spec)
    return row_basis(G.select_columns(H.indices(spec.n, spec.m)))


# ---------- orbits and transitivity ----------

def weight_class_orbit(i: Sequence[int], n: int, m: int) -> Set[CoordTuple]:
    """All tuples with the weight of i; contained in the orbit of i under 0-fixing automorphisms."""
    if len(i) != m:
        raise DimensionMismatchError(f"tuple of length {len(i)} for m={m}")
    coord_index(i, n)
    w = sum(1 for x in i if x)
    if w == 0:
        raise InvalidParameterError("the zero tuple is fixed by every automorphism used here")
    table = tuple_table(n, m)
    rows = table[(table != 0).sum(axis=1) == w]
    return {tuple(int(x) for x in row) for row in rows}


def orbit_lower_bound(n: int, m: int, w: int, abelian: bool = False) -> int:
    """Size of the weight-w class; abelian codes only guarantee C(m,w)·2^w."""
    return comb(m, w) * (2**w if abelian else (n - 1) ** w)


@dataclass(frozen=True)
class DoubleTransitivityReport:
    product: int
    bound: int
    passes: bool


def double_transitivity_necessary_check(spec: CodeSpec) -> DoubleTransitivityReport:
    """(dmin - 1)(dmin_dual - 1) >= N - 1 must hold for any doubly transitive code."""
    if not 1 <= spec.r <= spec.m - 1:
        raise InvalidParameterError(f"{spec.label} or its dual is trivial; need 1 <= r <= m-1")
    d = parameters(spec).min_distance
    d_dual = parameters(spec.dual).min_distance
    product = (d - 1) * (d_dual - 1)
    bound = spec.length - 1
    return DoubleTransitivityReport(product, bound, product >= bound)
