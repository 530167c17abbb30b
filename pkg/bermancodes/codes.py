"""Berman codes D_n(r,m), dual Berman codes C_n(r,m) and Reed-Muller reference codes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import List, Optional

import numpy as np

from .coords import containment_mask, tuple_table, weight_table
from .errors import DimensionMismatchError, InvalidParameterError
from .gf2 import BitMatrix, BitVector

MAX_ENUMERATION_DIMENSION = 20


class Family(str, Enum):
    BERMAN = "berman"
    DUAL = "dual"

    @property
    def other(self) -> "Family":
        return Family.DUAL if self is Family.BERMAN else Family.BERMAN


@dataclass(frozen=True)
class CodeSpec:
    """The triple (n, r, m) plus the family it names."""

    n: int
    r: int
    m: int
    family: Family

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "family", Family(self.family))
        except ValueError as exc:
            raise InvalidParameterError(f"unknown family {self.family!r}") from exc
        if self.n < 2:
            raise InvalidParameterError(f"n must be at least 2, got {self.n}")
        if self.m < 1:
            raise InvalidParameterError(f"m must be at least 1, got {self.m}")
        if not 0 <= self.r <= self.m:
            raise InvalidParameterError(f"r must lie in [0, {self.m}], got {self.r}")

    @property
    def length(self) -> int:
        return self.n**self.m

    @property
    def dual(self) -> "CodeSpec":
        return CodeSpec(self.n, self.r, self.m, self.family.other)

    @property
    def label(self) -> str:
        letter = "D" if self.family is Family.BERMAN else "C"
        return f"{letter}_{self.n}({self.r},{self.m})"


@dataclass(frozen=True)
class CodeParameters:
    length: int
    dimension: int
    min_distance: Optional[int]

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dimension, self.length)


def dual_berman_dimension(n: int, r: int, m: int) -> int:
    return sum(comb(m, w) * (n - 1) ** w for w in range(r + 1))


def parameters(spec: CodeSpec) -> CodeParameters:
    n, r, m = spec.n, spec.r, spec.m
    full = dual_berman_dimension(n, r, m)
    if spec.family is Family.DUAL:
        return CodeParameters(spec.length, full, n ** (m - r))
    dimension = spec.length - full
    return CodeParameters(spec.length, dimension, 2 ** (r + 1) if r < m else None)


# ---------- generator matrices ----------

@lru_cache(maxsize=256)
def _berman_rows(n: int, r: int, m: int) -> np.ndarray:
    size = n**m
    if r >= m:
        rows = np.zeros((0, size), dtype=np.uint8)
    elif r == 0:
        rows = np.zeros((size - 1, size), dtype=np.uint8)
        rows[:, 0] = 1
        rows[np.arange(size - 1), np.arange(1, size)] = 1
    else:
        block = n ** (m - 1)
        sub = _berman_rows(n, r - 1, m - 1)
        parts = []
        for l in range(n - 1):
            part = np.zeros((sub.shape[0], size), dtype=np.uint8)
            part[:, l * block:(l + 1) * block] = sub
            part[:, (n - 1) * block:] = sub
            parts.append(part)
        if r <= m - 2:
            tail = _berman_rows(n, r, m - 1)
            part = np.zeros((tail.shape[0], size), dtype=np.uint8)
            part[:, (n - 1) * block:] = tail
            parts.append(part)
        rows = np.vstack(parts)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=256)
def _dual_rows(n: int, r: int, m: int) -> np.ndarray:
    size = n**m
    if r == 0:
        rows = np.ones((1, size), dtype=np.uint8)
    elif r >= m:
        rows = np.eye(size, dtype=np.uint8)
    else:
        block = n ** (m - 1)
        sub = _dual_rows(n, r - 1, m - 1)
        parts = []
        for l in range(n - 1):
            part = np.zeros((sub.shape[0], size), dtype=np.uint8)
            part[:, l * block:(l + 1) * block] = sub
            parts.append(part)
        parts.append(np.tile(_dual_rows(n, r, m - 1), (1, n)))
        rows = np.vstack(parts)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=128)
def generator_matrix(spec: CodeSpec) -> BitMatrix:
    """G_n(r,m) for the Berman family, H_n(r,m) for the dual family.

    Every row is a minimum-weight codeword. D_n(m,m) is the zero code and
    comes back as a 0 x n^m matrix.
    """
    if spec.family is Family.BERMAN:
        return BitMatrix.from_array(_berman_rows(spec.n, spec.r, spec.m))
    return BitMatrix.from_array(_dual_rows(spec.n, spec.r, spec.m))


def parity_check_matrix(spec: CodeSpec) -> BitMatrix:
    """The two families are duals, so each generator checks the other."""
    return generator_matrix(spec.dual)


def patterned_basis(spec: CodeSpec) -> List[BitVector]:
    """Basis vectors whose supports follow the containment order.

    Berman: c_m(i') with support {i : i ⪯ i'} for wt(i') >= r+1.
    Dual: d_m(j') with support {i : i ⪰ j'} for wt(j') <= r.
    """
    mask = containment_mask(spec.n, spec.m)
    weights = weight_table(spec.n, spec.m)
    if spec.family is Family.BERMAN:
        picks = np.flatnonzero(weights >= spec.r + 1)
        return [BitVector.from_bits(mask[i].astype(np.uint8)) for i in picks]
    picks = np.flatnonzero(weights <= spec.r)
    return [BitVector.from_bits(mask[:, j].astype(np.uint8)) for j in picks]


# ---------- membership and encoding ----------

def _in_berman(y: np.ndarray, n: int, r: int, m: int) -> bool:
    if r >= m:
        return not y.any()
    if r == 0:
        return int(y.sum()) % 2 == 0
    blocks = y.reshape(n, -1)
    if not all(_in_berman(blocks[l], n, r - 1, m - 1) for l in range(n)):
        return False
    return _in_berman(np.bitwise_xor.reduce(blocks, axis=0), n, r, m - 1)


def _in_dual(y: np.ndarray, n: int, r: int, m: int) -> bool:
    if r >= m:
        return True
    if r == 0:
        return bool((y == y[0]).all())
    blocks = y.reshape(n, -1)
    u = blocks[n - 1]
    if not _in_dual(u, n, r, m - 1):
        return False
    return all(_in_dual(blocks[l] ^ u, n, r - 1, m - 1) for l in range(n - 1))


def _check_length(spec: CodeSpec, v: BitVector) -> None:
    if len(v) != spec.length:
        raise DimensionMismatchError(f"{spec.label} has length {spec.length}, got {len(v)}")


def is_codeword(spec: CodeSpec, v: BitVector) -> bool:
    """Membership by the recursive block definition."""
    _check_length(spec, v)
    y = v.to_array()
    if spec.family is Family.BERMAN:
        return _in_berman(y, spec.n, spec.r, spec.m)
    return _in_dual(y, spec.n, spec.r, spec.m)


def encode(spec: CodeSpec, message: BitVector) -> BitVector:
    G = generator_matrix(spec)
    if len(message) != G.rows:
        raise DimensionMismatchError(f"{spec.label} encodes {G.rows} bits, got {len(message)}")
    return G.left_multiply(message)


# ---------- reference codes and enumeration ----------

def reed_muller_generator(r: int, m: int) -> BitMatrix:
    """RM(r,m) from evaluations of multilinear monomials of degree <= r.

    Points of F_2^m are listed in the same colexicographic order as every
    other coordinate in the package.
    """
    if m < 1 or not 0 <= r <= m:
        raise InvalidParameterError(f"RM({r},{m}) is not defined")
    points = tuple_table(2, m)
    rows = []
    for degree in range(r + 1):
        for subset in combinations(range(m), degree):
            rows.append(points[:, list(subset)].prod(axis=1) if subset else np.ones(2**m, dtype=np.int64))
    return BitMatrix.from_array(np.array(rows, dtype=np.uint8))


def codebook_words(G: BitMatrix) -> np.ndarray:
    """Packed codewords; row t is the encoding of the message whose bit j is (t >> j) & 1."""
    if G.rows > MAX_ENUMERATION_DIMENSION:
        raise InvalidParameterError(
            f"dimension {G.rows} too large to enumerate (limit {MAX_ENUMERATION_DIMENSION})"
        )
    words = np.zeros((1, G.words.shape[1]), dtype=np.uint64)
    for j in range(G.rows):
        words = np.concatenate([words, words ^ G.words[j]], axis=0)
    return words


def enumerate_codewords(G: BitMatrix) -> np.ndarray:
    """All 2^k codewords as a 0/1 array in message order."""
    return BitMatrix(2**G.rows, G.cols, codebook_words(G)).to_array()


def brute_force_min_distance(G: BitMatrix) -> Optional[int]:
    words = codebook_words(G)[1:]
    if words.shape[0] == 0:
        return None
    return int(np.bitwise_count(words).sum(axis=1).min())
