"""Recursive bounded-distance decoders for both families and a brute-force oracle."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import FrozenSet, Optional

import numpy as np

from .codes import CodeSpec, Family, codebook_words, generator_matrix
from .errors import DimensionMismatchError, InvalidParameterError
from .gf2 import BitMatrix, BitVector

ORACLE_MAX_DIMENSION = 20


@dataclass
class OperationCounter:
    """Bit operations spent by a decoder; an XOR, copy or distance over L bits costs L."""

    ops: int = 0

    def add(self, amount: int) -> None:
        self.ops += int(amount)


@dataclass(frozen=True)
class DecodeResult:
    codeword: BitVector
    corrected_positions: FrozenSet[int] = field(default_factory=frozenset)


def _result(y: BitVector, out: np.ndarray) -> DecodeResult:
    codeword = BitVector.from_bits(out)
    flipped = frozenset(int(i) for i in np.flatnonzero(out != y.to_array()))
    return DecodeResult(codeword, flipped)


def _check(spec: CodeSpec, family: Family, y: BitVector) -> None:
    if spec.family is not family:
        raise InvalidParameterError(f"{spec.label} is not a {family.value} code")
    if len(y) != spec.length:
        raise DimensionMismatchError(f"{spec.label} has length {spec.length}, got {len(y)}")


# ---------- dual Berman ----------

def _decode_dual(y: np.ndarray, n: int, r: int, m: int, counter: OperationCounter) -> np.ndarray:
    size = y.size
    if r == 0:
        counter.add(size)
        value = 1 if 2 * int(y.sum()) > size else 0
        return np.full(size, value, dtype=np.uint8)
    if r >= m:
        counter.add(size)
        return y.copy()

    blocks = y.reshape(n, -1)
    block = blocks.shape[1]
    offsets = np.zeros_like(blocks)
    shifted = blocks.copy()
    for l in range(n - 1):
        tilde = blocks[l] ^ blocks[n - 1]
        offsets[l] = _decode_dual(tilde, n, r - 1, m - 1, counter)
        shifted[l] = blocks[l] ^ offsets[l]
        counter.add(2 * block)

    radius = n ** (m - r)
    u = None
    for l in range(n):
        u = _decode_dual(shifted[l], n, r, m - 1, counter)
        distance = int((shifted ^ u).sum())
        counter.add(size)
        if 2 * distance < radius:
            break

    counter.add(size)
    return (offsets ^ u).reshape(-1)


def decode_dual_berman(
    spec: CodeSpec, y: BitVector, counter: Optional[OperationCounter] = None
) -> DecodeResult:
    """Decode C_n(r,m); any word within distance < n^(m-r)/2 of a codeword returns that codeword."""
    _check(spec, Family.DUAL, y)
    out = _decode_dual(y.to_array(), spec.n, spec.r, spec.m, counter or OperationCounter())
    return _result(y, out)


# ---------- Berman ----------

def _decode_berman(y: np.ndarray, n: int, r: int, m: int, counter: OperationCounter) -> np.ndarray:
    size = y.size
    if r >= m:
        return np.zeros(size, dtype=np.uint8)
    if r == 0:
        counter.add(size)
        out = y.copy()
        if int(out.sum()) % 2:
            out[0] ^= 1
        return out

    blocks = y.reshape(n, -1)
    block = blocks.shape[1]
    y_sum = np.bitwise_xor.reduce(blocks, axis=0)
    counter.add(size)
    if r == m - 1:
        v_sum = np.zeros(block, dtype=np.uint8)
    else:
        v_sum = _decode_berman(y_sum, n, r, m - 1, counter)
    base = v_sum ^ y_sum
    counter.add(block)

    # candidates[l, a] is v̂_l(a)
    candidates = np.zeros((n - 1, 2, block), dtype=np.uint8)
    for l in range(n - 1):
        tilde = base ^ blocks[l]
        counter.add(block)
        candidates[l, 0] = _decode_berman(blocks[l], n, r - 1, m - 1, counter)
        candidates[l, 1] = _decode_berman(tilde, n, r - 1, m - 1, counter)

    best = None
    best_distance = size + 1
    lanes = np.arange(n - 1)
    for t in range(2 ** (n - 1)):
        choice = (t >> lanes) & 1
        picked = candidates[lanes, choice]
        last = v_sum ^ np.bitwise_xor.reduce(picked, axis=0)
        word = np.concatenate([picked.reshape(-1), last])
        distance = int((word ^ y).sum())
        counter.add(2 * size)
        if distance < best_distance:
            best, best_distance = word, distance
    return best


def decode_berman(
    spec: CodeSpec, y: BitVector, counter: Optional[OperationCounter] = None
) -> DecodeResult:
    """Decode D_n(r,m); any word within distance < 2^r of a codeword returns that codeword."""
    _check(spec, Family.BERMAN, y)
    out = _decode_berman(y.to_array(), spec.n, spec.r, spec.m, counter or OperationCounter())
    return _result(y, out)


def decode(spec: CodeSpec, y: BitVector, counter: Optional[OperationCounter] = None) -> DecodeResult:
    if spec.family is Family.BERMAN:
        return decode_berman(spec, y, counter)
    return decode_dual_berman(spec, y, counter)


# ---------- cost ceilings ----------

def dual_decoder_cost_bound(n: int, m: int) -> int:
    """(2^(m-1)(n+4) - (n+3)) n^m, the ceiling on counted work of the dual decoder."""
    return (2 ** (m - 1) * (n + 4) - (n + 3)) * n**m


def berman_decoder_cost_bound(n: int, m: int) -> float:
    c = 1.0
    for _ in range(2, m + 1):
        c = 3 + 2**n + c * (2 + 1 / n)
    return c * n**m


# ---------- oracle ----------

def md_oracle_decode(spec: CodeSpec, y: BitVector) -> BitVector:
    """Nearest codeword by exhaustive search; ties go to the lexicographically smallest codeword."""
    if len(y) != spec.length:
        raise DimensionMismatchError(f"{spec.label} has length {spec.length}, got {len(y)}")
    G = generator_matrix(spec)
    if G.rows > ORACLE_MAX_DIMENSION:
        raise InvalidParameterError(
            f"{spec.label} has dimension {G.rows}; the oracle enumerates at most 2^{ORACLE_MAX_DIMENSION}"
        )
    if G.rows > 16:
        warnings.warn(f"enumerating 2^{G.rows} codewords of {spec.label}", RuntimeWarning)
    return nearest_codeword(G, y)


def nearest_codeword(G: BitMatrix, y: BitVector) -> BitVector:
    words = codebook_words(G)
    distances = np.bitwise_count(words ^ y.words).sum(axis=1)
    tied = words[distances == distances.min()]
    bits = BitMatrix(tied.shape[0], G.cols, tied).to_array()
    # lexsort keys run last-to-first, so position 0 is the primary key
    first = np.lexsort(bits.T[::-1])[0]
    return BitVector.from_bits(bits[first])
