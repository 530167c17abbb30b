"""Coordinate tuples of [n]^m in colexicographic order and the containment order."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError
from .gf2 import BitMatrix, kronecker_power

CoordTuple = Tuple[int, ...]


@lru_cache(maxsize=64)
def tuple_table(n: int, m: int) -> np.ndarray:
    """Row ``idx`` holds the tuple at linear index ``idx``; entry k is (idx // n^k) % n."""
    idx = np.arange(n**m, dtype=np.int64)
    powers = n ** np.arange(m, dtype=np.int64)
    table = (idx[:, None] // powers[None, :]) % n
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def weight_table(n: int, m: int) -> np.ndarray:
    weights = (tuple_table(n, m) != 0).sum(axis=1)
    weights.setflags(write=False)
    return weights


def coord_index(entries: Sequence[int], n: int) -> int:
    """Linear index of a tuple; the last entry is the most significant digit."""
    index = 0
    for k in reversed(range(len(entries))):
        value = int(entries[k])
        if not 0 <= value < n:
            raise InvalidParameterError(f"tuple entry {value} outside [0, {n})")
        index = index * n + value
    return index


def coord_tuple(index: int, n: int, m: int) -> CoordTuple:
    if not 0 <= index < n**m:
        raise InvalidParameterError(f"index {index} outside [0, {n}^{m})")
    out = []
    for _ in range(m):
        index, digit = divmod(index, n)
        out.append(digit)
    return tuple(out)


def tuple_weight(entries: Sequence[int]) -> int:
    return sum(1 for x in entries if x != 0)


def support(entries: Sequence[int]) -> Tuple[int, ...]:
    return tuple(k for k, x in enumerate(entries) if x != 0)


def precedes(j: Sequence[int], i: Sequence[int]) -> bool:
    """``j ⪯ i``: every entry of j is zero or agrees with i."""
    return all(a == 0 or a == b for a, b in zip(j, i))


@lru_cache(maxsize=16)
def containment_mask(n: int, m: int) -> np.ndarray:
    """Boolean matrix with [i, j] true iff j ⪯ i."""
    table = tuple_table(n, m)
    rows = table[:, None, :]
    cols = table[None, :, :]
    mask = ((cols == 0) | (cols == rows)).all(axis=2)
    mask.setflags(write=False)
    return mask


def a1_matrix(n: int) -> BitMatrix:
    """First column all ones plus the identity."""
    base = np.eye(n, dtype=np.uint8)
    base[:, 0] = 1
    return BitMatrix.from_array(base)


def containment_matrix(n: int, m: int) -> BitMatrix:
    """A_m, the m-th Kronecker power of A_1."""
    return kronecker_power(a1_matrix(n), m)
