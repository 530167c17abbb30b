"""Dense linear algebra over GF(2) with rows packed into 64-bit words."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError

_WORD_BITS = 64
_ONE = np.uint64(1)

BitsLike = Union[str, Sequence[int], np.ndarray]


# ---------- packing ----------

def _word_count(cols: int) -> int:
    return (cols + _WORD_BITS - 1) // _WORD_BITS


def _as_bits(values: np.ndarray) -> np.ndarray:
    arr = np.asarray(values)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise InvalidParameterError("bit arrays may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into (rows, words) uint64; bit j sits in word j // 64 at position j % 64."""
    rows, cols = bits.shape
    words = _word_count(cols)
    if words == 0:
        return np.zeros((rows, 0), dtype=np.uint64)
    padded = np.zeros((rows, words * _WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if cols == 0 or words.shape[1] == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols].copy()


def _parse_bitstring(text: str) -> np.ndarray:
    if any(ch not in "01" for ch in text):
        raise InvalidParameterError(f"not a bitstring: {text!r}")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


# ---------- vectors ----------

class BitVector:
    """Immutable binary vector."""

    __slots__ = ("_length", "_words")

    def __init__(self, length: int, words: np.ndarray) -> None:
        self._length = int(length)
        self._words = words
        self._words.setflags(write=False)

    @classmethod
    def from_bits(cls, bits: BitsLike) -> "BitVector":
        if isinstance(bits, str):
            arr = _parse_bitstring(bits)
        else:
            arr = _as_bits(np.asarray(bits).reshape(-1))
        return cls(arr.size, _pack(arr.reshape(1, -1))[0])

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls.from_bits(_parse_bitstring(text.strip()))

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, np.zeros(_word_count(length), dtype=np.uint64))

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        return cls.zeros(length).with_bit(index, 1)

    @property
    def words(self) -> np.ndarray:
        """Packed read-only storage."""
        return self._words

    def __len__(self) -> int:
        return self._length

    def _check_index(self, index: int) -> None:
        if not 0 <= index < self._length:
            raise IndexError(f"bit {index} outside vector of length {self._length}")

    def __getitem__(self, index: int) -> int:
        self._check_index(index)
        word, bit = divmod(index, _WORD_BITS)
        return int((self._words[word] >> np.uint64(bit)) & _ONE)

    def with_bit(self, index: int, value: int) -> "BitVector":
        """Copy of the vector with one bit set to ``value``."""
        self._check_index(index)
        word, bit = divmod(index, _WORD_BITS)
        words = self._words.copy()
        mask = _ONE << np.uint64(bit)
        if value & 1:
            words[word] |= mask
        else:
            words[word] &= ~mask
        return BitVector(self._length, words)

    @property
    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_array())

    def to_array(self) -> np.ndarray:
        return _unpack(self._words.reshape(1, -1), self._length)[0]

    def _check_same_length(self, other: "BitVector") -> None:
        if len(other) != self._length:
            raise DimensionMismatchError(f"length {self._length} vs {len(other)}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_same_length(other)
        return BitVector(self._length, self._words ^ other._words)

    __add__ = __xor__

    def distance(self, other: "BitVector") -> int:
        return (self ^ other).weight

    def dot(self, other: "BitVector") -> int:
        self._check_same_length(other)
        return int(np.bitwise_count(self._words & other._words).sum() & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == other._length and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._length, self._words.tobytes()))

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.to_array())

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


# ---------- matrices ----------

class BitMatrix:
    """Immutable dense binary matrix, row-major."""

    __slots__ = ("_rows", "_cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray) -> None:
        self._rows = int(rows)
        self._cols = int(cols)
        self._words = words
        self._words.setflags(write=False)

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "BitMatrix":
        arr = _as_bits(np.asarray(bits))
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_rows(cls, rows: Iterable[Union[BitVector, str]], cols: int | None = None) -> "BitMatrix":
        vectors = [BitVector.from_string(r) if isinstance(r, str) else r for r in rows]
        if not vectors:
            if cols is None:
                raise DimensionMismatchError("column count required for an empty row list")
            return cls.zeros(0, cols)
        width = len(vectors[0])
        if any(len(v) != width for v in vectors) or (cols is not None and cols != width):
            raise DimensionMismatchError("rows of unequal length")
        return cls(len(vectors), width, np.stack([v._words for v in vectors]))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _word_count(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls.from_array(np.eye(size, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    def to_array(self) -> np.ndarray:
        return _unpack(self._words, self._cols)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(f"entry ({i}, {j}) outside {self._rows}x{self._cols} matrix")
        word, bit = divmod(j, _WORD_BITS)
        return int((self._words[i, word] >> np.uint64(bit)) & _ONE)

    def with_entry(self, i: int, j: int, value: int) -> "BitMatrix":
        self.get(i, j)
        words = self._words.copy()
        word, bit = divmod(j, _WORD_BITS)
        mask = _ONE << np.uint64(bit)
        if value & 1:
            words[i, word] |= mask
        else:
            words[i, word] &= ~mask
        return BitMatrix(self._rows, self._cols, words)

    def row(self, i: int) -> BitVector:
        if not 0 <= i < self._rows:
            raise IndexError(f"row {i} outside matrix with {self._rows} rows")
        return BitVector(self._cols, self._words[i].copy())

    def iter_rows(self) -> Iterator[BitVector]:
        for i in range(self._rows):
            yield self.row(i)

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def select_columns(self, columns: Sequence[int] | np.ndarray) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array()[:, np.asarray(columns, dtype=np.int64)])

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self._cols != other._rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        product = self.to_array().astype(np.float64) @ other.to_array().astype(np.float64)
        return BitMatrix.from_array((product.astype(np.int64) & 1).astype(np.uint8))

    def left_multiply(self, message: BitVector) -> BitVector:
        """Row vector times matrix: the GF(2) sum of the rows selected by ``message``."""
        if len(message) != self._rows:
            raise DimensionMismatchError(f"message length {len(message)} vs {self._rows} rows")
        selected = self._words[message.to_array().astype(bool)]
        words = np.bitwise_xor.reduce(selected, axis=0) if selected.shape[0] else np.zeros(
            self._words.shape[1], dtype=np.uint64
        )
        return BitVector(self._cols, np.asarray(words, dtype=np.uint64).copy())

    def syndrome(self, v: BitVector) -> BitVector:
        """M·vᵀ as a vector of length ``rows``."""
        if len(v) != self._cols:
            raise DimensionMismatchError(f"vector length {len(v)} vs {self._cols} columns")
        parities = np.bitwise_count(self._words & v._words).sum(axis=1) & 1
        return BitVector.from_bits(parities.astype(np.uint8))

    def is_zero(self) -> bool:
        return not self._words.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.shape, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols})"


def vstack(matrices: Sequence[BitMatrix]) -> BitMatrix:
    if not matrices:
        raise DimensionMismatchError("nothing to stack")
    cols = matrices[0].cols
    if any(m.cols != cols for m in matrices):
        raise DimensionMismatchError("matrices with different column counts")
    rows = sum(m.rows for m in matrices)
    return BitMatrix(rows, cols, np.concatenate([m._words for m in matrices], axis=0))


# ---------- elimination ----------

@dataclass(frozen=True)
class RowReduction:
    matrix: BitMatrix
    rank: int
    pivots: Tuple[int, ...]


def _reduce_words(words: np.ndarray, cols: int) -> Tuple[np.ndarray, int, List[int]]:
    """Gauss-Jordan on packed rows: leftmost pivot column, topmost available row."""
    words = words.copy()
    rows = words.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, b = divmod(c, _WORD_BITS)
        shift = np.uint64(b)
        hits = np.flatnonzero((words[r:, w] >> shift) & _ONE)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        mask = ((words[:, w] >> shift) & _ONE).astype(bool)
        mask[r] = False
        words[mask] ^= words[r]
        pivots.append(c)
        r += 1
    return words, r, pivots


def row_reduce(M: BitMatrix) -> RowReduction:
    words, rank, pivots = _reduce_words(M._words, M.cols)
    return RowReduction(BitMatrix(M.rows, M.cols, words), rank, tuple(pivots))


def rank_and_rref(M: BitMatrix) -> Tuple[int, BitMatrix]:
    """Reduced row-echelon form of ``M`` (zero rows last) and its rank."""
    red = row_reduce(M)
    return red.rank, red.matrix


def rank(M: BitMatrix) -> int:
    return row_reduce(M).rank


def row_basis(M: BitMatrix) -> BitMatrix:
    """The nonzero rows of rref(M)."""
    red = row_reduce(M)
    return BitMatrix(red.rank, M.cols, red.matrix._words[: red.rank].copy())


def null_space(M: BitMatrix) -> BitMatrix:
    """Basis, as rows, of {x : M xᵀ = 0}."""
    red = row_reduce(M)
    cols = M.cols
    pivots = list(red.pivots)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            reduced = _unpack(red.matrix._words[: red.rank], cols)
            basis[:, pivots] = reduced[:, free].T
    return BitMatrix.from_array(basis)


def row_space_equal(A: BitMatrix, B: BitMatrix) -> bool:
    if A.cols != B.cols:
        raise DimensionMismatchError(f"column counts differ: {A.cols} vs {B.cols}")
    return row_basis(A) == row_basis(B)


def in_row_space(M: BitMatrix, v: BitVector) -> bool:
    if len(v) != M.cols:
        raise DimensionMismatchError(f"vector length {len(v)} vs {M.cols} columns")
    base = rank(M)
    return rank(vstack([M, BitMatrix.from_rows([v])])) == base


def kronecker_power(A: BitMatrix, m: int) -> BitMatrix:
    """m-fold Kronecker product of ``A`` with itself."""
    if m < 1:
        raise InvalidParameterError("kronecker power needs m >= 1")
    base = A.to_array()
    out = base
    for _ in range(m - 1):
        out = np.kron(out, base) & 1
    return BitMatrix.from_array(out.astype(np.uint8))
