"""Binary erasure channel lab: bit-MAP resolution, EXIT estimates and block erasure rates."""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import DimensionMismatchError, InvalidParameterError
from .gf2 import BitMatrix, BitVector, null_space, row_reduce

ERASED = -1
DEFAULT_TRIALS = 1000
DEFAULT_EPSILON_GRID: Tuple[float, ...] = tuple(round(0.05 * k, 2) for k in range(21))
CSV_COLUMNS = ["epsilon", "h", "Pb", "PB", "trials", "seed"]
_CHUNK = 256


@dataclass(frozen=True, eq=False)
class ErasureWord:
    """Channel output: 0, 1 or ERASED per position."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int8).copy()
        if not np.isin(values, (0, 1, ERASED)).all():
            raise InvalidParameterError("erasure words hold 0, 1 or ERASED")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> "ErasureWord":
        lookup = {"0": 0, "1": 1, "?": ERASED}
        try:
            return cls(np.array([lookup[ch] for ch in text.strip()], dtype=np.int8))
        except KeyError as exc:
            raise InvalidParameterError(f"erasure words use 0, 1 and ?: {text!r}") from exc

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def erased_mask(self) -> np.ndarray:
        return self.values == ERASED

    @property
    def erased_set(self) -> FrozenSet[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.erased_mask))

    @property
    def is_complete(self) -> bool:
        return not self.erased_mask.any()

    def to_bitvector(self) -> BitVector:
        if not self.is_complete:
            raise InvalidParameterError("word still has erased positions")
        return BitVector.from_bits(self.values.astype(np.uint8))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ErasureWord):
            return NotImplemented
        return bool(np.array_equal(self.values, other.values))

    def __str__(self) -> str:
        return "".join("?" if v == ERASED else str(int(v)) for v in self.values)


def bec_transmit(c: BitVector, epsilon: float, rng: np.random.Generator) -> ErasureWord:
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidParameterError(f"erasure probability must lie in [0, 1], got {epsilon}")
    values = c.to_array().astype(np.int8)
    values[rng.random(values.size) < epsilon] = ERASED
    return ErasureWord(values)


# ---------- resolution ----------

def _resolve(H: np.ndarray, erased: np.ndarray, syndrome: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Solve H_E x = syndrome; returns (resolved flags, values) aligned with ``erased``.

    A pivot variable is determined when its reduced row touches no free column;
    free variables are never determined.
    """
    count = erased.size
    resolved = np.zeros(count, dtype=bool)
    values = np.zeros(count, dtype=np.uint8)
    if count == 0 or H.shape[0] == 0:
        return resolved, values
    augmented = np.concatenate([H[:, erased], syndrome[:, None]], axis=1)
    red = row_reduce(BitMatrix.from_array(augmented))
    pivots = [p for p in red.pivots if p < count]
    if not pivots:
        return resolved, values
    reduced = red.matrix.to_array()[: len(pivots)]
    free = np.ones(count, dtype=bool)
    free[pivots] = False
    touches_free = reduced[:, :count][:, free].any(axis=1)
    pivots = np.asarray(pivots)
    resolved[pivots[~touches_free]] = True
    values[pivots] = reduced[:, count]
    return resolved, values


def _unresolved_count(H: np.ndarray, erased: np.ndarray) -> Tuple[int, bool]:
    """Unresolved erased positions under the all-zero codeword, and whether the first one is among them."""
    resolved, _ = _resolve(H, erased, np.zeros(H.shape[0], dtype=np.uint8))
    first = bool(erased.size) and not resolved[0]
    return int((~resolved).sum()), first


def parity_checks(G: BitMatrix) -> np.ndarray:
    return null_space(G).to_array()


def bitmap_erasure_decode(G: BitMatrix, y: ErasureWord, H: Optional[np.ndarray] = None) -> ErasureWord:
    """Fill every erased position that all codewords consistent with ``y`` agree on."""
    if G.cols != len(y):
        raise DimensionMismatchError(f"code length {G.cols} vs word length {len(y)}")
    H = parity_checks(G) if H is None else H
    mask = y.erased_mask
    erased = np.flatnonzero(mask)
    known = y.values.astype(np.int64)
    known[mask] = 0
    syndrome = ((H.astype(np.int64) @ known) & 1).astype(np.uint8) if H.shape[0] else np.zeros(0, np.uint8)
    resolved, values = _resolve(H, erased, syndrome)
    out = y.values.copy()
    out[erased[resolved]] = values[resolved]
    return ErasureWord(out)


# ---------- exact EXIT at bit 0 ----------

def exit_polynomial_at_zero(G: BitMatrix, H: Optional[np.ndarray] = None) -> np.ndarray:
    """counts[s]: erasure patterns of size s on bits 1..N-1 leaving bit 0 undetermined."""
    N = G.cols
    if N > 16:
        raise InvalidParameterError(f"exhaustive enumeration needs N <= 16, got {N}")
    H = parity_checks(G) if H is None else H
    counts = np.zeros(N, dtype=np.int64)
    for pattern in range(1 << (N - 1)):
        others = [k + 1 for k in range(N - 1) if pattern >> k & 1]
        _, first = _unresolved_count(H, np.array([0] + others, dtype=np.int64))
        if first:
            counts[len(others)] += 1
    return counts


def exact_exit_at_zero(G: BitMatrix, epsilon: float, H: Optional[np.ndarray] = None) -> float:
    counts = exit_polynomial_at_zero(G, H)
    N = G.cols
    return float(sum(c * epsilon**s * (1 - epsilon) ** (N - 1 - s) for s, c in enumerate(counts)))


# ---------- Monte Carlo ----------

class SimMode(str, Enum):
    BITMAP_AT_ZERO = "bitmap_at_zero"
    BLOCK_MAP = "block_map"
    FULL_BITMAP = "full_bitmap"


@dataclass(frozen=True)
class SimConfig:
    epsilons: Tuple[float, ...] = DEFAULT_EPSILON_GRID
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    mode: SimMode = SimMode.BITMAP_AT_ZERO
    threads: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "mode", SimMode(self.mode))
        if not self.epsilons:
            raise InvalidParameterError("the epsilon grid is empty")
        if any(not 0.0 <= e <= 1.0 for e in self.epsilons):
            raise InvalidParameterError(f"epsilon grid values must lie in [0, 1]: {self.epsilons}")
        if self.trials < 1:
            raise InvalidParameterError(f"trials must be at least 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.threads < 1:
            raise InvalidParameterError(f"threads must be at least 1, got {self.threads}")


@dataclass(frozen=True)
class SimPoint:
    epsilon: float
    h: float
    Pb: float
    PB: float
    trials: int
    determined_fraction: float


@dataclass(frozen=True)
class SimResult:
    points: Tuple[SimPoint, ...]
    seed: int
    mode: SimMode

    def to_frame(self) -> pd.DataFrame:
        """One row per grid point.

        Columns:
        - epsilon, h, Pb, PB, trials, seed
        - determined_fraction
        """
        df = pd.DataFrame([vars(p) for p in self.points])
        df["seed"] = self.seed
        return df[CSV_COLUMNS + ["determined_fraction"]]

    def to_csv(self) -> str:
        return self.to_frame()[CSV_COLUMNS].to_csv(index=False, float_format="%.6g", lineterminator="\n")


def trial_rng(seed: int, eps_index: int, trial: int) -> np.random.Generator:
    """Philox stream keyed by (seed, grid index, trial index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, eps_index, trial])))


@dataclass
class _Tally:
    first_unresolved: int = 0
    unresolved_bits: int = 0
    erased_bits: int = 0
    block_failures: int = 0

    def merge(self, other: "_Tally") -> "_Tally":
        return _Tally(
            self.first_unresolved + other.first_unresolved,
            self.unresolved_bits + other.unresolved_bits,
            self.erased_bits + other.erased_bits,
            self.block_failures + other.block_failures,
        )


def _run_trials(H: np.ndarray, N: int, cfg: SimConfig, eps_index: int, start: int, stop: int) -> _Tally:
    eps = cfg.epsilons[eps_index]
    tally = _Tally()
    for t in range(start, stop):
        rng = trial_rng(cfg.seed, eps_index, t)
        if cfg.mode is SimMode.BITMAP_AT_ZERO:
            others = 1 + np.flatnonzero(rng.random(N - 1) < eps)
            _, first = _unresolved_count(H, np.concatenate([[0], others]).astype(np.int64))
            tally.first_unresolved += first
            continue
        mask = rng.random(N) < eps
        erased = np.flatnonzero(mask)
        unresolved, _ = _unresolved_count(H, erased)
        tally.unresolved_bits += unresolved
        tally.erased_bits += erased.size
        tally.block_failures += unresolved > 0
        if cfg.mode is SimMode.BLOCK_MAP:
            mask[0] = True
            _, first = _unresolved_count(H, np.flatnonzero(mask))
            tally.first_unresolved += first
    return tally


def _point(cfg: SimConfig, eps: float, tally: _Tally, N: int) -> SimPoint:
    trials = cfg.trials
    nan = float("nan")
    if cfg.mode is SimMode.FULL_BITMAP:
        pb = tally.unresolved_bits / (trials * N)
        h = pb / eps if eps > 0 else 0.0
    else:
        h = tally.first_unresolved / trials
        pb = eps * h
    pB = nan if cfg.mode is SimMode.BITMAP_AT_ZERO else tally.block_failures / trials
    if cfg.mode is SimMode.BITMAP_AT_ZERO:
        determined = 1.0 - h
    else:
        determined = 1.0 - tally.unresolved_bits / tally.erased_bits if tally.erased_bits else 1.0
    return SimPoint(eps, min(h, 1.0), pb, pB, trials, determined)


def exit_and_erasure_rates(
    G: BitMatrix,
    cfg: SimConfig,
    H: Optional[np.ndarray] = None,
    assume_transitive: bool = True,
) -> SimResult:
    """Monte Carlo EXIT function h(eps), P_b = eps h and block erasure rate P_B over the grid."""
    if cfg.mode is SimMode.BITMAP_AT_ZERO and not assume_transitive:
        warnings.warn(
            "bit 0 speaks for every bit only on transitive codes; use full_bitmap to average",
            RuntimeWarning,
        )
    H = parity_checks(G) if H is None else H
    N = G.cols
    chunks = [(s, min(s + _CHUNK, cfg.trials)) for s in range(0, cfg.trials, _CHUNK)]
    points = []
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        for eps_index, eps in enumerate(cfg.epsilons):
            futures = [pool.submit(_run_trials, H, N, cfg, eps_index, a, b) for a, b in chunks]
            tally = _Tally()
            for future in futures:
                tally = tally.merge(future.result())
            points.append(_point(cfg, eps, tally, N))
    return SimResult(tuple(points), cfg.seed, cfg.mode)


def standard_error(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / trials)


def parse_grid(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InvalidParameterError(f"not a comma separated list of numbers: {text!r}") from exc


def codeword_erasure_trial(
    G: BitMatrix, epsilon: float, rng: np.random.Generator, H: Optional[np.ndarray] = None
) -> Tuple[BitVector, ErasureWord, ErasureWord]:
    """Random codeword, its channel output and the bit-MAP completion."""
    message = BitVector.from_bits(rng.integers(0, 2, G.rows).astype(np.uint8))
    c = G.left_multiply(message)
    y = bec_transmit(c, epsilon, rng)
    return c, y, bitmap_erasure_decode(G, y, H)
