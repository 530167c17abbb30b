from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from bermancodes.codes import CodeSpec, enumerate_codewords, generator_matrix, is_codeword, parameters
from bermancodes.decoding import (
    OperationCounter,
    berman_decoder_cost_bound,
    decode,
    decode_berman,
    decode_dual_berman,
    dual_decoder_cost_bound,
    md_oracle_decode,
    nearest_codeword,
)
from bermancodes.errors import DimensionMismatchError, InvalidParameterError
from bermancodes.gf2 import BitMatrix, BitVector


def _radius(spec: CodeSpec) -> int:
    return (parameters(spec).min_distance - 1) // 2


def test_single_flip_is_corrected():
    spec = CodeSpec(3, 1, 2, "berman")
    result = decode(spec, BitVector.from_string("100000101"))
    assert str(result.codeword) == "101000101"
    assert result.corrected_positions == frozenset({2})


def test_decoders_check_family_and_length():
    with pytest.raises(InvalidParameterError):
        decode_berman(CodeSpec(3, 1, 2, "dual"), BitVector.zeros(9))
    with pytest.raises(InvalidParameterError):
        decode_dual_berman(CodeSpec(3, 1, 2, "berman"), BitVector.zeros(9))
    with pytest.raises(DimensionMismatchError):
        decode(CodeSpec(3, 1, 2, "dual"), BitVector.zeros(8))


@pytest.mark.parametrize(
    "family,n,r,m",
    [("berman", 3, 1, 2), ("dual", 3, 1, 2), ("berman", 2, 1, 3), ("dual", 2, 1, 3), ("dual", 4, 1, 2)],
)
def test_exhaustive_correction_within_radius(family, n, r, m):
    spec = CodeSpec(n, r, m, family)
    codewords = enumerate_codewords(generator_matrix(spec))
    radius = _radius(spec)
    N = spec.length
    patterns = [
        positions for w in range(radius + 1) for positions in itertools.combinations(range(N), w)
    ]
    for c in codewords:
        for positions in patterns:
            y = c.copy()
            y[list(positions)] ^= 1
            result = decode(spec, BitVector.from_bits(y))
            assert np.array_equal(result.codeword.to_array(), c)


@pytest.mark.parametrize("family", ["berman", "dual"])
def test_random_errors_within_radius(family, rng):
    spec = CodeSpec(3, 2, 3, family)
    G = generator_matrix(spec)
    radius = _radius(spec)
    for _ in range(500):
        c = G.left_multiply(BitVector.from_bits(rng.integers(0, 2, G.rows).astype(np.uint8))).to_array()
        y = c.copy()
        w = int(rng.integers(0, radius + 1))
        y[rng.choice(spec.length, size=w, replace=False)] ^= 1
        assert np.array_equal(decode(spec, BitVector.from_bits(y)).codeword.to_array(), c)


@pytest.mark.slow
@pytest.mark.parametrize("family", ["berman", "dual"])
def test_many_random_errors_within_radius(family):
    rng = np.random.default_rng(7)
    spec = CodeSpec(3, 2, 3, family)
    G = generator_matrix(spec)
    radius = _radius(spec)
    for _ in range(10_000):
        c = G.left_multiply(BitVector.from_bits(rng.integers(0, 2, G.rows).astype(np.uint8))).to_array()
        y = c.copy()
        y[rng.choice(spec.length, size=radius, replace=False)] ^= 1
        assert np.array_equal(decode(spec, BitVector.from_bits(y)).codeword.to_array(), c)


@pytest.mark.parametrize(
    "family,n,r,m", [("berman", 3, 1, 2), ("dual", 3, 1, 2), ("berman", 3, 2, 3), ("dual", 3, 2, 3), ("berman", 4, 1, 2)]
)
def test_output_is_always_a_codeword(family, n, r, m, random_word):
    spec = CodeSpec(n, r, m, family)
    for _ in range(200):
        assert is_codeword(spec, decode(spec, random_word(spec.length)).codeword)


def test_matches_oracle_within_radius(rng):
    spec = CodeSpec(3, 1, 2, "dual")
    G = generator_matrix(spec)
    for _ in range(50):
        c = G.left_multiply(BitVector.from_bits(rng.integers(0, 2, G.rows).astype(np.uint8)))
        y = c ^ BitVector.unit(spec.length, int(rng.integers(0, spec.length)))
        assert decode(spec, y).codeword == md_oracle_decode(spec, y) == c


def test_oracle_breaks_ties_lexicographically():
    G = BitMatrix.from_rows(["1100", "0011"])
    assert str(nearest_codeword(G, BitVector.from_string("1000"))) == "0000"
    assert str(nearest_codeword(G, BitVector.from_string("1110"))) == "1100"


def test_oracle_limits():
    with pytest.raises(InvalidParameterError):
        md_oracle_decode(CodeSpec(3, 2, 4, "dual"), BitVector.zeros(81))
    with pytest.raises(DimensionMismatchError):
        md_oracle_decode(CodeSpec(3, 1, 2, "dual"), BitVector.zeros(8))


@pytest.mark.slow
def test_oracle_warns_on_large_enumeration():
    spec = CodeSpec(3, 2, 3, "dual")
    with pytest.warns(RuntimeWarning):
        assert md_oracle_decode(spec, BitVector.zeros(27)) == BitVector.zeros(27)


@pytest.mark.parametrize("n,m", [(2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (5, 2)])
def test_dual_decoder_work_stays_under_bound(n, m, random_word):
    N = n**m
    closed_form = (n + 4) / 2 * N ** (1 + math.log(2, n))
    assert dual_decoder_cost_bound(n, m) <= closed_form * (1 + 1e-9)
    for r in range(m + 1):
        counter = OperationCounter()
        decode(CodeSpec(n, r, m, "dual"), random_word(N), counter)
        assert 0 < counter.ops <= dual_decoder_cost_bound(n, m)


@pytest.mark.parametrize("n,m", [(2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (5, 2)])
def test_berman_decoder_work_stays_under_bound(n, m, random_word):
    N = n**m
    A, B = 3 + 2**n, 2 + 1 / n
    K = (1 + A / (B - 1)) / B
    assert berman_decoder_cost_bound(n, m) <= K * N ** (1 + math.log(B, n)) * (1 + 1e-9)
    for r in range(m):
        counter = OperationCounter()
        decode(CodeSpec(n, r, m, "berman"), random_word(N), counter)
        assert 0 < counter.ops <= berman_decoder_cost_bound(n, m)
