from __future__ import annotations

import json

import numpy as np
import pytest

from bermancodes.abelian import (
    GroupSpec,
    Spectrum,
    ZeroSet,
    berman_zero_sets,
    character_exponents,
    code_from_zero_set,
    conjugacy_partition,
    dft,
    element_index,
    element_tuple,
    equivalence_check,
    group_algebra_product,
    idft,
    idft_binary,
    monomial_shift,
    negation_map,
    odd_weight_zero_set,
    pi_permutation,
    position_permutation,
    time_reversal,
    validate_capacity_family_zero_set,
    weight_classes,
)
from bermancodes.codes import CodeSpec, generator_matrix
from bermancodes.errors import DimensionMismatchError, InvalidParameterError, ZeroSetError
from bermancodes.field import build_field
from bermancodes.gf2 import BitMatrix, BitVector, rank, row_space_equal, vstack

GROUPS = [
    GroupSpec((3,), 1),
    GroupSpec((3,), 2),
    GroupSpec((5,), 1),
    GroupSpec((7,), 1),
    GroupSpec((9,), 1),
    GroupSpec((3, 3), 1),
    GroupSpec((5,), 2),
]
GROUP_IDS = [g.label for g in GROUPS]


def _example_zero_set(pairs):
    return ZeroSet.from_tuples(GroupSpec((15,), 2), pairs)


Z_AXES = [(0, 5), (0, 10), (5, 0), (10, 0)]
Z_DIAGONAL = [(5, 5), (5, 10), (10, 5), (10, 10)]


def test_group_validation():
    with pytest.raises(InvalidParameterError):
        GroupSpec((4,))
    with pytest.raises(InvalidParameterError):
        GroupSpec((3,), 0)
    with pytest.raises(InvalidParameterError):
        GroupSpec.parse("3,x")
    group = GroupSpec.parse("3,5", 2)
    assert (group.order, group.size) == (15, 225)


def test_element_encoding():
    group = GroupSpec((3, 3), 2)
    index = element_index(group, [[1, 2], [0, 1]])
    assert element_tuple(group, index) == ((1, 2), (0, 1))
    cyclic = GroupSpec((5,), 2)
    assert element_tuple(cyclic, element_index(cyclic, [4, 1])) == (4, 1)
    with pytest.raises(InvalidParameterError):
        element_index(cyclic, [5, 0])


def test_dft_of_all_ones_is_indicator_of_zero():
    group = GroupSpec((3,), 1)
    assert dft(BitVector.from_string("111"), group).values.tolist() == [1, 0, 0]


def test_dft_length_check():
    with pytest.raises(DimensionMismatchError):
        dft(BitVector.zeros(4), GroupSpec((3,), 1))


@pytest.mark.parametrize("group", GROUPS, ids=GROUP_IDS)
def test_round_trip_and_conjugate_symmetry(group, random_word):
    for _ in range(100):
        a = random_word(group.size)
        spectrum = dft(a, group)
        assert spectrum.is_conjugate_symmetric()
        assert idft_binary(spectrum) == a


def test_non_symmetric_spectrum_is_not_binary():
    group = GroupSpec((3,), 1)
    spectrum = Spectrum(group, build_field(group), np.array([0, 1, 0]))
    assert not spectrum.is_conjugate_symmetric()
    assert (idft(spectrum) > 1).any()
    with pytest.raises(InvalidParameterError):
        idft_binary(spectrum)


@pytest.mark.parametrize("group", GROUPS, ids=GROUP_IDS)
def test_convolution_becomes_pointwise_product(group, random_word):
    fs = build_field(group)
    for _ in range(30):
        a, b = random_word(group.size), random_word(group.size)
        left = dft(group_algebra_product(a, b, group), group).values
        right = fs.gf.mul_array(dft(a, group).values, dft(b, group).values)
        assert np.array_equal(left, right)


@pytest.mark.parametrize("group", GROUPS, ids=GROUP_IDS)
def test_reversal_negates_the_spectrum(group, random_word):
    for _ in range(30):
        a = random_word(group.size)
        assert np.array_equal(dft(time_reversal(a, group), group).values, dft(a, group).values[negation_map(group)])


def test_monomial_shift_is_product_with_monomial(random_word):
    group = GroupSpec((3, 3), 1)
    a = random_word(group.size)
    for k in range(group.size):
        assert monomial_shift(a, k, group) == group_algebra_product(BitVector.unit(group.size, k), a, group)


def test_dft_of_direct_product_subgroup_indicator():
    group = GroupSpec((3,), 3)
    a = np.zeros(group.size, dtype=np.uint8)
    a[: 3**2] = 1
    expected = np.zeros(group.size, dtype=np.int64)
    expected[::9] = 1
    assert np.array_equal(dft(BitVector.from_bits(a), group).values, expected)


def test_dft_of_periodic_sequence(random_word):
    inner = GroupSpec((5,), 1)
    outer = GroupSpec((5,), 2)
    b = random_word(inner.size)
    a = BitVector.from_bits(np.tile(b.to_array(), 5))
    A = dft(a, outer).values.reshape(5, 5)
    assert not A[1:].any()
    assert np.array_equal(A[0], dft(b, inner).values)


def test_conjugacy_classes_of_z3_squared():
    group = GroupSpec((3, 3), 1)
    classes = {frozenset(element_tuple(group, j)[0] for j in cls) for cls in conjugacy_partition(group)}
    assert classes == {
        frozenset({(0, 0)}),
        frozenset({(0, 1), (0, 2)}),
        frozenset({(1, 0), (2, 0)}),
        frozenset({(1, 1), (2, 2)}),
        frozenset({(1, 2), (2, 1)}),
    }


def test_conjugacy_classes_basic_facts():
    assert conjugacy_partition(GroupSpec((3,), 1)) == ((0,), (1, 2))
    assert (5, 10) in conjugacy_partition(GroupSpec((15,), 1))
    for group in [GroupSpec((3,), 2), GroupSpec((9,), 1), GroupSpec((3, 5), 1)]:
        weights = {j: w for w, members in weight_classes(group).items() for j in members}
        for cls in conjugacy_partition(group):
            if cls != (0,):
                assert len(cls) >= 2
            assert len({weights[j] for j in cls}) == 1


def test_zero_set_must_be_doubling_closed():
    group = GroupSpec((3,), 2)
    Z = ZeroSet.from_tuples(group, [(1, 0)])
    assert not Z.is_doubling_closed()
    assert not validate_capacity_family_zero_set(Z).holds
    with pytest.raises(ZeroSetError):
        code_from_zero_set(Z)
    with pytest.raises(ZeroSetError):
        ZeroSet(group, frozenset({9}))


def test_zero_set_json(tmp_path):
    Z = _example_zero_set(Z_AXES)
    text = Z.to_json()
    assert json.loads(text) == {"group": [15], "m": 2, "zero_set": [[5, 0], [10, 0], [0, 5], [0, 10]]}
    path = tmp_path / "z.json"
    path.write_text(text)
    assert ZeroSet.load(path) == Z
    with pytest.raises(ZeroSetError):
        ZeroSet.from_json('{"group": [3]}')


def test_empty_zero_set_gives_full_space():
    group = GroupSpec((3,), 2)
    assert code_from_zero_set(ZeroSet(group, frozenset())).rows == 9


def test_weight_zero_set_gives_dual_berman_code():
    group = GroupSpec((3,), 2)
    high, low = berman_zero_sets(group, 1)
    C = code_from_zero_set(high)
    assert C.rows == 5
    assert row_space_equal(C, generator_matrix(CodeSpec(3, 1, 2, "dual")))
    assert len(low) == 9 - len(high)


def test_recursive_structure_of_weight_class_code():
    group = GroupSpec((3,), 2)
    rows = ["111000000", "000111000"] + ["".join(("100", "010", "001")[t] * 3) for t in range(3)]
    assert row_space_equal(BitMatrix.from_rows(rows), code_from_zero_set(berman_zero_sets(group, 1)[0]))


@pytest.mark.parametrize("group", GROUPS[:6], ids=GROUP_IDS[:6])
def test_equivalence_with_recursive_construction(group):
    for r in range(group.m + 1):
        assert equivalence_check(group, r).equivalent


def test_repetition_code_for_r0():
    group = GroupSpec((3, 3), 1)
    C = code_from_zero_set(berman_zero_sets(group, 0)[0])
    assert C.rows == 1 and C.row(0).weight == 9


@pytest.mark.parametrize("m,dimension", [(4, 41), pytest.param(5, 121, marks=pytest.mark.slow)])
def test_odd_weight_zero_set_dimensions(m, dimension):
    group = GroupSpec((3,), m)
    assert code_from_zero_set(odd_weight_zero_set(group)).rows == dimension


@pytest.mark.parametrize("pairs", [Z_AXES, Z_DIAGONAL])
def test_mixed_class_zero_sets_are_closed(pairs):
    report = validate_capacity_family_zero_set(_example_zero_set(pairs))
    assert report.doubling_closed and all(report.pi_closed) and report.position_closed
    assert report.holds


def test_example_zero_set_code_dimension_and_automorphisms():
    Z = _example_zero_set(Z_AXES)
    group = Z.group
    C = code_from_zero_set(Z)
    assert C.rows == 221
    for image in (
        [pi_permutation(row, 0, group) for row in C.iter_rows()],
        [pi_permutation(row, 1, group) for row in C.iter_rows()],
        [position_permutation(row, [1, 0], group) for row in C.iter_rows()],
    ):
        assert row_space_equal(BitMatrix.from_rows(image), C)


@pytest.mark.parametrize("group", [GroupSpec((3,), 2), GroupSpec((5,), 2), GroupSpec((3, 3), 1)], ids=str)
def test_weight_class_codes_are_closed_under_reversal_and_shifts(group, rng):
    for r in range(group.m + 1):
        C = code_from_zero_set(berman_zero_sets(group, r)[0])
        reversed_rows = BitMatrix.from_rows([time_reversal(row, group) for row in C.iter_rows()])
        assert row_space_equal(reversed_rows, C)
        k = int(rng.integers(0, group.size))
        shifted = BitMatrix.from_rows([monomial_shift(row, k, group) for row in C.iter_rows()])
        assert row_space_equal(shifted, C)


def test_berman_pair_is_complementary():
    group = GroupSpec((5,), 1)
    high, low = berman_zero_sets(group, 0)
    C, D = code_from_zero_set(high), code_from_zero_set(low)
    assert rank(vstack([C, D])) == C.rows + D.rows == group.size
    with pytest.raises(InvalidParameterError):
        berman_zero_sets(group, 2)


def test_shift_multiplies_spectrum_by_character(random_word):
    group = GroupSpec((3,), 2)
    fs = build_field(group)
    a = random_word(group.size)
    A = dft(a, group).values
    for k in (1, 4, 8):
        twist = fs.gf.exp[character_exponents(group, fs)[:, k]]
        assert np.array_equal(dft(monomial_shift(a, k, group), group).values, fs.gf.mul_array(twist, A))
