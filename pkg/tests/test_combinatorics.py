import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerwlp.combinatorics import (
    ExponentConfig,
    HilbertFunction,
    aci_hilbert,
    binomial_or_zero,
    ci_hilbert,
    ci_values,
    coefficient_growth_holds,
    expected_first_difference,
    pos_part,
    power_expansion_coeffs,
)
from powerwlp.errors import IndexOutOfRange


@pytest.mark.parametrize("a,r,want", [(5, 3, 10), (2, 3, 0), (-4, 2, 0), (0, 0, 1), (-1, 0, 0)])
def test_binomial_or_zero(a, r, want):
    assert binomial_or_zero(a, r) == want


def test_binomial_pascal_in_extended_convention():
    for a in range(-40, 41):
        for r in range(1, 11):
            assert binomial_or_zero(a, r) == binomial_or_zero(a - 1, r - 1) + binomial_or_zero(a - 1, r)
        assert binomial_or_zero(a, 0) == (1 if a >= 0 else 0)


@pytest.mark.parametrize("m,want", [(7, 7), (-3, 0), (0, 0)])
def test_pos_part(m, want):
    assert pos_part(m) == want


def test_exponent_config_sorts_and_validates():
    c = ExponentConfig(4, (10, 5, 8, 7, 10))
    assert c.exponents == (5, 7, 8, 10, 10)
    assert c.is_almost_complete_intersection and not c.is_uniform
    with pytest.raises(ValueError):
        ExponentConfig(3, (0, 1, 2))
    with pytest.raises(ValueError):
        ExponentConfig(0, (1,))


def test_hilbert_function_reads_zero_outside_range():
    h = HilbertFunction((1, 2, 1, 0, 0))
    assert h.values == (1, 2, 1)
    assert h.socle_degree == 2
    assert h[-1] == 0 and h[7] == 0
    assert HilbertFunction(()).socle_degree == -1


@pytest.mark.parametrize("r,a,want", [
    (4, (2, 2, 2, 2), (1, 4, 6, 4, 1)),
    (3, (3, 3, 3), (1, 3, 6, 7, 6, 3, 1)),
    (2, (2, 3), (1, 2, 2, 1)),
])
def test_ci_hilbert_examples(r, a, want):
    assert ci_hilbert(ExponentConfig(r, a)).values == want


def test_ci_hilbert_needs_n_equal_r():
    with pytest.raises(ValueError):
        ci_hilbert(ExponentConfig(3, (2, 2, 2, 2)))


def test_aci_hilbert_examples():
    assert aci_hilbert(ExponentConfig(4, (2,) * 5)).values == (1, 4, 5)
    assert aci_hilbert(ExponentConfig(2, (1, 1, 1))).values == (1,)
    assert ci_hilbert(ExponentConfig(4, (3,) * 4)).values == (1, 4, 10, 16, 19, 16, 10, 4, 1)
    # h_A(4) - h_A(1) = 19 - 4; the oracle agrees
    assert aci_hilbert(ExponentConfig(4, (3,) * 5))[4] == 15


def test_expected_first_difference_examples():
    assert expected_first_difference(ExponentConfig(4, (2,) * 5), 2).value == 1
    assert expected_first_difference(ExponentConfig(5, (4,) * 6), 7).value == 0
    assert expected_first_difference(ExponentConfig(5, (5,) * 6), 9).value == 10
    # signed: (5,7,8,10,10) drops from 225 to 220
    fd = expected_first_difference(ExponentConfig(4, (5, 7, 8, 10, 10)), 13)
    assert fd.value == -5


def test_expected_first_difference_flag():
    c = ExponentConfig(4, (3,) * 5)
    # bound: 2j <= 3 + 8
    assert expected_first_difference(c, 5).simplified
    assert not expected_first_difference(c, 6).simplified


def test_power_expansion_examples():
    assert power_expansion_coeffs(1, 6) == [1, 6, 15, 20, 15, 6, 1]
    assert power_expansion_coeffs(2, 6) == [1, 6, 21, 50, 90, 126, 141, 126, 90, 50, 21, 6, 1]
    assert power_expansion_coeffs(3, 1) == [1, 1, 1, 1]


def test_coefficient_growth_examples():
    assert coefficient_growth_holds(3, 1) == (True, 5, 5)
    assert coefficient_growth_holds(3, 2) == (True, 15, 29)
    assert coefficient_growth_holds(4, 2).holds
    with pytest.raises(IndexOutOfRange):
        coefficient_growth_holds(1, 1)


def test_ci_matches_power_expansion_factorwise():
    for r in range(1, 6):
        for a in itertools.combinations_with_replacement(range(1, 6), r):
            prod = [1]
            for x in a:
                f = power_expansion_coeffs(x - 1, 1) if x > 1 else [1]
                prod = [sum(prod[i] * f[k - i] for i in range(len(prod)) if 0 <= k - i < len(f))
                        for k in range(len(prod) + len(f) - 1)]
            assert list(ci_values(a)) == prod


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 7), min_size=1, max_size=6))
def test_ci_symmetric_and_total(a):
    h = ci_hilbert(ExponentConfig(len(a), a))
    sigma = sum(x - 1 for x in a)
    assert h.socle_degree == sigma
    assert h.is_symmetric()
    assert h.total() == math.prod(a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8))
def test_power_expansion_symmetric(d, k):
    c = power_expansion_coeffs(d, k)
    assert len(c) == k * d + 1
    assert c == c[::-1]
    assert sum(c) == (d + 1) ** k


def test_coefficient_growth_range():
    for n in range(3, 7):
        for d in range(1, 13):
            assert coefficient_growth_holds(n, d).holds, (n, d)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.data())
def test_first_difference_telescopes(r, data):
    a = data.draw(st.lists(st.integers(1, 6), min_size=r + 1, max_size=r + 1))
    c = ExponentConfig(r, a)
    h = aci_hilbert(c)
    for j in range(0, len(h) + 2):
        assert expected_first_difference(c, j).value == h[j] - h[j - 1]
