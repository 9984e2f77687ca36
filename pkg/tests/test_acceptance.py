"""Acceptance suite: one test per criterion, integer equality throughout.

Expected values are frozen literals, not recomputed by the code under test.
Each test also enforces its wall-clock budget.
"""

import itertools
import random
import time
from contextlib import contextmanager

from powerwlp.classifier import Status, classify, failure_certificate, seven_var_case_polynomial
from powerwlp.combinatorics import ExponentConfig, aci_hilbert, coefficient_growth_holds
from powerwlp.linsys import FatPointSystem, cremona_chain, dim_linear_system, reduce_to_fat_points
from powerwlp.oracle import (
    PrimeFieldConfig,
    fat_point_dim_bruteforce,
    generic_quotient_dim,
    max_rank_ell_squared_table,
    wlp_check,
)

FIELD = PrimeFieldConfig()


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"


# four variables: both injectivity and surjectivity can fail
EX_INJ_SURJ = {
    (5, 7, 8, 10, 10): (225, 220, 219),
    (5, 7, 8, 10, 12): (234, 236, 233),
}


def test_criterion_01_four_vars_injectivity_and_surjectivity_values():
    for seed in (0, 1, 2):
        field = FIELD.with_seed(seed)
        with budget(10):
            for a, (h12, h13, image) in EX_INJ_SURJ.items():
                config = ExponentConfig(4, a)
                assert generic_quotient_dim(config, 12, field) == h12
                assert generic_quotient_dim(config, 13, field) == h13
                rep = wlp_check(config, field, degrees=[13]).report(13)
                assert (rep.dim_rj_minus, rep.dim_rj) == (h12, h13)
                assert rep.map_rank == image, (a, seed)


def test_criterion_02_five_vars_uniform_gap_is_four():
    with budget(60):
        for d in range(4, 9):
            cert = failure_certificate(ExponentConfig(5, (d,) * 6), 2 * d - 1, allow_oracle=False)
            assert cert.source == "symbolic"
            assert cert.gap == 4, d
        for d in (4, 5):
            w = wlp_check(ExponentConfig(5, (d,) * 6), FIELD, degrees=[2 * d - 1])
            rep = w.report(2 * d - 1)
            assert not rep.maximal_rank
            assert rep.dim_quotient_ell - rep.expected == 4


def test_criterion_03_even_vars_uniform_claims():
    with budget(120):
        for n, d in itertools.product((3, 4), (2, 3, 4)):
            config = ExponentConfig(2 * n, (d,) * (2 * n + 1))
            j = n * d - n
            assert dim_linear_system(reduce_to_fat_points(config, j)) == 1, (n, d)
            h = aci_hilbert(config)
            assert h[j] <= h[j - 1], (n, d)
        for d in (2, 3):
            config = ExponentConfig(6, (d,) * 7)
            j = 3 * d - 3
            assert generic_quotient_dim(config, j, FIELD, power_k=1) == 1
            w = wlp_check(config, FIELD, degrees=[j])
            assert not w.report(j).maximal_rank


def test_criterion_04_ell_squared_table():
    table = {1: 0, 2: 1, 3: 3}
    rows = 0
    with budget(60):
        for a in itertools.combinations_with_replacement(range(2, 7), 4):
            if 2 * a[3] > a[0] + a[1] + a[2] - 3:
                continue
            row = max_rank_ell_squared_table(a, FIELD)
            assert row.value == table[row.b], a
            rows += 1
    assert rows == 14


def test_criterion_05_coefficient_growth():
    with budget(1):
        for n in range(3, 7):
            for d in range(1, 13):
                assert coefficient_growth_holds(n, d).holds, (n, d)


SEVEN_VAR_ENDPOINTS = {
    4: FatPointSystem(5, 2, (1,) * 8),
    5: FatPointSystem(5, 5, (3,) * 8),
    6: FatPointSystem(5, 1, (0,) * 8),
    7: FatPointSystem(5, 4, (2,) * 8),
    8: FatPointSystem(5, 7, (4,) * 8),
}


def test_criterion_06_seven_vars_uniform():
    with budget(300):
        assert wlp_check(ExponentConfig(7, (2,) * 8), FIELD).holds
        for e in range(0, 21):
            for case in (1, 2, 3):
                if e >= 1:
                    assert seven_var_case_polynomial(e, case) <= 0, (e, case)
            for case in (4, 5):
                assert seven_var_case_polynomial(e, case) <= 0, (e, case)
        for d, want in SEVEN_VAR_ENDPOINTS.items():
            j = 17 * (d - 1) // 5
            config = ExponentConfig(7, (d,) * 8)
            start = reduce_to_fat_points(config, j)
            assert start == FatPointSystem(5, j, (j + 1 - d,) * 8)
            end, _ = cremona_chain(start)
            assert end == want, d
        # d = 4: the endpoint has 13 sections and the oracle sees the same failure
        config = ExponentConfig(7, (4,) * 8)
        assert fat_point_dim_bruteforce(SEVEN_VAR_ENDPOINTS[4], FIELD) == 13
        rep = wlp_check(config, FIELD, degrees=[10]).report(10)
        assert rep.dim_quotient_ell == 13 and not rep.maximal_rank


def test_criterion_07_five_vars_almost_uniform_sharp_boundary():
    thresholds = {4: 2, 5: 5, 6: 5, 7: 8}
    with budget(180):
        for d, thr in thresholds.items():
            below = wlp_check(ExponentConfig(5, (d,) * 5 + (d + thr - 1,)), FIELD)
            at = wlp_check(ExponentConfig(5, (d,) * 5 + (d + thr,)), FIELD)
            assert not below.holds, d
            assert at.holds, d


def test_criterion_08_four_vars_classifier_agrees_with_oracle():
    disagreements = []
    decided = 0
    with budget(600):
        for a in itertools.combinations_with_replacement(range(2, 7), 5):
            config = ExponentConfig(4, a)
            v = classify(config)
            if v.status not in (Status.HOLDS, Status.FAILS):
                continue
            decided += 1
            for seed in (0, 1, 2):
                w = wlp_check(config, FIELD.with_seed(seed))
                if w.holds != v.holds or (v.fails and v.failure_degree not in w.failing_degrees):
                    disagreements.append((a, seed, v.status, w.failing_degrees))
    assert disagreements == []
    assert decided > 100


def _corpus_pairs(count, seed):
    rnd = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        r = rnd.choice((3, 4, 5))
        a = sorted(rnd.randint(1, 6) for _ in range(r + 1))
        config = ExponentConfig(r, a)
        j = rnd.randint(1, len(aci_hilbert(config)) + 1)
        pairs.append((config, j))
    return pairs


def test_criterion_09_quotient_by_ell_equals_fat_points():
    mismatches = []
    symbolic = 0
    with budget(300):
        for config, j in _corpus_pairs(200, seed=2024):
            q = generic_quotient_dim(config, j, FIELD, power_k=1)
            sys = reduce_to_fat_points(config, j)
            b = fat_point_dim_bruteforce(sys, FIELD)
            s = dim_linear_system(sys)
            if s is not None:
                symbolic += 1
            if q != b or (s is not None and s != q):
                mismatches.append((config.exponents, j, q, b, s))
    assert mismatches == []
    assert symbolic > 100


def test_criterion_10_ell_power_d_not_maximal():
    with budget(30):
        for d in (3, 4, 5):
            config = ExponentConfig(3, (d,) * 4)
            rep = wlp_check(config, FIELD, power_k=d, degrees=[2 * d - 2]).report(2 * d - 2)
            # the map x l^d from degree d-2 to degree 2d-2
            assert rep.power_k == d
            assert rep.dim_rj_minus == aci_hilbert(config)[d - 2]
            assert not rep.maximal_rank, d
