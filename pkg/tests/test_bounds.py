import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g31.bounds import (ASYMPTOTIC_ONLY, RIGOROUS, asymptotic_targets, bound_report,
                        regime3_bounds, regime4_lb, regime4_polynomial, turan_lb)
from g31.errors import InvalidParameterError
from g31.graph import make_params

from conftest import brute_min_edges


def test_turan_examples():
    assert turan_lb(4, 4) == 0
    assert turan_lb(8, 4) == 4
    assert turan_lb(5, 4) == 1
    assert turan_lb(0, 3) == 0
    assert brute_min_edges(6)[5] == 2 >= turan_lb(5, 4)


@given(st.integers(1, 200), st.integers(0, 400))
def test_turan_zero_at_alpha_and_monotone(alpha, m):
    assert turan_lb(alpha, alpha) == 0
    assert turan_lb(m + 1, alpha) >= turan_lb(m, alpha)
    assert turan_lb(m, alpha) >= m * m / (2 * alpha) - m / 2


def test_turan_errors():
    with pytest.raises(InvalidParameterError):
        turan_lb(-1, 3)
    with pytest.raises(InvalidParameterError):
        turan_lb(3, 0)


@pytest.mark.parametrize("n", [5, 6])
def test_turan_sound_against_exhaustive(n):
    alpha = max(l for l, v in enumerate(brute_min_edges(n)) if v == 0)
    for l, r in enumerate(brute_min_edges(n)):
        assert r >= turan_lb(l, alpha)


def test_regime3_examples():
    assert regime3_bounds(8, 4) == (16, 80.0)
    assert regime3_bounds(100, 10) == (1000, 5000.0)


def test_regime3_matches_block_construction_asymptotics():
    # l = k n^2 / 8 with alpha = n gives k^2 n^3 / 64 and five times that
    n, k = 800, 6
    l = k * n * n // 8
    lb, ub = regime3_bounds(l, n)
    assert lb == k * k * n**3 // 64
    assert ub == pytest.approx(5 * k * k * n**3 / 64)


def test_regime3_is_not_a_finite_n_bound():
    # at n=6, l=5 the asymptotic lower end exceeds the true minimum
    lb, _ = regime3_bounds(5, 4)
    assert lb > brute_min_edges(6)[5]
    assert bound_report(6, 5, 3, "exact").rigor == ASYMPTOTIC_ONLY


def test_regime4_examples():
    p = make_params(6)
    assert regime4_lb(p, 20, 4).lower_bound == 90
    rep = regime4_lb(p, 16, 4)
    assert rep.lower_bound == 54 == brute_min_edges(6)[16]
    assert rep.rigor == RIGOROUS
    assert regime4_lb(p, 0, 4).lower_bound == 0
    with pytest.raises(InvalidParameterError):
        regime4_lb(p, 21, 4)


@pytest.mark.parametrize("n", range(3, 13))
def test_regime4_full_set_is_total_edges(n):
    p = make_params(n)
    assert regime4_lb(p, p.vertex_count, n).lower_bound == p.total_edges


def test_regime4_sound_against_exhaustive_n6():
    p = make_params(6)
    for l, r in enumerate(brute_min_edges(6)):
        assert r >= regime4_lb(p, l, 4).lower_bound


def test_asymptotic_targets():
    n = 50
    full = asymptotic_targets(n, math.comb(n, 3))
    assert full.c == 0 and full.regime4 == pytest.approx(n**5 / 8)
    empty = asymptotic_targets(n, 0)
    assert empty.c == 1 and empty.regime4 == 0.0
    t = asymptotic_targets(100, 1000)
    assert t.half_turan == 5000.0
    assert t.regime3 == 10000.0 and t.regime3_upper == 50000.0
    with pytest.raises(InvalidParameterError):
        asymptotic_targets(10, 121)


def test_regime4_polynomial_strictly_decreasing():
    cs = [i / 1000 for i in range(1001)]
    vals = [regime4_polynomial(c) for c in cs]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    n = 30
    targets = [asymptotic_targets(n, l).regime4 for l in range(0, math.comb(n, 3) + 1, 37)]
    assert all(a <= b for a, b in zip(targets, targets[1:]))


def test_bound_report_labels():
    assert bound_report(6, 5, 1, "exact").rigor == RIGOROUS
    rep = bound_report(100, 1000, 1, "asymptotic")
    assert rep.rigor == ASYMPTOTIC_ONLY and rep.alpha_used == 100 and rep.lower_bound == 4500
    assert bound_report(6, 16, 4, "exact").lower_bound == 54
    with pytest.raises(InvalidParameterError):
        bound_report(100, 1000, 4, "exact")
    with pytest.raises(InvalidParameterError):
        bound_report(6, 5, 5, "exact")
