"""Acceptance suite: one test per criterion, exact tolerances throughout.

Every numerical claim is checked with exact rational equality (tolerance
zero). The only statistical check is the sampler criterion, which uses the
stated |z| <= 4 band at a fixed seed, and the performance criterion, which
uses wall-clock bounds. Run with -s to see one line per criterion.
"""

import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import product

import pytest

from asep2l.ensemble import (
    duchi_distribution,
    path_law,
    path_law_top_marginal,
    phi_table,
    stationary_mu,
    top_marginal,
    two_layer_law,
)
from asep2l.errors import SingularParameter
from asep2l.lattice import (
    enumerate_occupations,
    is_motzkin,
    path_of,
)
from asep2l.oracle import build_generator, rates_from_params, stationary_exact
from asep2l.qcalc import poly_eval, q_factorial, q_number
from asep2l.recursions import (
    check_basic_weight_equations,
    check_bulk,
    check_left_boundary,
    check_right_boundary,
)
from asep2l.sampler import empirical_compare, sample_two_layer
from asep2l.weights import (
    ModelParams,
    q_weight,
    tilde_q_weight,
    w_sigma_operator,
    w_sigma_series,
)

Q_GRID = [F(0), F(1, 3), F(1, 2), F(9, 10)]
AB_GRID = [
    (F(1, 2), F(1, 3)),
    (F(2), F(3)),
    (F(1), F(1)),
    (F(0), F(2)),
    (F(3), F(0)),
    (F(0), F(0)),
    (F(1), F(2)),
]


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL")
        raise
    print(f"ACCEPTANCE {name}: PASS")


def compositions_of(total):
    for cuts in product((0, 1), repeat=total - 1):
        parts = []
        run = 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def nonsingular_for_rescaling(p: ModelParams, L: int) -> bool:
    """True when A*B avoids every pole q**-k needed up to size L."""
    try:
        p.tilde_scale(L)
        return True
    except SingularParameter:
        return False


def test_criterion_01_stationary_marginal_equals_oracle():
    with criterion("01 stationary marginal == exact oracle, L=1..6"):
        checked = 0
        for q in Q_GRID:
            for A, B in AB_GRID:
                p = ModelParams(q, A, B)
                for L in range(1, 7):
                    mu = stationary_mu(L, p)
                    pi = stationary_exact(build_generator(L, rates_from_params(p)))
                    assert mu == pi, (q, A, B, L)
                    checked += 1
        assert checked == len(Q_GRID) * len(AB_GRID) * 6


def test_criterion_02_dual_algorithms_agree():
    with criterion("02 operator and series routes agree, L<=8"):
        for q in (F(0), F(1, 3), F(1, 2)):
            for L in range(9):
                for sigma in compositions_of(L + 1):
                    a = w_sigma_operator(sigma, q)
                    b = w_sigma_series(sigma, q)
                    assert a == b, (sigma, q)
                    r = len(sigma) - 1
                    assert all(c >= 0 for c in a.coeffs)
                    assert a.degree <= L - r
                    if q > 0:
                        assert a.degree == L - r


def test_criterion_03_known_polynomial_values():
    with criterion("03 known weight-polynomial values, L<=6"):
        for q in (F(1, 3), F(1, 2)):
            for L in range(7):
                target = q_factorial(L + 1, q)
                ones = w_sigma_operator((1,) * (L + 1), q)
                assert ones.coeffs == (target,)
                for sigma in compositions_of(L + 1):
                    poly = w_sigma_operator(sigma, q)
                    assert poly_eval(poly, F(1)) == target
                    at_zero = F(1)
                    for j, s in enumerate(sigma):
                        at_zero *= q_number(j + 1, q) ** s
                    assert poly_eval(poly, F(0)) == at_zero


def test_criterion_04_rescaled_weight_recursions():
    with criterion("04 boundary and bulk recursions, exhaustive"):
        combos = checked = 0
        for q in Q_GRID:
            for A, B in AB_GRID:
                p = ModelParams(q, A, B)
                if not nonsingular_for_rescaling(p, 6):
                    continue
                combos += 1
                for L in range(5):
                    assert check_left_boundary(L, p).passed, (q, A, B, L)
                    assert check_right_boundary(L, p).passed, (q, A, B, L)
                for L1 in range(4):
                    for L2 in range(4 - L1):
                        assert check_bulk(L1, L2, p).passed, (q, A, B, L1, L2)
                checked += 1
        assert combos >= 20  # grid minus the genuinely singular combinations


def test_criterion_05_basic_weight_equations():
    with criterion("05 basic weight equations and normalized Phi"):
        from asep2l.lattice import Occupation

        for q in Q_GRID:
            for A, B in AB_GRID:
                p = ModelParams(q, A, B)
                if not nonsingular_for_rescaling(p, 6):
                    continue
                report = check_basic_weight_equations(4, p)
                assert report.passed, (q, A, B)
                assert phi_table(0, p).value(Occupation(0, 0)) == 1
                for L in range(1, 5):
                    assert phi_table(L, p).normalized() == stationary_mu(L, p)


def test_criterion_06_size_one_weight_tables():
    with criterion("06 size-one weight tables, symbolic over 6 points"):
        points = [
            ModelParams(F(1, 3), F(1, 2), F(1, 3)),
            ModelParams(F(1, 2), F(2), F(3)),
            ModelParams(F(0), F(1), F(2)),
            ModelParams(F(2, 3), F(3), F(1, 5)),
            ModelParams(F(1, 2), F(1), F(3)),
            ModelParams(F(9, 10), F(1, 2), F(5)),
        ]
        from asep2l.lattice import Occupation

        o = [Occupation.from_string("0"), Occupation.from_string("1")]
        for p in points:
            assert q_weight(o[0], o[0], p) == 1 + p.q * p.ab
            assert q_weight(o[0], o[1], p) == p.A * (1 + p.q)
            assert q_weight(o[1], o[0], p) == p.B * (1 + p.q)
            assert q_weight(o[1], o[1], p) == 1 + p.q * p.ab
            denom = 1 - p.ab * p.q ** 2
            for xi in (0, 1):
                assert tilde_q_weight(o[0], o[xi], p) == (
                    p.A ** xi + p.q * p.A * p.B ** (1 - xi)
                ) / denom
                assert tilde_q_weight(o[1], o[xi], p) == (
                    p.B ** (1 - xi) + p.q * p.A ** xi * p.B
                ) / denom


def test_criterion_07_special_supports():
    with criterion("07 support constraints at vanishing strengths, L<=5"):
        for q in (F(0), F(1, 2)):
            for L in range(1, 6):
                no_left = two_layer_law(L, ModelParams(q, F(0), F(2)))
                for (tau, xi), pr in no_left.items():
                    assert (pr > 0) == (path_of(tau, xi).minimum >= 0)
                no_right = two_layer_law(L, ModelParams(q, F(3), F(0)))
                for (tau, xi), pr in no_right.items():
                    g = path_of(tau, xi)
                    assert (pr > 0) == (g.end == g.minimum)
                both = two_layer_law(L, ModelParams(q, F(0), F(0)))
                motzkin_mass = F(0)
                for (tau, xi), pr in both.items():
                    g = path_of(tau, xi)
                    if not is_motzkin(g):
                        assert pr == 0
                        continue
                    motzkin_mass += pr
                    expected = F(1)
                    comp = [0] * (g.maximum + 1)
                    for v in g.values:
                        comp[v] += 1
                    for j in range(1, len(comp)):
                        expected *= q_number(j + 1, q) ** comp[j]
                    # probabilities proportional to the product over levels
                    assert pr * _motzkin_normalizer(L, q) == expected
                assert motzkin_mass == 1


def _motzkin_normalizer(L, q):
    total = F(0)
    p = ModelParams(q, F(0), F(0))
    for tau in enumerate_occupations(L):
        for xi in enumerate_occupations(L):
            total += q_weight(tau, xi, p)
    return total


def test_criterion_08_comparison_measure_cross_check():
    with criterion("08 comparison measure reproduces mu at q=0, L<=5"):
        for A, B in ((F(0), F(0)), (F(1), F(2)), (F(1, 2), F(1, 2))):
            for L in range(1, 6):
                mu = stationary_mu(L, ModelParams(F(0), A, B))
                assert top_marginal(duchi_distribution(L, A, B)) == mu, (A, B, L)


def test_criterion_09_sampler_statistics_and_pushforward():
    with criterion("09 sampler z-band and exact pushforward"):
        start = time.monotonic()
        p = ModelParams(F(1, 2), F(1), F(2))
        batch = sample_two_layer(3, p, 100_000, seed=20240601)
        report = empirical_compare(batch, stationary_mu(3, p))
        assert report.n == 100_000
        assert report.max_abs_z <= 4.0, report.z_scores
        for params in (p, ModelParams(F(1, 3), F(0), F(2))):
            for L in range(1, 6):
                assert path_law_top_marginal(path_law(L, params)) == stationary_mu(
                    L, params
                )
        assert time.monotonic() - start < 60.0


def test_criterion_10_performance_at_size_ten():
    with criterion("10 size-10 performance bounds"):
        p = ModelParams(F(1, 2), F(1), F(2))
        start = time.monotonic()
        mu = stationary_mu(10, p)
        mu_elapsed = time.monotonic() - start
        assert mu_elapsed < 60.0, f"stationary_mu took {mu_elapsed:.1f}s"
        start = time.monotonic()
        pi = stationary_exact(build_generator(10, rates_from_params(p)))
        oracle_elapsed = time.monotonic() - start
        assert oracle_elapsed < 60.0, f"oracle took {oracle_elapsed:.1f}s"
        assert mu == pi


def test_criterion_11_singular_parameters():
    with criterion("11 singular-parameter handling at A*B*q*q == 1"):
        from asep2l.lattice import Occupation

        p = ModelParams(F(1, 2), F(4), F(1))
        with pytest.raises(SingularParameter):
            tilde_q_weight(
                Occupation.from_string("0"), Occupation.from_string("1"), p
            )
        with pytest.raises(SingularParameter):
            phi_table(2, p)
        mu = stationary_mu(3, p)
        pi = stationary_exact(build_generator(3, rates_from_params(p)))
        assert mu == pi
