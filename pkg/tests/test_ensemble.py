"""Tests for the two-layer ensemble, marginals, and comparison measure."""

from fractions import Fraction as F

import pytest

from asep2l.errors import (
    EnumerationCapExceeded,
    NotInConfigurationSpace,
    SingularParameter,
)
from asep2l.ensemble import (
    Distribution,
    duchi_distribution,
    duchi_weight,
    path_law,
    path_law_top_marginal,
    phi_table,
    stationary_mu,
    top_marginal,
    two_layer_law,
)
from asep2l.lattice import (
    LatticePath,
    Occupation,
    enumerate_occupations,
    is_motzkin,
    path_of,
)
from asep2l.weights import ModelParams, q_weight

GRID = [
    ModelParams(F(0), F(1), F(2)),
    ModelParams(F(1, 3), F(1, 2), F(1, 3)),
    ModelParams(F(1, 2), F(2), F(3)),
    ModelParams(F(1, 2), F(0), F(2)),
    ModelParams(F(1, 3), F(3), F(0)),
    ModelParams(F(1, 2), F(0), F(0)),
    ModelParams(F(1, 2), F(1), F(1)),
]


class TestDistribution:
    def test_validates_sum(self):
        with pytest.raises(ValueError):
            Distribution(["a", "b"], [F(1, 2), F(1, 3)])

    def test_validates_negatives_and_duplicates(self):
        with pytest.raises(ValueError):
            Distribution(["a", "b"], [F(3, 2), F(-1, 2)])
        with pytest.raises(ValueError):
            Distribution(["a", "a"], [F(1, 2), F(1, 2)])

    def test_lookup_and_support(self):
        d = Distribution(["a", "b", "c"], [F(1, 2), F(0), F(1, 2)])
        assert d.prob("a") == F(1, 2)
        assert d.support() == ("a", "c")
        assert "b" in d and "z" not in d


class TestTwoLayerLaw:
    def test_uniform_at_origin(self):
        law = two_layer_law(1, ModelParams(F(0), F(1), F(1)))
        assert set(law.probs) == {F(1, 4)}

    @pytest.mark.parametrize("p", GRID)
    def test_proportional_to_weight(self, p):
        law = two_layer_law(2, p)
        z = sum(q_weight(t, x, p) for t, x in law.states)
        for (tau, xi), pr in law.items():
            assert pr == q_weight(tau, xi, p) / z

    def test_support_at_zero_boundary_strengths(self):
        law = two_layer_law(3, ModelParams(F(1, 2), F(0), F(0)))
        for (tau, xi), pr in law.items():
            assert (pr > 0) == is_motzkin(path_of(tau, xi))


class TestStationaryMu:
    def test_size_one_reference_value(self):
        mu = stationary_mu(1, ModelParams(F(1, 2), F(2), F(1)))
        assert mu.prob(Occupation.from_string("1")) == F(7, 17)

    def test_size_one_symmetric(self):
        for q in (F(0), F(1, 2), F(9, 10)):
            mu = stationary_mu(1, ModelParams(q, F(3), F(3)))
            assert mu.prob(Occupation.from_string("1")) == F(1, 2)

    def test_size_zero(self):
        mu = stationary_mu(0, GRID[0])
        assert mu.states == (Occupation(0, 0),) and mu.probs == (F(1),)

    @pytest.mark.parametrize("p", GRID)
    def test_equals_pair_marginal(self, p):
        for L in range(5):
            assert top_marginal(two_layer_law(L, p)) == stationary_mu(L, p)

    @pytest.mark.parametrize("p", GRID)
    def test_equals_path_pushforward(self, p):
        for L in range(5):
            assert path_law_top_marginal(path_law(L, p)) == stationary_mu(L, p)

    def test_strictly_positive(self):
        # strict positivity is promised for A, B > 0 and holds at the edges
        # as well because the flat path supports every top layer
        for p in GRID:
            assert all(pr > 0 for pr in stationary_mu(4, p).probs)

    def test_cap(self):
        with pytest.raises(EnumerationCapExceeded):
            stationary_mu(11, GRID[0])
        with pytest.raises(EnumerationCapExceeded):
            stationary_mu(3, GRID[0], max_L=2)

    def test_parallel_jobs_match_sequential(self):
        p = ModelParams(F(1, 2), F(1), F(2))
        assert stationary_mu(4, p, jobs=3) == stationary_mu(4, p)


class TestPhiTable:
    def test_empty_system_is_one(self):
        t = phi_table(0, GRID[1])
        assert t.value(Occupation(0, 0)) == 1

    def test_size_one_closed_form(self):
        p = ModelParams(F(1, 2), F(1), F(3))
        t = phi_table(1, p)
        denom = 1 - p.ab * p.q ** 2
        assert t.value(Occupation.from_string("0")) == (
            1 + p.q * p.ab + p.A * (1 + p.q)
        ) / denom
        assert t.value(Occupation.from_string("1")) == (
            p.B * (1 + p.q) + 1 + p.q * p.ab
        ) / denom

    def test_normalization_reproduces_mu(self):
        for p in GRID:
            if p.A * p.B == 1:
                continue
            for L in range(5):
                try:
                    t = phi_table(L, p)
                except SingularParameter:
                    continue
                assert t.normalized() == stationary_mu(L, p)

    def test_singular_parameters_refused(self):
        with pytest.raises(SingularParameter):
            phi_table(2, ModelParams(F(1, 2), F(4), F(1)))
        with pytest.raises(SingularParameter):
            phi_table(1, ModelParams(F(1, 3), F(1), F(1)))


class TestPathLaw:
    def test_size_one_at_origin(self):
        law = path_law(1, ModelParams(F(0), F(1), F(1)))
        flat = LatticePath([0, 0])
        up = LatticePath([0, 1])
        down = LatticePath([0, -1])
        assert law.prob(flat) == F(1, 2)
        assert law.prob(up) == F(1, 4)
        assert law.prob(down) == F(1, 4)

    def test_support_constraints(self):
        no_left = path_law(4, ModelParams(F(1, 2), F(0), F(2)))
        for g, pr in no_left.items():
            assert (pr > 0) == (g.minimum >= 0)
        no_right = path_law(4, ModelParams(F(1, 2), F(2), F(0)))
        for g, pr in no_right.items():
            assert (pr > 0) == (g.end == g.minimum)
        neither = path_law(4, ModelParams(F(1, 2), F(0), F(0)))
        for g, pr in neither.items():
            assert (pr > 0) == is_motzkin(g)


class TestComparisonMeasure:
    def test_reference_configuration(self):
        # zero-level steps at sites 1, 2, 9, 10; only site 1 has the bottom
        # layer occupied, so one W label and no B labels survive
        tau = Occupation.from_string("1011001000")
        xi = Occupation.from_string("1000110100")
        for A, B in ((F(1), F(1)), (F(2), F(3)), (F(1, 2), F(1, 5))):
            assert duchi_weight(tau, xi, A, B) == 1 + B

    def test_all_level_zero_with_empty_bottom(self):
        for L in range(1, 5):
            occ = Occupation(L, 0)
            assert duchi_weight(occ, occ, F(2), F(3)) == (1 + F(2)) ** L

    def test_all_level_zero_with_full_bottom(self):
        L = 4
        occ = Occupation(L, (1 << L) - 1)
        assert duchi_weight(occ, occ, F(2), F(3)) == (1 + F(3)) ** L

    def test_uniform_at_zero_strengths(self):
        d = duchi_distribution(3, F(0), F(0))
        assert len(set(d.probs)) == 1

    def test_rejects_outside_configuration_space(self):
        with pytest.raises(NotInConfigurationSpace):
            duchi_weight(
                Occupation.from_string("11"),
                Occupation.from_string("00"),
                F(1),
                F(1),
            )

    def test_w_blocks_later_b_labels(self):
        # bottom occupied at site 1 makes site 1 a W label; later zero-level
        # sites with empty bottom are then never B-labeled
        tau = Occupation.from_string("1100")
        xi = Occupation.from_string("1100")
        assert duchi_weight(tau, xi, F(2), F(3)) == (1 + F(3)) ** 2

    @pytest.mark.parametrize(
        "A,B", [(F(0), F(0)), (F(1), F(2)), (F(1, 2), F(1, 2)), (F(3), F(1, 3))]
    )
    def test_top_marginal_matches_mu_at_q_zero(self, A, B):
        for L in range(1, 5):
            mu = stationary_mu(L, ModelParams(F(0), A, B))
            assert top_marginal(duchi_distribution(L, A, B)) == mu
