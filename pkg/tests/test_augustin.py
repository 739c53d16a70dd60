import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renyi_augustin import augustin as ag
from renyi_augustin.channels import bsc, identity, random_channel
from renyi_augustin.divergence import conditional_renyi_divergence, renyi_divergence
from renyi_augustin.validation import DimensionError, DomainError, PreconditionError

from conftest import binary_entropy

ORDERS = [0.3, 0.7, 1.0, 1.5, 3.0]


def hand_tilt(alpha, w, q):
    """Tilted row written out term by term."""
    terms = [a ** alpha * b ** (1 - alpha) if a > 0 and b > 0 else 0.0 for a, b in zip(w, q)]
    total = sum(terms)
    return [t / total for t in terms]


def instance(seed, nx=3, ny=4):
    rng = np.random.default_rng(seed)
    return rng.dirichlet(np.ones(nx)), random_channel(nx, ny, seed=seed)


class TestOutputDistribution:
    def test_noiseless(self):
        P = [0.2, 0.3, 0.5]
        np.testing.assert_allclose(ag.output_distribution(P, identity(3)), P)

    def test_bsc(self, bsc01):
        np.testing.assert_allclose(ag.output_distribution(*bsc01), [0.5, 0.5], atol=1e-15)

    def test_point_mass(self, two_by_two):
        _, W = two_by_two
        np.testing.assert_array_equal(ag.output_distribution([1, 0], W), W[0])

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            ag.output_distribution([0.5, 0.5], identity(3))


class TestOutputDistributionTilde:
    def test_full_support(self):
        P, W = instance(1)
        np.testing.assert_allclose(ag.output_distribution_tilde(P, W),
                                   ag.output_distribution(P, W), atol=1e-15)

    def test_point_mass_off_support_rows(self):
        W = np.array([[0.5, 0.5, 0, 0], [0, 0, 1, 0], [0, 0, 0.5, 0.5]])
        got = ag.output_distribution_tilde([1, 0, 0], W)
        np.testing.assert_array_equal(got, W[0])

    def test_zero_mass_inputs_ignored(self):
        W = np.array([[0.6, 0.4, 0], [0.1, 0.9, 0], [0, 0, 1]])
        P = [0.5, 0.5, 0]
        np.testing.assert_allclose(ag.output_distribution_tilde(P, W),
                                   ag.output_distribution(P, W))


class TestTiltedChannel:
    def test_order_one_is_identity_map(self, two_by_two):
        _, W = two_by_two
        rows, adm = ag.tilted_channel(1, W, [0.4, 0.6])
        np.testing.assert_array_equal(rows, W)
        np.testing.assert_array_equal(adm, [0, 1])

    def test_fixed_row(self, two_by_two):
        _, W = two_by_two
        rows, _ = ag.tilted_channel(2.5, W, W[1])
        np.testing.assert_allclose(rows[1], W[1], atol=1e-15)

    def test_order_two_example(self, two_by_two):
        _, W = two_by_two
        rows, _ = ag.tilted_channel(2, W, [0.5, 0.5])
        np.testing.assert_allclose(rows[0], hand_tilt(2, [0.8, 0.2], [0.5, 0.5]), atol=1e-15)
        np.testing.assert_allclose(rows[0], [1.28 / 1.36, 0.08 / 1.36], atol=1e-15)
        np.testing.assert_allclose(rows[0], [0.941176, 0.058824], atol=1e-6)

    def test_normalizer_is_divergence(self, two_by_two):
        # the defining prefactor exp((1-a) D_a) makes the row sum to one
        _, W = two_by_two
        q = np.array([0.35, 0.65])
        for a in [0.4, 2.0, 5.0]:
            rows, _ = ag.tilted_channel(a, W, q)
            for x in range(2):
                explicit = math.exp((1 - a) * renyi_divergence(a, W[x], q)) \
                    * W[x] ** a * q ** (1 - a)
                np.testing.assert_allclose(rows[x], explicit, rtol=1e-12)

    def test_admissible_subset(self):
        W = np.array([[0.5, 0.5, 0], [0, 0.2, 0.8]])
        rows, adm = ag.tilted_channel(2, W, [0.5, 0.5, 0])
        np.testing.assert_array_equal(adm, [0])
        assert rows.shape == (1, 3)

    def test_empty_admissible(self):
        with pytest.raises(DomainError):
            ag.tilted_channel(2, [[0, 1]], [1, 0])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from([0.2, 0.9, 1.0, 1.1, 4.0, 50.0]))
    def test_rows_are_distributions(self, seed, alpha):
        P, W = instance(seed)
        q = np.random.default_rng(seed + 1).dirichlet(np.ones(4))
        rows, _ = ag.tilted_channel(alpha, W, q)
        np.testing.assert_allclose(rows.sum(axis=1), 1, atol=1e-10)
        assert np.all(rows >= 0)


class TestAugustinOperator:
    def test_order_one_gives_output_distribution(self):
        P, W = instance(3)
        q = np.random.default_rng(0).dirichlet(np.ones(4))
        np.testing.assert_allclose(ag.augustin_operator(1, P, W, q), P @ W, atol=1e-15)

    def test_single_row(self):
        w = [0.1, 0.6, 0.3]
        np.testing.assert_allclose(ag.augustin_operator(2.0, [1.0], [w], w), w, atol=1e-15)

    def test_order_two_example(self, two_by_two):
        P, W = two_by_two
        expected = 0.5 * np.array(hand_tilt(2, W[0], [0.5, 0.5])) \
            + 0.5 * np.array(hand_tilt(2, W[1], [0.5, 0.5]))
        got = ag.augustin_operator(2, P, W, [0.5, 0.5])
        np.testing.assert_allclose(got, expected, atol=1e-15)
        np.testing.assert_allclose(got, [0.548174, 0.451826], atol=1e-6)

    def test_domain_error(self):
        W = [[0.5, 0.5], [0.2, 0.8]]
        with pytest.raises(DomainError):
            ag.augustin_operator(2, [0.5, 0.5], W, [1.0, 0.0])

    def test_support_is_output_support(self):
        W = np.array([[0.6, 0.4, 0], [0.1, 0.9, 0], [0, 0, 1]])
        P = [0.5, 0.5, 0]
        for a in [0.5, 2.0]:
            out = ag.augustin_operator(a, P, W, [0.3, 0.3, 0.4])
            np.testing.assert_array_equal(out > 0, [True, True, False])
            assert out.sum() == pytest.approx(1, abs=1e-10)


class TestTiltedOperator:
    def test_beta_one(self, two_by_two):
        P, W = two_by_two
        np.testing.assert_array_equal(ag.tilted_augustin_operator(2, 1, P, W, [0.5, 0.5]),
                                      ag.augustin_operator(2, P, W, [0.5, 0.5]))

    def test_fixed_point_for_every_beta(self):
        P, W = instance(5)
        star = ag.solve_augustin_mean(0.6, P, W, tol=1e-14).mean
        for beta in [0.1, 0.5, 1.0]:
            np.testing.assert_allclose(ag.tilted_augustin_operator(0.6, beta, P, W, star),
                                       star, atol=1e-12)

    def test_geometric_mixture_example(self, two_by_two):
        P, W = two_by_two
        a = np.array([0.5481744421906694, 0.45182555780933065])
        mix = np.sqrt(a * 0.5)
        got = ag.tilted_augustin_operator(2, 0.5, P, W, [0.5, 0.5])
        np.testing.assert_allclose(got, mix / mix.sum(), atol=1e-14)
        assert got.sum() == pytest.approx(1, abs=1e-10)

    def test_bad_beta(self, two_by_two):
        with pytest.raises(PreconditionError):
            ag.tilted_augustin_operator(2, 0, *two_by_two, [0.5, 0.5])


class TestSolve:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 2.0, 7.0])
    def test_noiseless(self, alpha):
        r = ag.solve_augustin_mean(alpha, np.ones(3) / 3, identity(3))
        assert r.converged
        np.testing.assert_allclose(r.mean, np.ones(3) / 3, atol=1e-12)
        assert r.information == pytest.approx(math.log(3), abs=1e-12)

    def test_order_one_closed_form(self, bsc01):
        r = ag.solve_augustin_mean(1, *bsc01)
        np.testing.assert_array_equal(r.mean, [0.5, 0.5])
        assert r.information == pytest.approx(math.log(2) - binary_entropy(0.1), abs=1e-15)

    def test_half_order_bsc(self, bsc01):
        r = ag.solve_augustin_mean(0.5, *bsc01)
        np.testing.assert_allclose(r.mean, [0.5, 0.5], atol=1e-12)
        expected = -2 * math.log(math.sqrt(0.05) + math.sqrt(0.45))
        assert r.information == pytest.approx(expected, abs=1e-12)
        assert r.information == pytest.approx(0.223144, abs=1e-6)

    def test_infinite_order_rejected(self, bsc01):
        with pytest.raises(ValueError, match="not supported"):
            ag.solve_augustin_mean(math.inf, *bsc01)

    def test_non_convergence_reported(self):
        P, W = instance(8)
        r = ag.solve_augustin_mean(20.0, P, W, max_iter=3)
        assert not r.converged
        assert r.iterations == 3
        assert r.residual_tv > 1e-10

    def test_report_fields(self):
        P, W = instance(9)
        r = ag.solve_augustin_mean(2.5, P, W)
        assert r.converged
        assert r.information == r.objective_trace[-1]
        assert len(r.objective_trace) == r.iterations + 1
        assert r.residual_tv == pytest.approx(
            np.abs(ag.augustin_operator(2.5, P, W, r.mean) - r.mean).sum(), abs=1e-15)
        assert r.information == pytest.approx(
            conditional_renyi_divergence(2.5, W, r.mean, P), abs=1e-14)
        assert r.beta == pytest.approx(1 / 2.5)

    def test_beta_validation(self, bsc01):
        with pytest.raises(PreconditionError):
            ag.solve_augustin_mean(3.0, *bsc01, beta=0.6)
        r = ag.solve_augustin_mean(3.0, *bsc01, beta=0.4)
        assert r.converged

    def test_zero_column_support(self):
        W = np.array([[0.7, 0.3, 0], [0.2, 0.8, 0], [0, 0.5, 0.5]])
        P = [0.6, 0.4, 0]
        for a in [0.5, 2.0]:
            r = ag.solve_augustin_mean(a, P, W)
            np.testing.assert_array_equal(r.mean > 0,
                                          ag.output_distribution_tilde(P, W) > 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from(ORDERS))
    def test_trace_nonincreasing(self, seed, alpha):
        r = ag.solve_augustin_mean(alpha, *instance(seed))
        trace = np.array(r.objective_trace)
        assert np.all(np.diff(trace) <= 1e-10)

    def test_iterates_match_solver(self):
        P, W = instance(11)
        r = ag.solve_augustin_mean(2.0, P, W)
        it = ag.augustin_iterates(2.0, P, W)
        values = [next(it)[2] for _ in range(len(r.objective_trace))]
        np.testing.assert_allclose(values, r.objective_trace, rtol=0, atol=0)


class TestMonotonicityGap:
    def test_fixed_point(self):
        P, W = instance(12)
        star = ag.solve_augustin_mean(0.5, P, W, tol=1e-14).mean
        drop, middle, pins = ag.monotonicity_gap(0.5, 1.0, P, W, star)
        assert drop == pytest.approx(0, abs=1e-13)
        assert middle == pytest.approx(0, abs=1e-13)
        assert pins == pytest.approx(0, abs=1e-20)

    def test_below_one_random(self):
        for seed in range(20):
            P, W = instance(seed, 3, 3)
            q = np.random.default_rng(seed).dirichlet(np.ones(3))
            drop, middle, pins = ag.monotonicity_gap(0.5, 1.0, P, W, q)
            assert drop >= middle - 1e-12 >= pins - 2e-12 >= -3e-12

    def test_order_two_example(self, two_by_two):
        P, W = two_by_two
        q = np.array([0.5, 0.5])
        drop, middle, pins = ag.monotonicity_gap(2, 0.4, P, W, q)
        a = ag.augustin_operator(2, P, W, q)
        nxt = ag.tilted_augustin_operator(2, 0.4, P, W, q)
        assert drop == pytest.approx(conditional_renyi_divergence(2, W, q, P)
                                     - conditional_renyi_divergence(2, W, nxt, P), abs=1e-15)
        assert middle == pytest.approx(0.4 * renyi_divergence(1 - 0.4, a, q)
                                       + 0.6 * renyi_divergence(0.4, a, q), abs=1e-15)
        tv = np.abs(a - q).sum()
        assert pins == pytest.approx(0.4 * (2 - 0.8) / 2 * tv ** 2, abs=1e-15)
        assert drop >= middle >= pins > 0

    @pytest.mark.parametrize("alpha, beta", [(1.0, 0.5), (0.5, 0.0), (0.5, 1.2),
                                             (3.0, 0.5), (1.5, 1.0)])
    def test_hypothesis_violations(self, two_by_two, alpha, beta):
        with pytest.raises(PreconditionError):
            ag.monotonicity_gap(alpha, beta, *two_by_two, [0.5, 0.5])


class TestSandwich:
    def test_at_mean(self):
        P, W = instance(13)
        r = ag.solve_augustin_mean(1.7, P, W)
        upper, gap, lower = ag.ehb_sandwich(1.7, P, W, r.mean, r)
        assert (upper, lower) == (0, 0)
        assert gap == pytest.approx(0, abs=1e-15)

    def test_order_one_collapses(self):
        P, W = instance(14)
        r = ag.solve_augustin_mean(1, P, W)
        q = np.random.default_rng(1).dirichlet(np.ones(4))
        upper, gap, lower = ag.ehb_sandwich(1, P, W, q, r)
        expected = renyi_divergence(1, P @ W, q)
        assert upper == lower == pytest.approx(expected, abs=1e-15)
        assert gap == pytest.approx(expected, abs=1e-13)

    def test_half_order_bsc(self, bsc01):
        P, W = bsc01
        r = ag.solve_augustin_mean(0.5, P, W)
        q = [0.3, 0.7]
        upper, gap, lower = ag.ehb_sandwich(0.5, P, W, q, r)
        assert upper == pytest.approx(renyi_divergence(1, [0.5, 0.5], q), abs=1e-12)
        assert lower == pytest.approx(renyi_divergence(0.5, [0.5, 0.5], q), abs=1e-12)
        assert upper >= gap >= lower

    def test_requires_convergence(self):
        P, W = instance(15)
        r = ag.solve_augustin_mean(20.0, P, W, max_iter=1)
        with pytest.raises(PreconditionError):
            ag.ehb_sandwich(20.0, P, W, [0.25] * 4, r)


class TestMeanIdentity:
    def test_order_one(self):
        P, W = instance(16)
        r = ag.solve_augustin_mean(1, P, W)
        assert ag.mean_identity_residual(1, P, W, r) <= 1e-12

    def test_noiseless(self):
        P = np.ones(3) / 3
        r = ag.solve_augustin_mean(2.0, P, identity(3), tol=1e-10)
        assert ag.mean_identity_residual(2.0, P, identity(3), r) <= 1e-8

    def test_bsc(self, bsc01):
        r = ag.solve_augustin_mean(0.5, *bsc01, tol=1e-10)
        assert ag.mean_identity_residual(0.5, *bsc01, r) <= 1e-9

    @pytest.mark.parametrize("alpha", ORDERS)
    def test_random(self, alpha):
        P, W = instance(17)
        r = ag.solve_augustin_mean(alpha, P, W, tol=1e-12)
        assert ag.mean_identity_residual(alpha, P, W, r) <= 1e-9
