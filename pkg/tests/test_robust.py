"""Robust solvers, evaluation, and the sampling pipeline."""

import math

import numpy as np
import pytest

from robustdense import (
    BudgetExceededError,
    Graph,
    WeightSpace,
    adversarial_spike,
    density,
    gen_planted,
    make_simulated_oracle,
    ratio_at,
    ratio_guarantee,
    sample_count,
    solve_bruteforce,
    solve_exact,
    solve_lower_bound,
    solve_random_weights,
    solve_with_sampling,
)
from robustdense.generators import SimulatedOracle

from conftest import complete_graph, cycle_graph, enumerate_optimum, path_graph


def small_space(g, rng, low_min=0.1):
    lo = low_min + rng.random(g.m) * 0.5
    hi = lo + rng.random(g.m) * 0.5
    return WeightSpace(lo, hi)


class TestRatioGuarantee:
    def test_point_space(self):
        assert ratio_guarantee(WeightSpace([1.0, 1.0], [1.0, 1.0])) == 1.0

    def test_direct_formula(self):
        assert ratio_guarantee(WeightSpace([1.0, 1.0], [2.0, 4.0])) == pytest.approx(0.25)

    def test_zero_lower_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            ratio_guarantee(WeightSpace([0.0, 1.0], [1.0, 1.0]))


class TestRatioAt:
    def test_own_solution_scores_exactly_one(self):
        g = complete_graph(4)
        w = np.array([0.3, 0.9, 0.4, 0.8, 0.2, 0.6])
        res = solve_exact(g, w)
        assert ratio_at(g, w, res.solution) == 1.0

    def test_path_prefix(self):
        # optimum of the unit path on 3 vertices is 2/3 (enumeration)
        g = path_graph(3)
        w = np.ones(2)
        best, _ = enumerate_optimum(g, w)
        assert best == pytest.approx(2.0 / 3.0)
        assert ratio_at(g, w, {0, 1}) == pytest.approx(0.75)

    def test_never_above_one(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            n = int(rng.integers(2, 9))
            g = complete_graph(n)
            w = rng.random(g.m)
            k = int(rng.integers(1, n + 1))
            s = rng.choice(n, size=k, replace=False)
            assert ratio_at(g, w, s) <= 1.0 + 1e-9

    def test_zero_weights(self):
        g = path_graph(3)
        assert ratio_at(g, np.zeros(2), {0, 1}) == 1.0

    def test_empty_set_rejected(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            ratio_at(g, np.ones(2), set())

    def test_precomputed_optimum(self):
        g = complete_graph(5)
        w = np.linspace(0.1, 1.0, g.m)
        opt = solve_exact(g, w).density_value
        s = {0, 1, 2}
        assert ratio_at(g, w, s, optimum=opt) == ratio_at(g, w, s)


class TestLowerBoundSolver:
    def test_point_space_reduces_to_plain_problem(self):
        g = complete_graph(4)
        w = np.array([0.2, 0.9, 0.5, 0.7, 0.3, 0.8])
        space = WeightSpace.degenerate(w)
        res = solve_lower_bound(g, space)
        ref = solve_exact(g, w)
        assert res.density_value == ref.density_value
        assert res.solution == ref.solution

    def test_triangle_example(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])
        space = WeightSpace([1.0, 1.0, 1.0], [1.0, 1.0, 2.0])
        res = solve_lower_bound(g, space)
        best, best_set = enumerate_optimum(g, space.lower)
        assert res.density_value == pytest.approx(best)
        assert res.solution == best_set == frozenset({0, 1, 2})
        assert ratio_guarantee(space) == pytest.approx(0.5)

    def test_k4_guarantee_over_random_vectors(self):
        # ratio against a brute-force optimum stays above the guarantee
        g = complete_graph(4)
        space = WeightSpace(np.full(6, 0.5), np.full(6, 1.0))
        res = solve_lower_bound(g, space)
        assert res.solution == frozenset(range(4))
        bound = ratio_guarantee(space)
        assert bound == pytest.approx(0.5)
        rng = np.random.default_rng(42)
        for _ in range(1000):
            w = space.lower + space.widths() * rng.random(6)
            opt, _ = enumerate_optimum(g, w)
            assert density(g, w, res.solution) / opt >= bound - 1e-9


class TestAdversarialSpike:
    def test_uncovered_edge_drives_ratio_to_zero(self):
        g = cycle_graph(5)
        space = WeightSpace(np.zeros(5), np.ones(5))
        s = {0, 1}
        w = adversarial_spike(g, space, s)
        assert w.sum() == 1.0
        assert ratio_at(g, w, s) == 0.0

    def test_full_vertex_set_gets_first_edge(self):
        g = cycle_graph(6)
        space = WeightSpace(np.zeros(6), np.ones(6))
        w = adversarial_spike(g, space, range(6))
        assert w[0] == 1.0 and w.sum() == 1.0
        assert ratio_at(g, w, range(6)) == pytest.approx(2.0 / 6.0)

    def test_point_space_returns_the_only_vector(self):
        g = path_graph(3)
        space = WeightSpace.degenerate([0.4, 0.7])
        w = adversarial_spike(g, space, {0})
        assert list(w) == [0.4, 0.7]

    def test_fallback_when_every_edge_is_covered(self):
        # V minus s holds only an isolated vertex, so no edge is uncovered
        g = Graph(4, [(0, 1), (0, 2), (1, 2)])
        space = WeightSpace(np.zeros(3), np.ones(3))
        w = adversarial_spike(g, space, {0, 1, 2})
        assert w[0] == 1.0

    def test_smallest_uncovered_id_wins(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        space = WeightSpace(np.zeros(3), np.full(3, 2.0))
        w = adversarial_spike(g, space, {0, 1})
        assert list(w) == [0.0, 2.0, 0.0]

    def test_no_edges_rejected(self):
        g = Graph(2, [])
        with pytest.raises(ValueError):
            adversarial_spike(g, WeightSpace([], []), {0})


class TestRandomBaseline:
    def test_point_space_ignores_seed(self):
        g = complete_graph(4)
        w = np.array([0.2, 0.9, 0.5, 0.7, 0.3, 0.8])
        space = WeightSpace.degenerate(w)
        ref = solve_exact(g, w)
        for seed in (0, 1, 12345):
            res = solve_random_weights(g, space, seed)
            assert res.density_value == ref.density_value

    def test_same_seed_same_output(self):
        g = complete_graph(5)
        rng = np.random.default_rng(3)
        space = small_space(g, rng)
        a = solve_random_weights(g, space, 7)
        b = solve_random_weights(g, space, 7)
        assert a.solution == b.solution
        assert a.density_value == b.density_value

    def test_density_at_least_half_best_edge(self):
        g = complete_graph(4)
        space = WeightSpace(np.zeros(6), np.ones(6))
        seed = 11
        res = solve_random_weights(g, space, seed)
        # reconstruct the sampled vector from the documented recipe
        w = space.lower + space.widths() * np.random.default_rng(seed).random(6)
        assert res.density_value >= w.max() / 2.0 - 1e-12


class TestSampleCount:
    def test_zero_width_needs_no_samples(self):
        assert sample_count(10, 0.0, 0.1, 0.5, 1.0) == 0

    def test_closed_form_against_high_precision(self):
        mpmath = pytest.importorskip("mpmath")
        got = sample_count(78, 0.5, 0.1, 0.5, 1.0)
        hp = mpmath.mpf(78) * mpmath.mpf("0.25") * mpmath.log(
            mpmath.mpf(156) / mpmath.mpf("0.1")
        ) / (mpmath.mpf("0.25") * 1)
        assert got == int(mpmath.ceil(hp)) == 574

    def test_monotone_in_width(self):
        counts = [sample_count(50, w, 0.1, 0.5, 1.0) for w in (0.1, 0.3, 0.7)]
        assert counts == sorted(counts)

    def test_negative_width_rejected(self):
        with pytest.raises(ValueError):
            sample_count(10, -0.1, 0.1, 0.5, 1.0)


def planted_small(seed=5):
    return gen_planted(8, 0.6, 3, 0.3, seed)


class TestSamplingSolver:
    def test_point_intervals_untouched(self):
        g = path_graph(3)
        space = WeightSpace([0.5, 0.2], [0.5, 0.9])
        inst_oracle = SimulatedOracle(space, [0.5, 0.4], seed=0)
        out = solve_with_sampling(g, space, inst_oracle, 0.1, 0.5)
        assert out.sample_counts[0] == 0
        assert out.sample_counts[1] > 0
        assert out.w_out_space.lower[0] == 0.5
        assert out.w_out_space.upper[0] == 0.5

    def test_contraction_invariants(self):
        inst = planted_small()
        oracle = make_simulated_oracle(inst, seed=9)
        out = solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5)
        assert np.all(out.w_out_space.lower >= inst.space.lower)
        assert np.all(out.w_out_space.upper <= inst.space.upper)
        widths = out.w_out_space.widths()
        assert np.all(widths <= 2.0 * out.delta * (1.0 + 1e-12))
        assert out.delta == pytest.approx(
            0.5 * out.base_density / math.sqrt(2.0 * inst.graph.m)
        )
        assert out.total_calls == int(out.sample_counts.sum())
        assert out.total_calls == oracle.total_calls

    def test_counts_match_closed_form(self):
        inst = planted_small()
        oracle = make_simulated_oracle(inst, seed=9)
        out = solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5)
        widths = inst.space.widths()
        for e in range(inst.graph.m):
            want = sample_count(inst.graph.m, float(widths[e]), 0.1, 0.5,
                                out.base_density)
            assert out.sample_counts[e] == want

    def test_deterministic_given_oracle_seed(self):
        inst = planted_small()
        out1 = solve_with_sampling(inst.graph, inst.space,
                                   make_simulated_oracle(inst, seed=4), 0.1, 0.5)
        out2 = solve_with_sampling(inst.graph, inst.space,
                                   make_simulated_oracle(inst, seed=4), 0.1, 0.5)
        assert np.array_equal(out1.w_out_space.lower, out2.w_out_space.lower)
        assert out1.solution == out2.solution

    def test_zero_lower_bounds_rejected(self):
        g = path_graph(3)
        space = WeightSpace(np.zeros(2), np.ones(2))
        oracle = SimulatedOracle(space, [0.5, 0.5], seed=0)
        with pytest.raises(ValueError, match="lower bound"):
            solve_with_sampling(g, space, oracle, 0.1, 0.5)

    def test_bad_gamma_epsilon(self):
        inst = planted_small()
        oracle = make_simulated_oracle(inst, seed=0)
        with pytest.raises(ValueError):
            solve_with_sampling(inst.graph, inst.space, oracle, 1.5, 0.5)
        with pytest.raises(ValueError):
            solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.0)

    def test_budget_cap(self):
        inst = planted_small()
        oracle = make_simulated_oracle(inst, seed=0)
        with pytest.raises(BudgetExceededError) as err:
            solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5,
                                sample_cap=3)
        assert err.value.cap == 3
        assert err.value.required > 3
        assert 0 <= err.value.edge < inst.graph.m
        # cap check happens before any sampling
        assert oracle.total_calls == 0

    def test_containment_frequency(self):
        inst = planted_small()
        hits = 0
        runs = 40
        for rep in range(runs):
            oracle = make_simulated_oracle(inst, seed=1000 + rep)
            out = solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5)
            if out.w_out_space.contains(inst.w_true):
                hits += 1
        assert hits / runs >= 0.9

    def test_quality_chain_inequality(self):
        # density of the returned set at the contracted lower bounds is
        # within 1 - epsilon of the brute-force optimum at the contracted
        # upper bounds
        eps = 0.5
        for seed in range(10):
            inst = gen_planted(8, 0.6, 3, 0.3, seed)
            oracle = make_simulated_oracle(inst, seed=seed + 77)
            out = solve_with_sampling(inst.graph, inst.space, oracle, 0.1, eps)
            lhs = density(inst.graph, out.w_out_space.lower, out.solution)
            rhs = solve_bruteforce(inst.graph, out.w_out_space.upper).density_value
            assert lhs >= (1.0 - eps) * rhs - 1e-9

    def test_restricted_sampling_leaves_unsampled_intervals(self):
        inst = planted_small()
        oracle = make_simulated_oracle(inst, seed=3)
        out = solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5,
                                  restrict_sampling=True)
        skipped = out.sample_counts == 0
        assert np.array_equal(out.w_out_space.lower[skipped],
                              inst.space.lower[skipped])
        assert np.array_equal(out.w_out_space.upper[skipped],
                              inst.space.upper[skipped])
        assert np.all(out.w_out_space.lower >= inst.space.lower)
        assert np.all(out.w_out_space.upper <= inst.space.upper)

    def test_oracle_size_mismatch(self):
        inst = planted_small()
        other = gen_planted(12, 0.6, 3, 0.3, 1)
        oracle = make_simulated_oracle(other, seed=0)
        if other.graph.m != inst.graph.m:
            with pytest.raises(ValueError, match="oracle"):
                solve_with_sampling(inst.graph, inst.space, oracle, 0.1, 0.5)


class TestOracleAccounting:
    def test_counts_per_edge(self):
        space = WeightSpace([0.1, 0.1], [0.9, 0.9])
        oracle = SimulatedOracle(space, [0.5, 0.5], seed=0)
        oracle.query(0)
        oracle.query_block(1, 5)
        oracle.query(1)
        assert list(oracle.call_counts) == [1, 6]
        assert oracle.total_calls == 7

    def test_counts_never_reset(self):
        space = WeightSpace([0.1], [0.9])
        oracle = SimulatedOracle(space, [0.5], seed=0)
        for _ in range(3):
            oracle.query_block(0, 10)
        assert oracle.total_calls == 30

    def test_negative_block_rejected(self):
        space = WeightSpace([0.1], [0.9])
        oracle = SimulatedOracle(space, [0.5], seed=0)
        with pytest.raises(ValueError):
            oracle.query_block(0, -1)
