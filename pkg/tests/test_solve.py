import math

import numpy as np
import pytest

from genco import (
    ScoreFunction,
    eval_utility,
    eval_welfare_sym,
    limit_dist,
    pava_reduce,
    share,
    solve_eq,
    solve_opt,
)

from conftest import S1, S2, S_HALF, S_INF, random_instance


class TestWorkedExample:
    def test_equilibrium(self):
        sol = solve_eq(2, [3, 2], S1)
        assert np.allclose(sol.strategy.probs, [0.8, 0.2], atol=1e-7)
        assert sol.per_player_utility == pytest.approx(1.8, abs=1e-7)

    def test_optimum(self):
        sol = solve_opt(2, [3, 2], S1)
        assert np.allclose(sol.strategy.probs, [0.6, 0.4], atol=1e-7)
        assert sol.welfare == pytest.approx(3.8, abs=1e-7)

    def test_no_deviation_beats_equilibrium(self):
        sol = solve_eq(2, [3, 2], S1)
        for dev in ([1.0, 0.0], [0.5, 0.5]):
            got = eval_utility(dev, sol.strategy, 2, [3, 2], S1)
            assert got <= sol.level + 1e-9

    def test_point_masses_tie_at_equilibrium(self):
        sol = solve_eq(2, [3, 2], S1)
        for k in range(2):
            dev = np.zeros(2)
            dev[k] = 1.0
            assert eval_utility(dev, sol.strategy, 2, [3, 2], S1) == pytest.approx(
                1.8, abs=1e-7
            )


class TestEdgeCases:
    def test_single_type(self):
        for n in (1, 2, 5):
            assert solve_eq(n, [7.0], S2).strategy.probs == (1.0,)

    def test_equal_values_symmetric(self):
        assert np.allclose(solve_eq(3, [1, 1], S1).strategy.probs, [0.5, 0.5])
        assert np.allclose(solve_opt(4, [1, 1], S_HALF).strategy.probs, [0.5, 0.5])

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            solve_eq(2, [0.0, 0.0], S1)

    def test_n1_prefix_best(self):
        sol = solve_eq(1, [3, 2], S1)
        assert sol.strategy.probs == (1.0, 0.0)
        assert sol.per_player_utility == pytest.approx(3.0)

    def test_zero_valued_types_never_played(self, rng):
        for _ in range(10):
            n, d, s = random_instance(rng, allow_zero=False)
            d[-1] = 0.0
            for sol in (solve_eq(n, d, s), solve_opt(n, d, s)):
                assert sol.strategy.probs[-1] == 0.0


class TestSolverInvariants:
    def test_equilibrium_kkt(self, rng):
        for _ in range(25):
            n, d, s = random_instance(rng)
            d = pava_reduce(d).reduced
            sol = solve_eq(n, d, s)
            p = np.asarray(sol.strategy.probs)
            on = p > 0
            conditional = d[on] * share(s, n - 1, p[on])
            assert np.allclose(conditional, sol.level, atol=1e-7)
            assert np.all(d[~on] <= sol.level + 1e-7)

    def test_no_profitable_deviation(self, rng):
        count = 0
        while count < 200:
            n, d, s = random_instance(rng)
            d = pava_reduce(d).reduced
            sol = solve_eq(n, d, s)
            for _ in range(5):
                if rng.random() < 0.5:
                    dev = np.zeros(d.size)
                    dev[int(rng.integers(0, d.size))] = 1.0
                else:
                    j = int(rng.integers(1, d.size + 1))
                    dev = np.zeros(d.size)
                    dev[:j] = 1.0 / j
                gain = eval_utility(dev, sol.strategy, n, d, s) - sol.level
                assert gain <= 1e-7
                count += 1

    def test_optimum_first_order_down(self, rng):
        for _ in range(15):
            n, d, _ = random_instance(rng)
            d = pava_reduce(d).reduced
            s = [S1, S2, S_INF][int(rng.integers(0, 3))]
            p = np.asarray(solve_opt(n, d, s).strategy.probs)
            on = p > 0
            cond = d[on] * (1 - p[on]) ** (n - 1)
            assert np.ptp(cond) <= 1e-7

    def test_optimum_first_order_up(self, rng):
        from genco import marginal_served

        for _ in range(15):
            n, d, _ = random_instance(rng)
            d = pava_reduce(d).reduced
            s = S_HALF
            p = np.asarray(solve_opt(n, d, s).strategy.probs)
            on = p > 0
            cond = d[on] * marginal_served(s, n - 1, p[on])
            assert np.ptp(cond) <= 1e-6

    def test_strategies_monotone(self, rng):
        for _ in range(20):
            n, d, s = random_instance(rng)
            for sol in (solve_eq(n, d, s), solve_opt(n, d, s)):
                assert np.all(np.diff(sol.strategy.probs) <= 1e-9)

    def test_pava_equivalence(self, rng):
        for _ in range(25):
            n, _, s = random_instance(rng)
            k = int(rng.integers(2, 9))
            d_raw = rng.uniform(0.0, 5.0, k)
            d_raw[int(rng.integers(0, k))] = 0.0
            if not np.any(d_raw > 0):
                d_raw[0] = 1.0
            a = solve_eq(n, d_raw, s)
            b = solve_eq(n, pava_reduce(d_raw).reduced, s)
            assert np.allclose(a.strategy.probs, b.strategy.probs, atol=1e-7)
            assert a.per_player_utility == pytest.approx(
                b.per_player_utility, abs=1e-7
            )

    def test_pooled_solution_survives_raw_polytope_audit(self, rng):
        # The solver pools values internally; the result must still be
        # an equilibrium of the unpooled game over the ranking polytope.
        from genco import StrategyProfile, check_equilibrium

        for _ in range(15):
            n, _, s = random_instance(rng)
            k = int(rng.integers(2, 7))
            d_raw = rng.uniform(0.0, 5.0, k)
            if not np.any(d_raw > 0):
                d_raw[0] = 1.0
            p = solve_eq(n, d_raw, s).strategy
            prof = StrategyProfile([p] * n)
            assert check_equilibrium(prof, d_raw, s, eps=1e-7).is_equilibrium

    def test_inf_equivalence(self, rng):
        for _ in range(15):
            n, d, _ = random_instance(rng)
            s = [S1, S2, S_INF][int(rng.integers(0, 3))]
            opt = solve_opt(n, d, s)
            eq_inf = solve_eq(n, d, S_INF)
            assert np.allclose(opt.strategy.probs, eq_inf.strategy.probs, atol=1e-7)


class TestScaleAndTableScores:
    def test_stable_at_ten_thousand_players(self):
        for gamma in (0.5, 1.0, 2.0, math.inf):
            sol = solve_eq(10_000, [5.0, 2.0], ScoreFunction.power(gamma))
            p = np.asarray(sol.strategy.probs)
            assert np.all(np.isfinite(p))
            assert p.sum() == pytest.approx(1.0, abs=1e-9)
        # Near the player limit the equilibrium sits at its large-n target.
        p = np.asarray(solve_eq(10_000, [5.0, 2.0], S1).strategy.probs)
        assert np.allclose(p, [5 / 7, 2 / 7], atol=1e-4)

    def test_table_score_matches_equivalent_power(self):
        vals = [1.0, 2**0.5, 3**0.5, 2.0]
        table = ScoreFunction.table(vals)
        for solver in (solve_eq, solve_opt):
            a = solver(4, [3, 2, 1], table)
            b = solver(4, [3, 2, 1], S_HALF)
            assert np.allclose(a.strategy.probs, b.strategy.probs, atol=1e-9)

    def test_short_table_raises_in_solver(self):
        with pytest.raises(ValueError):
            solve_eq(5, [3, 2], ScoreFunction.table([1.0, 2.0]))


class TestWelfareAndUtility:
    def test_welfare_examples(self):
        assert eval_welfare_sym([0.8, 0.2], 2, [3, 2], S1) == pytest.approx(3.6)
        assert eval_welfare_sym([0.6, 0.4], 2, [3, 2], S1) == pytest.approx(3.8)

    def test_single_player_welfare(self):
        assert eval_welfare_sym([0.7, 0.3], 1, [3, 2], S2) == pytest.approx(2.7)

    def test_point_mass_utility_reduction(self, rng):
        n, d, s = random_instance(rng)
        p = np.asarray(solve_eq(n, d, s).strategy.probs)
        k = int(np.argmax(p))
        dev = np.zeros(d.size)
        dev[k] = 1.0
        expected = d[k] * share(s, n - 1, p[k])
        assert eval_utility(dev, p, n, d, s) == pytest.approx(expected, abs=1e-12)

    def test_solo_utility_is_mean_value(self):
        assert eval_utility([0.5, 0.5], [1.0, 0.0], 1, [3, 2], S_INF) == 2.5

    def test_up_welfare_is_n_times_utility(self, rng):
        for _ in range(10):
            n, d, _ = random_instance(rng)
            p = np.asarray(solve_eq(n, d, S_HALF).strategy.probs)
            w = eval_welfare_sym(p, n, d, S_HALF)
            u = eval_utility(p, p, n, d, S_HALF)
            assert w == pytest.approx(n * u, abs=1e-9)


class TestLimitDist:
    def test_direct_formula(self):
        assert np.allclose(limit_dist([5, 2], 1.0).probs, [5 / 7, 2 / 7])
        assert np.allclose(limit_dist([4, 1], 0.5).probs, [16 / 17, 1 / 17])
        assert np.allclose(limit_dist([3, 3], 2.7).probs, [0.5, 0.5])

    def test_down_optimum_limit_uniform(self):
        p = limit_dist([5, 2, 1], 1.0, sdown_optimum=True)
        assert np.allclose(p.probs, [1 / 3] * 3)

    def test_zero_value_warns_in_uniform_limit(self):
        with pytest.warns(UserWarning):
            limit_dist([5, 0], 1.0, sdown_optimum=True)

    def test_bad_gamma(self):
        with pytest.raises(ValueError):
            limit_dist([1, 2], 0.0)
        with pytest.raises(ValueError):
            limit_dist([1, 2], math.inf)
