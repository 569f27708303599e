import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genco import (
    ScoreClass,
    ScoreFunction,
    classify_score,
    inv_share,
    marginal_served,
    score_eval,
    served,
    share,
)

from conftest import S1, S2, S_HALF, S_INF


class TestScoreEval:
    def test_power_square(self):
        assert score_eval(S2, 3) == 9

    @pytest.mark.parametrize("gamma", [0.25, 0.5, 1, 2, 5, math.inf])
    def test_one_producer_is_free(self, gamma):
        assert score_eval(ScoreFunction.power(gamma), 1) == 1.0

    def test_infinite_power_kills_collisions(self):
        assert score_eval(S_INF, 2) == math.inf
        assert share(S_INF, 3, 0.5) == pytest.approx(0.125)

    def test_zero_count_convention(self):
        assert score_eval(S2, 0) == 1.0

    def test_table_range(self):
        t = ScoreFunction.table([1.0, 2.0, 4.0])
        assert score_eval(t, 3) == 4.0
        with pytest.raises(ValueError):
            score_eval(t, 4)


class TestClassify:
    @pytest.mark.parametrize("gamma", [0.25, 0.5, 1.0])
    def test_up_members(self, gamma):
        assert classify_score(ScoreFunction.power(gamma)).is_up

    @pytest.mark.parametrize("gamma", [1.0, 2.0, 5.0, math.inf])
    def test_down_members(self, gamma):
        assert classify_score(ScoreFunction.power(gamma)).is_down

    def test_identity_is_both(self):
        assert classify_score(S1) is ScoreClass.BOTH

    def test_table_sqrt_like_is_up(self):
        vals = [math.sqrt(x) for x in range(1, 8)]
        assert classify_score(ScoreFunction.table(vals)) is ScoreClass.S_UP

    def test_table_square_like_is_down(self):
        vals = [float(x * x) for x in range(1, 8)]
        assert classify_score(ScoreFunction.table(vals)) is ScoreClass.S_DOWN

    def test_rejects_non_unit_start(self):
        with pytest.raises(ValueError, match="D.3"):
            classify_score(ScoreFunction.table([2.0, 3.0]))

    def test_rejects_decreasing(self):
        with pytest.raises(ValueError, match="D.1"):
            classify_score(ScoreFunction.table([1.0, 3.0, 2.0]))

    def test_rejects_concave_reciprocal(self):
        # 1/s = [1, .9, .2]: second difference negative.
        with pytest.raises(ValueError, match="D.2"):
            classify_score(ScoreFunction.table([1.0, 1 / 0.9, 5.0]))


class TestShare:
    def test_identity_closed_form(self):
        assert share(S1, 1, 0.8) == pytest.approx(0.6, abs=1e-12)

    def test_no_rivals_or_no_mass(self):
        assert share(S2, 5, 0.0) == 1.0
        assert share(S_HALF, 0, 0.7) == 1.0

    def test_binomial_sum_matches_direct(self, rng):
        for _ in range(20):
            m = int(rng.integers(1, 9))
            p = float(rng.random())
            gamma = float(rng.choice([0.5, 1.0, 2.0, 3.5]))
            s = ScoreFunction.power(gamma)
            direct = sum(
                math.comb(m, ell) * p**ell * (1 - p) ** (m - ell) / (1 + ell) ** gamma
                for ell in range(m + 1)
            )
            assert share(s, m, p) == pytest.approx(direct, abs=1e-12)

    def test_more_rivals_hurt(self, rng):
        for s in (S_HALF, S1, S2, S_INF):
            for p in np.linspace(0.05, 0.95, 7):
                for m in range(0, 6):
                    assert share(s, m, p) > share(s, m + 1, p)

    def test_stable_at_large_m(self):
        val = share(S2, 5000, 0.3)
        assert 0.0 < val < 1.0 and np.isfinite(val)


class TestInverse:
    def test_worked_example(self):
        assert inv_share(S1, 1, 0.6) == pytest.approx(0.8, abs=1e-9)

    def test_clamps(self):
        assert inv_share(S2, 3, 1.0) == 0.0
        assert inv_share(S2, 3, 1.5) == 0.0
        assert inv_share(S1, 1, 0.5) == 1.0  # share(1, 1) = 0.5 boundary

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(0.0, 1.0),
        st.integers(1, 10),
        st.sampled_from([0.5, 1.0, 2.0, math.inf]),
    )
    def test_round_trip(self, p, m, gamma):
        s = ScoreFunction.power(gamma)
        y = share(s, m, p)
        assert share(s, m, inv_share(s, m, y)) == pytest.approx(y, abs=1e-9)


class TestServed:
    def test_identity_coverage(self):
        assert served(S1, 2, 0.4) == pytest.approx(0.64, abs=1e-12)

    def test_zero_mass(self):
        assert served(S2, 4, 0.0) == 0.0

    def test_single_player_full(self):
        assert served(S_HALF, 1, 1.0) == pytest.approx(1.0)


class TestMarginalServed:
    def test_identity_closed_form(self):
        assert marginal_served(S1, 1, 0.4) == pytest.approx(0.6, abs=1e-12)

    def test_at_zero(self):
        for s in (S_HALF, S1):
            assert marginal_served(s, 4, 0.0) == pytest.approx(1.0)

    def test_rejects_down_scores(self):
        with pytest.raises(ValueError):
            marginal_served(S2, 3, 0.5)

    def test_matches_finite_difference_of_served(self, rng):
        # marginal_served(m, p) = d/dp [served(m+1, p) / (m+1)]
        h = 1e-6
        for _ in range(15):
            m = int(rng.integers(1, 7))
            p = float(rng.uniform(0.05, 0.95))
            gamma = float(rng.choice([0.3, 0.5, 0.8, 1.0]))
            s = ScoreFunction.power(gamma)
            fd = (served(s, m + 1, p + h) - served(s, m + 1, p - h)) / (2 * h * (m + 1))
            assert marginal_served(s, m, p) == pytest.approx(fd, abs=1e-5)

    def test_strictly_decreasing(self):
        grid = np.linspace(0, 1, 11)
        vals = marginal_served(S_HALF, 4, grid)
        assert np.all(np.diff(vals) < 0)
