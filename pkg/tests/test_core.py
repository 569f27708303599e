import numpy as np
import pytest

from genco import (
    GameInstance,
    Ranking,
    Strategy,
    StrategyProfile,
    ValidationError,
    ValueVector,
    ScoreFunction,
    validate_instance,
)

from conftest import S1


class TestValueVector:
    def test_rejects_negative(self):
        with pytest.raises(ValidationError, match="negative value at index 1"):
            ValueVector([-1.0, 2.0])

    def test_rejects_all_zero(self):
        with pytest.raises(ValidationError):
            ValueVector([0.0, 0.0])

    def test_roundtrip(self):
        v = ValueVector([3, 2])
        assert v.k == 2
        assert np.allclose(v.arr, [3.0, 2.0])


class TestRanking:
    def test_identity(self):
        assert Ranking.identity(3).order == (1, 2, 3)

    def test_rejects_non_permutation(self):
        with pytest.raises(ValidationError, match="not a permutation"):
            Ranking([1, 1])

    def test_idx_zero_based(self):
        assert list(Ranking([2, 3, 1]).idx) == [1, 2, 0]


class TestStrategy:
    def test_sum_enforced(self):
        with pytest.raises(ValidationError):
            Strategy([0.5, 0.6])

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            Strategy([1.1, -0.1])

    def test_respects_ranking(self):
        p = Strategy([0.2, 0.5, 0.3])
        assert p.respects(Ranking([2, 3, 1]))
        assert not p.respects(Ranking.identity(3))


class TestProfile:
    def test_matrix_shape(self):
        prof = StrategyProfile([Strategy([0.6, 0.4]), Strategy([1.0, 0.0])])
        assert prof.matrix().shape == (2, 2)
        assert prof.tool_of == (0, 0)

    def test_mismatched_k_rejected(self):
        with pytest.raises(ValidationError):
            StrategyProfile([Strategy([1.0]), Strategy([0.5, 0.5])])


class TestValidateInstance:
    def test_two_type_instance_ok(self):
        g = GameInstance(n=2, d=[3, 2], s=S1, rankings=((1, 2),))
        assert validate_instance(g).ok

    def test_negative_d_reported(self):
        g = GameInstance(n=2, d=[-1, 2], s=S1, rankings=((1, 2),))
        rep = validate_instance(g)
        assert not rep.ok
        assert any("negative value at index 1" in v for v in rep.violations)

    def test_bad_ranking_reported(self):
        g = GameInstance(n=2, d=[3, 2], s=S1, rankings=((1, 1),))
        rep = validate_instance(g)
        assert any("not a permutation" in v for v in rep.violations)

    def test_bad_n_reported(self):
        g = GameInstance(n=0, d=[3, 2], s=S1, rankings=((1, 2),))
        assert not validate_instance(g).ok

    def test_bad_table_score_reported(self):
        g = GameInstance(
            n=2, d=[3, 2], s=ScoreFunction.table([2.0, 3.0]), rankings=((1, 2),)
        )
        rep = validate_instance(g)
        assert any("D.3" in v for v in rep.violations)

    def test_short_table_reported_at_load(self):
        g = GameInstance(
            n=5, d=[3, 2], s=ScoreFunction.table([1.0, 2.0, 4.0]), rankings=((1, 2),)
        )
        rep = validate_instance(g)
        assert any("defined up to 3" in v for v in rep.violations)
