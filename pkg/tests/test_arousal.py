"""Arousal coefficient and score-goal tracking."""

import pytest

from linefollow.arousal import (ArousalState, MODE_FIXED, MODE_TRACKING,
                                compute_r, r_for_frame, update_goal_score)


class TestComputeR:
    def test_zero_mismatch_gives_alpha(self):
        for alpha in (0.5, 1.0, 2.4):
            assert compute_r(70, 70, alpha) == pytest.approx(alpha, abs=1e-12)

    def test_maximal_mismatch_gives_zero(self):
        assert compute_r(100, 0, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_hand_evaluated_point(self):
        assert compute_r(90, 70, 1.2) == pytest.approx(0.96, abs=1e-9)

    def test_hand_evaluated_point_alt(self):
        assert compute_r(80, 40, 1.15) == pytest.approx(0.69, abs=1e-9)

    def test_symmetry_in_mismatch(self):
        assert compute_r(30, 70, 1.5) == compute_r(70, 30, 1.5)

    def test_range_errors(self):
        with pytest.raises(ValueError):
            compute_r(101, 50, 1.0)
        with pytest.raises(ValueError):
            compute_r(50, -1, 1.0)
        with pytest.raises(ValueError):
            compute_r(50, 50, 0.0)


class TestGoalScore:
    def test_singleton(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15)
        assert update_goal_score(state, [62]).score_goal == 62

    def test_max_over_rounds(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15)
        assert update_goal_score(state, [62, 70, 65]).score_goal == 70

    def test_no_completed_rounds(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15)
        updated = update_goal_score(state, [])
        assert updated.score_goal is None
        assert r_for_frame(updated, 55.0) == 1.0

    def test_non_decreasing_across_rounds(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15)
        scores = []
        prev_goal = -1.0
        for s in (40, 70, 55, 80, 20):
            scores.append(s)
            state = update_goal_score(state, scores)
            assert state.score_goal >= prev_goal
            prev_goal = state.score_goal

    def test_fixed_mode_rejects_tracking(self):
        with pytest.raises(ValueError):
            update_goal_score(ArousalState(mode=MODE_FIXED), [50])


class TestRForFrame:
    def test_fixed_mode_always_one(self):
        state = ArousalState(mode=MODE_FIXED, alpha=3.0)
        for pct in (0, 40, 100):
            assert r_for_frame(state, pct) == 1.0

    def test_tracking_zero_mismatch(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15, score_goal=80)
        assert r_for_frame(state, 80) == pytest.approx(1.15, abs=1e-12)

    def test_tracking_with_mismatch(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=1.15, score_goal=80)
        assert r_for_frame(state, 40) == pytest.approx(0.69, abs=1e-9)

    def test_pure_function(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=2.0, score_goal=60)
        assert r_for_frame(state, 50) == r_for_frame(state, 50)

    def test_bounded_by_alpha(self):
        state = ArousalState(mode=MODE_TRACKING, alpha=2.4, score_goal=90)
        for pct in (0, 30, 90, 100):
            assert 0 <= r_for_frame(state, pct) <= 2.4


class TestStateValidation:
    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            ArousalState(mode="bogus")

    def test_alpha_positive(self):
        with pytest.raises(ValueError):
            ArousalState(mode=MODE_TRACKING, alpha=0.0)
