"""Feedback events and annealed threshold updates."""

import math

import numpy as np
import pytest

from linefollow.tracker import (FeedbackEvent, KIND_APPROACHING,
                                KIND_OFFLINE_TO_ONLINE,
                                KIND_ONLINE_TO_OFFLINE, KIND_RECEDING,
                                TrackerState, feedback_from_transition,
                                make_tracker, propose_thetas, update_tracker)


class TestFeedback:
    def test_recovery_rewarded(self):
        ev = feedback_from_transition(False, True, 12.0, 8.0)
        assert ev.kind == KIND_OFFLINE_TO_ONLINE
        assert ev.magnitude == 1.0

    def test_loss_punished(self):
        ev = feedback_from_transition(True, False, 8.0, 12.0)
        assert ev.kind == KIND_ONLINE_TO_OFFLINE
        assert ev.magnitude == -1.0

    def test_approach_while_offline(self):
        ev = feedback_from_transition(False, False, 20.0, 15.0)
        assert ev.kind == KIND_APPROACHING
        assert ev.magnitude == pytest.approx(0.1)

    def test_recede_while_offline(self):
        ev = feedback_from_transition(False, False, 15.0, 20.0)
        assert ev.kind == KIND_RECEDING
        assert ev.magnitude == pytest.approx(-0.1)

    def test_signed_offsets_compare_by_magnitude(self):
        ev = feedback_from_transition(False, False, -20.0, 15.0)
        assert ev.kind == KIND_APPROACHING

    def test_stationary_offline_no_event(self):
        assert feedback_from_transition(False, False, 15.0, 15.0) is None

    def test_online_stays_online_no_event(self):
        assert feedback_from_transition(True, True, 2.0, 5.0) is None

    def test_custom_delta(self):
        ev = feedback_from_transition(False, False, 20.0, 15.0, delta=0.25)
        assert ev.magnitude == pytest.approx(0.25)


class TestProposals:
    def test_zero_temperature_converges_to_best(self):
        tracker = make_tracker(t0=1e-12)
        proposal = propose_thetas(tracker, np.random.default_rng(0))
        np.testing.assert_allclose(proposal, tracker.best_thetas, atol=1e-9)

    def test_same_seed_same_proposal(self):
        tracker = make_tracker()
        a = propose_thetas(tracker, np.random.default_rng(4))
        b = propose_thetas(tracker, np.random.default_rng(4))
        np.testing.assert_array_equal(a, b)

    def test_spread_scales_with_temperature(self):
        rng = np.random.default_rng(0)
        small = make_tracker(t0=1.0)
        big = make_tracker(t0=8.0)
        s_small = np.std([propose_thetas(small, rng) for _ in range(1000)])
        s_big = np.std([propose_thetas(big, rng) for _ in range(1000)])
        assert s_big > 3 * s_small

    def test_bounds_clamped(self):
        tracker = make_tracker(t0=500.0)
        for seed in range(20):
            proposal = propose_thetas(tracker, np.random.default_rng(seed))
            assert proposal.min() >= 0.0
            assert proposal.max() <= 48.0


class TestUpdates:
    def test_improvement_accepted(self):
        tracker = make_tracker()
        tracker.thetas = np.full(6, 10.0)
        update_tracker(tracker, 5.0)
        np.testing.assert_array_equal(tracker.best_thetas, np.full(6, 10.0))
        assert tracker.best_feedback == 5.0

    def test_worse_window_rejected_greedy(self):
        tracker = make_tracker()
        update_tracker(tracker, 5.0)
        best = tracker.best_thetas.copy()
        tracker.thetas = np.full(6, 1.0)
        update_tracker(tracker, 2.0)
        np.testing.assert_array_equal(tracker.best_thetas, best)
        assert tracker.best_feedback == 5.0

    def test_temperature_geometric_schedule(self):
        tracker = make_tracker(t0=8.0, cooling=0.98)
        for k in range(1, 11):
            update_tracker(tracker, 0.0)
            assert tracker.temperature == pytest.approx(8.0 * 0.98**k)

    def test_history_appended(self):
        tracker = make_tracker()
        update_tracker(tracker, 1.0)
        update_tracker(tracker, -2.0)
        assert len(tracker.history) == 2
        assert tracker.history[1][1] == -2.0

    def test_metropolis_can_accept_worse(self):
        tracker = make_tracker(t0=8.0, metropolis=True)
        update_tracker(tracker, 5.0, np.random.default_rng(0))
        tracker.thetas = np.full(6, 1.0)
        accepted = False
        for seed in range(50):
            t = make_tracker(t0=8.0, metropolis=True)
            update_tracker(t, 5.0, np.random.default_rng(seed))
            t.thetas = np.full(6, 1.0)
            update_tracker(t, 4.9, np.random.default_rng(seed))
            if t.best_feedback == 4.9:
                accepted = True
                break
        assert accepted

    def test_initial_state(self):
        tracker = make_tracker()
        np.testing.assert_array_equal(tracker.thetas, np.full(6, 24.0))
        assert tracker.temperature == 8.0
        assert tracker.best_feedback == -math.inf

    def test_temperature_must_be_positive(self):
        with pytest.raises(ValueError):
            TrackerState(thetas=np.zeros(6), temperature=0.0)
