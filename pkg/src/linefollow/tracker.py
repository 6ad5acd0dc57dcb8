"""Annealed tuning of the six motor thresholds from tracking feedback.

Feedback accrues per frame pair: +1 for recovering the line, -1 for
losing it, and a small +/- delta for approaching or receding while
offline.  After each course lap the accumulated feedback is compared
against the best window so far; improvements are kept, and a fresh
proposal is drawn around the best thresholds with a spread that cools
geometrically.  Greedy acceptance is the default; Metropolis-style
acceptance of worse windows is available behind a flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

KIND_OFFLINE_TO_ONLINE = "offline_to_online"
KIND_ONLINE_TO_OFFLINE = "online_to_offline"
KIND_APPROACHING = "approaching_while_offline"
KIND_RECEDING = "receding_while_offline"


@dataclass
class FeedbackEvent:
    kind: str
    magnitude: float


@dataclass
class TrackerState:
    thetas: np.ndarray
    temperature: float
    cooling: float = 0.98
    delta: float = 0.1
    theta_min: float = 0.0
    theta_max: float = 48.0
    metropolis: bool = False
    best_thetas: np.ndarray = None
    best_feedback: float = -math.inf
    history: List[Tuple[np.ndarray, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.thetas = np.asarray(self.thetas, dtype=float)
        if self.best_thetas is None:
            self.best_thetas = self.thetas.copy()
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")


def make_tracker(t0: float = 8.0, cooling: float = 0.98, delta: float = 0.1,
                 theta_min: float = 0.0, theta_max: float = 48.0,
                 metropolis: bool = False) -> TrackerState:
    midpoint = (theta_min + theta_max) / 2.0
    return TrackerState(thetas=np.full(6, midpoint), temperature=t0,
                        cooling=cooling, delta=delta, theta_min=theta_min,
                        theta_max=theta_max, metropolis=metropolis)


def feedback_from_transition(prev_online: bool, online: bool,
                             prev_offset: float, offset: float,
                             delta: float = 0.1) -> Optional[FeedbackEvent]:
    """Feedback for one consecutive frame pair, if any."""
    if not prev_online and online:
        return FeedbackEvent(KIND_OFFLINE_TO_ONLINE, 1.0)
    if prev_online and not online:
        return FeedbackEvent(KIND_ONLINE_TO_OFFLINE, -1.0)
    if not online:
        if abs(offset) < abs(prev_offset):
            return FeedbackEvent(KIND_APPROACHING, delta)
        if abs(offset) > abs(prev_offset):
            return FeedbackEvent(KIND_RECEDING, -delta)
    return None


def propose_thetas(tracker: TrackerState, rng) -> np.ndarray:
    """Perturb the best thresholds with temperature-scaled noise."""
    noise = rng.normal(0.0, 1.0, size=tracker.best_thetas.shape)
    proposal = tracker.best_thetas + tracker.temperature * noise
    return np.clip(proposal, tracker.theta_min, tracker.theta_max)


def update_tracker(tracker: TrackerState, window_feedback: float,
                   rng=None) -> TrackerState:
    """Score the completed window and cool the schedule."""
    tracker.history.append((tracker.thetas.copy(), window_feedback))
    accept = window_feedback > tracker.best_feedback
    if not accept and tracker.metropolis and rng is not None:
        gap = tracker.best_feedback - window_feedback
        accept = rng.random() < math.exp(-gap / tracker.temperature)
    if accept:
        tracker.best_thetas = tracker.thetas.copy()
        tracker.best_feedback = window_feedback
    tracker.temperature *= tracker.cooling
    return tracker
