"""Arousal coefficient r(t) derived from the tracked score goal.

In the fixed-neutral mode r is 1 throughout.  In score-tracking mode
r = alpha * (100 - |score_goal - score_t|) / 100, where score_goal is
the best online percentage among completed rounds and score_t is the
running online percentage of the current round.  Round 1 has no goal
score yet, so r stays at 1 there.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

MODE_FIXED = "fixed-neutral"
MODE_TRACKING = "score-tracking"


@dataclass
class ArousalState:
    mode: str = MODE_FIXED
    alpha: float = 1.0
    score_goal: Optional[float] = None
    current_r: float = 1.0

    def __post_init__(self) -> None:
        if self.mode not in (MODE_FIXED, MODE_TRACKING):
            raise ValueError(f"unknown arousal mode {self.mode!r}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")


def compute_r(score_goal: float, score_t: float, alpha: float) -> float:
    """alpha-scaled closeness of the running score to the goal score."""
    if not 0 <= score_goal <= 100:
        raise ValueError(f"score_goal out of range: {score_goal}")
    if not 0 <= score_t <= 100:
        raise ValueError(f"score_t out of range: {score_t}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return alpha * (100.0 - abs(score_goal - score_t)) / 100.0


def update_goal_score(state: ArousalState,
                      completed_round_scores: Sequence[float]) -> ArousalState:
    """Set the goal score to the best completed round, if any."""
    if state.mode != MODE_TRACKING:
        raise ValueError("goal score is only tracked in score-tracking mode")
    goal = max(completed_round_scores) if completed_round_scores else None
    return replace(state, score_goal=goal)


def r_for_frame(state: ArousalState, running_online_pct: float) -> float:
    """Coefficient in effect for the current frame."""
    if state.mode == MODE_FIXED:
        return 1.0
    if state.score_goal is None:
        return 1.0
    return compute_r(state.score_goal, running_online_pct, state.alpha)
