"""Task environment: circle kinematics, online scoring, probe stream.

The line scrolls one pixel per frame past the circle's row; the circle
moves two pixels per frame while a directional key is down.  The agent
is "online" when the circle sits within the tolerance of the line.
Probes appear at Normal(mean, sd) intervals and stay visible until
answered or replaced by the next onset.

Probe coding follows the analysis rules: a probe answered before the
next onset is "answered" with its reaction time; a probe still pending
at the next onset becomes a "timeout" (coded 50 s downstream); the
probe that follows a non-responded probe was continuously displayed
and is coded "missing" (excluded from statistics) whether or not it
eventually draws a response.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

STATUS_ANSWERED = "answered"
STATUS_TIMEOUT = "timeout"
STATUS_MISSING = "missing"

TIMEOUT_RT_S = 50.0

KEY_NONE = 0
KEY_LEFT = -1
KEY_RIGHT = 1

CIRCLE_STEP_PX = 2


@dataclass
class WorldState:
    frame: int = 0
    sim_time: float = 0.0
    circle_x: float = 0.0
    line_x_at_circle: float = 0.0
    key_state: int = KEY_NONE
    online: bool = True
    frames_total: int = 0
    frames_online: int = 0


def is_online(world: WorldState, tolerance_px: float) -> bool:
    return abs(world.circle_x - world.line_x_at_circle) <= tolerance_px


def step_world(world: WorldState, profile, key_state: int,
               tolerance_px: float, frame_s: float) -> WorldState:
    """Advance one frame: scroll 1 px, move the circle, update counters."""
    world.key_state = key_state
    if key_state:
        world.circle_x += CIRCLE_STEP_PX * key_state
    world.frame += 1
    world.sim_time = world.frame * frame_s
    world.line_x_at_circle = float(profile.line_x[world.frame % profile.frames_per_lap])
    world.online = is_online(world, tolerance_px)
    world.frames_total += 1
    if world.online:
        world.frames_online += 1
    return world


def schedule_probes(duration_s: float, mean_s: float, sd_s: float, rng,
                    tail_margin_s: Optional[float] = None) -> List[float]:
    """Pre-sampled probe onset times.

    Gaps are Normal(mean, sd) truncated below at 1 s.  Onsets stop one
    mean gap before the end of the run so the last probe has a full
    response window.
    """
    if duration_s <= 0:
        raise ValueError("duration must be positive")
    margin = mean_s if tail_margin_s is None else tail_margin_s
    horizon = duration_s - margin
    onsets: List[float] = []
    t = 0.0
    while True:
        t += max(float(rng.normal(mean_s, sd_s)), 1.0)
        if t >= horizon:
            break
        onsets.append(t)
    return onsets


@dataclass
class ProbeRecord:
    onset: float
    rt: Optional[float] = None
    responded: bool = False
    status: Optional[str] = None


@dataclass
class ProbeStream:
    """Runtime probe bookkeeping over a pre-scheduled onset list."""

    onsets: List[float]
    records: List[ProbeRecord] = field(default_factory=list)
    active: Optional[int] = None
    _next: int = 0
    _active_follows_unresponded: bool = False

    def __post_init__(self) -> None:
        self.records = [ProbeRecord(onset=t) for t in self.onsets]

    @property
    def visible(self) -> bool:
        if self.active is None:
            return False
        return not self.records[self.active].responded

    def tick(self, now: float) -> None:
        """Activate due onsets, timing out a still-pending predecessor."""
        while self._next < len(self.onsets) and self.onsets[self._next] <= now:
            follows_unresponded = False
            if self.active is not None:
                prev = self.records[self.active]
                if not prev.responded:
                    if prev.status is None:
                        prev.status = STATUS_TIMEOUT
                    follows_unresponded = True
            self.active = self._next
            if follows_unresponded:
                # Continuously displayed after an unanswered probe.
                self.records[self.active].status = STATUS_MISSING
            self._active_follows_unresponded = follows_unresponded
            self._next += 1

    def respond(self, now: float) -> None:
        if not self.visible:
            raise RuntimeError("response with no visible probe")
        rec = self.records[self.active]
        rec.rt = now - rec.onset
        rec.responded = True
        if rec.status is None:
            rec.status = STATUS_ANSWERED

    def finalize(self, end_time: float) -> None:
        """Close out a probe still pending when the run ends."""
        if self.active is not None:
            rec = self.records[self.active]
            if not rec.responded and rec.status is None:
                rec.status = STATUS_TIMEOUT
