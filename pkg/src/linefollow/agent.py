"""Production-cycle agent: perceive, pick a goal, act.

Each cycle fires perception (copy circle and next-turn positions into
the goal buffer), an optional probe confirmation (buffer stuffing sets
the probe-seen flag at the first cycle boundary after onset), the
objective production (noisy goal retrieval with the buffer as
spreading context, scaled by the arousal coefficient), and one action:
a motor command while the main goal holds, or a space press when the
sub goal wins with the flag on.  Every firing costs 50 ms of simulated
time; retrieval adds its latency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from . import memory
from .memory import (ActivationParams, AssociationTable, Chunk,
                     MAIN_GOAL, SUB_GOAL, record_presentation, retrieve)

STOP = "stop"
LEFT = "left"
RIGHT = "right"
CONTINUE = "continue"
LEFT_PUNCH = "left-punch"
RIGHT_PUNCH = "right-punch"
SPACE = "space"

DEFAULT_FIRING_S = 0.050


@dataclass
class GoalBuffer:
    current_goal: str = MAIN_GOAL
    circle_pos: Optional[float] = None
    next_turn_pos: Optional[float] = None
    flag: bool = False

    def context(self) -> dict:
        return {
            "circle_pos": self.circle_pos,
            "next_turn_pos": self.next_turn_pos,
            "flag": "on" if self.flag else None,
        }


@dataclass
class MotorView:
    """Geometry snapshot consumed by the motor rules.

    vl is the distance to the line; vg is the distance to the next
    turn point with components vg_x (horizontal) and vg_y (vertical).
    line_dir / turn_dir give the horizontal direction (+1 right,
    -1 left, 0 aligned) from the circle to each target.
    """

    vl: float
    line_dir: int
    vg: float
    vg_x: float
    vg_y: float
    turn_dir: int
    moving: bool
    online: bool
    held_dir: int = 0


def _held(direction: int) -> str:
    return RIGHT if direction >= 0 else LEFT


def _punch(direction: int) -> str:
    return RIGHT_PUNCH if direction >= 0 else LEFT_PUNCH


def select_motor_action(view: MotorView, thetas) -> str:
    """Threshold-gated choice among the six tracking operations.

    While moving, stop either when close to the turn point (heading to
    a goal farther than the turn) or when close to the line itself.
    While stopped, head for the turn point when the line is farther
    away than the turn (holding the key for fast closure, punching for
    fine closure), otherwise head for the line.
    """
    t1, t2, t3, t4, t5, t6 = thetas
    if view.moving:
        if view.vl >= view.vg + t6 and view.vg_x <= t3:
            return STOP
        if view.vl <= view.vg + t6 and view.vl <= t3:
            return STOP
        # Receding from both targets means the stop window was missed
        # (the circle crossed its target); release the key.
        if (view.held_dir and view.line_dir != view.held_dir
                and view.turn_dir != view.held_dir):
            return STOP
        return CONTINUE
    if view.vl >= view.vg + t4:
        if view.vg_x > t1:
            if view.vg_x >= view.vg_y + t5:
                return _held(view.turn_dir)
            return _punch(view.turn_dir)
    else:
        if view.vl > t1:
            if view.vl > t2:
                return _held(view.line_dir)
            return _punch(view.line_dir)
    return CONTINUE


@dataclass
class TraceRecord:
    time: float
    fired: str
    goal: str
    a_main: float
    a_sub: float
    r: float


class Agent:
    """Deterministic state machine over memory, buffer, and motor rules."""

    def __init__(self, chunks: List[Chunk], assoc: AssociationTable,
                 params: ActivationParams, rng,
                 firing_s: float = DEFAULT_FIRING_S,
                 keep_trace: bool = False):
        self.buffer = GoalBuffer()
        self.chunks = chunks
        self.by_kind = {c.kind: c for c in chunks}
        self.assoc = assoc
        self.params = params
        self.rng = rng
        self.firing_s = firing_s
        self.clock = 0.0
        self.keep_trace = keep_trace
        self.trace: List[TraceRecord] = []

    def run_cycle(self, env) -> None:
        """One perception -> objective -> action loop against the env."""
        t = self.clock
        self.buffer.circle_pos = env.circle_x
        self.buffer.next_turn_pos = env.turn_x
        t += self.firing_s

        if env.probe_visible and not self.buffer.flag:
            self.buffer.flag = True
            t += self.firing_s

        r = env.current_r()
        outcome = retrieve(self.chunks, kind=None, context=self.buffer.context(),
                           assoc=self.assoc, r=r, now=t, params=self.params,
                           rng=self.rng)
        t += self.firing_s
        if not outcome.failed:
            t += outcome.latency
            record_presentation(outcome.chunk, t)
            self.buffer.current_goal = outcome.chunk.kind
        env.note_retrieval(r)

        fired = "manipulation"
        if self.buffer.current_goal == SUB_GOAL and self.buffer.flag:
            t += self.firing_s
            env.respond_probe(t)
            self.buffer.flag = False
            fired = "probe-response"
        else:
            command = select_motor_action(env.motor_view(), env.thetas)
            t += self.firing_s
            env.apply_command(command, t)

        if self.keep_trace:
            self.trace.append(TraceRecord(
                time=t, fired=fired, goal=self.buffer.current_goal,
                a_main=outcome.activations.get("main", float("nan")),
                a_sub=outcome.activations.get("sub", float("nan")), r=r))
        self.clock = t
