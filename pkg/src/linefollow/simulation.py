"""Single-run engine wiring memory, arousal, environment, and motor learning.

The world advances one frame (40 ms) at a time while the agent consumes
simulated time in production firings; the agent catches up to the frame
clock before each frame is stepped.  Round statistics, probe coding,
arousal bookkeeping, and annealed threshold updates all happen inline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import arousal as arousal_mod
from .agent import (Agent, CONTINUE, LEFT, LEFT_PUNCH, MotorView, RIGHT,
                    RIGHT_PUNCH, STOP)
from .config import RunConfig
from .course import CourseProfile, load_bundled_course, load_course
from .env import (CIRCLE_STEP_PX, ProbeStream, STATUS_ANSWERED,
                  STATUS_MISSING, STATUS_TIMEOUT, TIMEOUT_RT_S,
                  schedule_probes)
from .memory import ActivationParams, make_goal_associations, make_goal_chunks
from .tracker import (feedback_from_transition, make_tracker, propose_thetas,
                      update_tracker)


@dataclass
class RunResult:
    run_id: int
    seed: int
    condition: str
    param_set: int
    offline_ratio: np.ndarray
    rt_by_round: np.ndarray
    mean_r_by_round: np.ndarray
    round_scores: np.ndarray
    probes: list
    degenerate: bool
    theta_final: np.ndarray
    trace: Optional[list] = None

    def probe_counts(self) -> dict:
        counts = {STATUS_ANSWERED: 0, STATUS_TIMEOUT: 0, STATUS_MISSING: 0}
        for rec in self.probes:
            counts[rec.status] += 1
        return counts


def rt_series_by_round(probes, round_s: float, n_rounds: int) -> np.ndarray:
    """Per-round mean reaction time from the probe log.

    Answered probes contribute their RT, timeouts contribute the 50-s
    ceiling, and missing probes are excluded.  Rounds without a usable
    probe stay NaN.
    """
    sums = np.zeros(n_rounds)
    counts = np.zeros(n_rounds)
    for rec in probes:
        if rec.status == STATUS_MISSING:
            continue
        rt = rec.rt if rec.status == STATUS_ANSWERED else TIMEOUT_RT_S
        idx = min(int(rec.onset // round_s), n_rounds - 1)
        sums[idx] += rt
        counts[idx] += 1
    with np.errstate(invalid="ignore"):
        series = sums / counts
    series[counts == 0] = np.nan
    return series


class _MotorState:
    """Held-key state plus the press schedule of an in-flight punch."""

    def __init__(self, press_s: float):
        self.press_s = press_s
        self.held = 0
        self.punch_dir = 0
        self.punch_start = -math.inf

    def apply(self, command: str, now: float) -> None:
        if command == CONTINUE:
            return
        if command == STOP:
            self.held = 0
            self.punch_dir = 0
        elif command == LEFT:
            self.held = -1
            self.punch_dir = 0
        elif command == RIGHT:
            self.held = 1
            self.punch_dir = 0
        elif command in (LEFT_PUNCH, RIGHT_PUNCH):
            self.held = 0
            self.punch_dir = -1 if command == LEFT_PUNCH else 1
            self.punch_start = now

    def pressed(self, now: float) -> int:
        if self.punch_dir:
            dt = now - self.punch_start
            if dt < 0:
                return 0
            if dt < self.press_s or self.press_s * 2 <= dt < self.press_s * 3:
                return self.punch_dir
            if dt >= self.press_s * 3:
                self.punch_dir = 0
            return 0
        return self.held

    @property
    def moving(self) -> bool:
        return bool(self.held or self.punch_dir)


class Simulation:
    """One seeded run; exposes the environment surface the agent uses."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.rng = np.random.default_rng(cfg.seed)
        spec = (load_course(cfg.course_file) if cfg.course_file
                else load_bundled_course(cfg.course_kind))
        self.profile = CourseProfile(spec)

        params = cfg.goal_params()
        chunks = make_goal_chunks(*params["main"], *params["sub"])
        activation = ActivationParams(
            decay=cfg.memory.decay, beta=cfg.memory.beta,
            noise_s=cfg.memory.noise_s, mas=cfg.memory.mas,
            retrieval_threshold=cfg.memory.retrieval_threshold,
            latency_factor=cfg.memory.latency_factor,
            spreading_mode=cfg.memory.spreading_mode)
        self.agent = Agent(chunks, make_goal_associations(), activation,
                           self.rng, firing_s=cfg.agent.firing_s,
                           keep_trace=cfg.keep_trace)

        self.arousal = arousal_mod.ArousalState(mode=cfg.arousal.mode,
                                                alpha=cfg.arousal.alpha)
        self.tracker = make_tracker(cfg.tracker.t0, cfg.tracker.cooling,
                                    cfg.tracker.delta, cfg.tracker.theta_min,
                                    cfg.tracker.theta_max,
                                    cfg.tracker.metropolis)
        self.thetas = self.tracker.thetas

        self.probes = ProbeStream(schedule_probes(
            cfg.env.duration_s, cfg.env.probe_mean_s, cfg.env.probe_sd_s,
            self.rng))
        self.motor = _MotorState(cfg.agent.punch_press_s)

        self.circle_x = 0.0
        self.line_x = 0.0
        self.turn_x = 0.0
        self.turn_dy = 0.0
        self.online = True
        self.now = 0.0

        n = cfg.n_rounds
        self._round_online = np.zeros(n)
        self._round_total = np.zeros(n)
        self._round_r_sum = np.zeros(n)
        self._round_r_count = np.zeros(n)
        self._round_scores: List[float] = []
        self._round_idx = 0
        self._running_pct = 100.0

    # --- environment surface consumed by the agent -------------------

    @property
    def probe_visible(self) -> bool:
        return self.probes.visible

    def current_r(self) -> float:
        return arousal_mod.r_for_frame(self.arousal, self._running_pct)

    def note_retrieval(self, r: float) -> None:
        i = self._round_idx
        self._round_r_sum[i] += r
        self._round_r_count[i] += 1

    def respond_probe(self, when: float) -> None:
        if self.probes.visible:
            self.probes.respond(when)

    def motor_view(self) -> MotorView:
        dx = self.line_x - self.circle_x
        gx = self.turn_x - self.circle_x
        gy = self.turn_dy
        return MotorView(
            vl=abs(dx), line_dir=(1 if dx > 0 else -1 if dx < 0 else 0),
            vg=math.hypot(gx, gy), vg_x=abs(gx), vg_y=gy,
            turn_dir=(1 if gx > 0 else -1 if gx < 0 else 0),
            moving=self.motor.moving, online=self.online,
            held_dir=self.motor.held)

    def apply_command(self, command: str, when: float) -> None:
        self.motor.apply(command, when)

    # --- main loop ---------------------------------------------------

    def run(self) -> RunResult:
        cfg = self.cfg
        frame_s = cfg.env.frame_ms / 1000.0
        n_frames = int(round(cfg.env.duration_s / frame_s))
        frames_per_round = int(round(cfg.env.round_s / frame_s))
        lap = self.profile.frames_per_lap
        line_arr = self.profile.line_x
        dist_arr = self.profile.dist_to_turn
        turn_arr = self.profile.turn_x
        tol = cfg.env.tolerance_px
        delta = cfg.tracker.delta
        agent = self.agent
        motor = self.motor
        probes = self.probes

        self.line_x = float(line_arr[0])
        self.turn_x = float(turn_arr[0])
        self.turn_dy = float(dist_arr[0])
        prev_online = True
        prev_offset = 0.0
        window_feedback = 0.0

        for f in range(n_frames):
            now = f * frame_s
            self.now = now
            probes.tick(now)
            while agent.clock <= now:
                agent.run_cycle(self)

            pressed = motor.pressed(now)
            if pressed:
                self.circle_x += CIRCLE_STEP_PX * pressed
            idx = (f + 1) % lap
            self.line_x = float(line_arr[idx])
            self.turn_x = float(turn_arr[idx])
            self.turn_dy = float(dist_arr[idx])
            offset = self.circle_x - self.line_x
            online = abs(offset) <= tol
            self.online = online

            event = feedback_from_transition(prev_online, online,
                                             prev_offset, offset, delta)
            if event is not None:
                window_feedback += event.magnitude
            prev_online, prev_offset = online, offset

            i = self._round_idx
            self._round_total[i] += 1
            if online:
                self._round_online[i] += 1
            self._running_pct = 100.0 * self._round_online[i] / self._round_total[i]

            if (f + 1) % lap == 0 and cfg.tracker.enabled:
                update_tracker(self.tracker, window_feedback, self.rng)
                self.tracker.thetas = propose_thetas(self.tracker, self.rng)
                self.thetas = self.tracker.thetas
                window_feedback = 0.0

            if (f + 1) % frames_per_round == 0:
                score = self._running_pct
                self._round_scores.append(score)
                if self.arousal.mode == arousal_mod.MODE_TRACKING:
                    self.arousal = arousal_mod.update_goal_score(
                        self.arousal, self._round_scores)
                if self._round_idx < cfg.n_rounds - 1:
                    self._round_idx += 1
                # Running score carries over until the new round has frames.

        probes.finalize(n_frames * frame_s)
        return self._collect()

    def _collect(self) -> RunResult:
        cfg = self.cfg
        offline = 1.0 - self._round_online / np.maximum(self._round_total, 1)
        with np.errstate(invalid="ignore"):
            mean_r = self._round_r_sum / self._round_r_count
        mean_r[self._round_r_count == 0] = np.nan
        rt = rt_series_by_round(self.probes.records, cfg.env.round_s,
                                cfg.n_rounds)
        return RunResult(
            run_id=cfg.run_id, seed=cfg.seed, condition=cfg.condition,
            param_set=cfg.param_set, offline_ratio=offline, rt_by_round=rt,
            mean_r_by_round=mean_r,
            round_scores=np.asarray(self._round_scores),
            probes=self.probes.records,
            degenerate=bool(offline[-1] > 0.95),
            theta_final=np.asarray(self.thetas, dtype=float).copy(),
            trace=self.agent.trace if cfg.keep_trace else None)


def run_single(cfg: RunConfig) -> RunResult:
    return Simulation(cfg).run()
