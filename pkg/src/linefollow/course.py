"""Scrolling polyline courses.

A course is an ordered run of 48-px-tall segments at one of five
angles.  The functional geometry is what matters for control: a 30 or
150 degree segment shifts the line 2 px horizontally per scrolled
pixel (so holding the matching key tracks it exactly), 45/135 shift
1 px (press/release alternation required), and 90 is vertical.

A lap is ``frames_per_lap`` scrolled pixels (1 px per frame) and wraps
around; courses must close, i.e. the net horizontal drift over one lap
is zero.  Segment lists may overrun the lap length with trailing
vertical padding, of which only the part inside the lap is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

SEGMENT_HEIGHT = 48
ANGLE_DX = {30: 2, 45: 1, 90: 0, 135: -1, 150: -2}
DIAGONAL_ANGLES = (45, 135)

KIND_SIMPLE = "simple"
KIND_DIFFICULT = "difficult"
FRAMES_PER_LAP = {KIND_SIMPLE: 1500, KIND_DIFFICULT: 4500}

DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class Segment:
    angle: int
    height: int = SEGMENT_HEIGHT

    def __post_init__(self) -> None:
        if self.angle not in ANGLE_DX:
            raise ValueError(f"unsupported segment angle {self.angle}")

    @property
    def dx_per_scroll_px(self) -> int:
        return ANGLE_DX[self.angle]


@dataclass
class CourseSpec:
    kind: str
    segments: List[Segment]
    frames_per_lap: int

    def total_height(self) -> int:
        return sum(seg.height for seg in self.segments)


class CourseProfile:
    """Per-frame geometry precomputed from a CourseSpec.

    Arrays are indexed by lap frame: the line's x position at the
    circle's row, plus the distance to and x position of the next
    angle change (the next "turn" scrolling toward the circle).
    """

    def __init__(self, spec: CourseSpec):
        lap = spec.frames_per_lap
        if spec.total_height() < lap:
            raise ValueError("course shorter than one lap")
        dx = np.repeat([seg.dx_per_scroll_px for seg in spec.segments],
                       [seg.height for seg in spec.segments])[:lap]
        if int(dx.sum()) != 0:
            raise ValueError("course does not close over one lap")
        self.spec = spec
        self.frames_per_lap = lap
        self.line_x = np.concatenate(([0], np.cumsum(dx)))[:lap].astype(np.int64)
        self._build_turn_arrays(dx)

    def _build_turn_arrays(self, dx: np.ndarray) -> None:
        lap = self.frames_per_lap
        # Turn = frame where the effective slope changes (wrap included).
        change = np.flatnonzero(dx != np.roll(dx, 1))
        if change.size == 0:
            change = np.array([0])
        self.turn_frames = change
        dist = np.empty(lap, dtype=np.int64)
        tx = np.empty(lap, dtype=np.int64)
        ext = np.concatenate((change, change[:1] + lap))
        idx = np.searchsorted(ext, np.arange(lap), side="right")
        nxt = ext[idx]
        dist[:] = nxt - np.arange(lap)
        tx[:] = self.line_x[nxt % lap]
        self.dist_to_turn = dist
        self.turn_x = tx


def segment_runs(spec: CourseSpec) -> List[Tuple[int, int]]:
    """Run-length encoding of the segment list as (angle, repeat) pairs."""
    runs: List[Tuple[int, int]] = []
    for seg in spec.segments:
        if runs and runs[-1][0] == seg.angle:
            runs[-1] = (seg.angle, runs[-1][1] + 1)
        else:
            runs.append((seg.angle, 1))
    return runs


def diagonal_fraction(spec: CourseSpec) -> float:
    diag = sum(1 for s in spec.segments if s.angle in DIAGONAL_ANGLES)
    return diag / len(spec.segments)


def turn_density(spec: CourseSpec) -> float:
    """Angle changes per segment over one lap's worth of segments."""
    runs = segment_runs(spec)
    return len(runs) / len(spec.segments)


def generate_course(kind: str, rng) -> CourseSpec:
    """Synthesize a closed-loop course of the requested difficulty.

    The simple course favors long vertical and 30/150 runs with sparse
    turns; the difficult course alternates rapidly and is rich in
    45/135 segments.  The horizontal drift is cancelled before the
    trailing vertical padding, so the truncated lap always closes.
    """
    if kind not in FRAMES_PER_LAP:
        raise ValueError(f"unknown course kind {kind!r}")
    lap = FRAMES_PER_LAP[kind]
    if kind == KIND_SIMPLE:
        angles, run_lo, run_hi, max_drift = (90, 30, 150), 2, 5, 3
    else:
        angles, run_lo, run_hi, max_drift = (90, 45, 135, 30, 150), 1, 2, 4

    segments: List[Segment] = []
    drift = 0  # net dx per scroll px, summed over segments
    budget = lap - 6 * SEGMENT_HEIGHT  # leave room for closure + padding
    prev_angle = None
    while sum(s.height for s in segments) < budget:
        choices = [a for a in angles if a != prev_angle]
        # Steer the drift back toward zero when it wanders.
        signed = drift * SEGMENT_HEIGHT
        if signed > max_drift * SEGMENT_HEIGHT:
            choices = [a for a in choices if ANGLE_DX[a] <= 0] or [135]
        elif signed < -max_drift * SEGMENT_HEIGHT:
            choices = [a for a in choices if ANGLE_DX[a] >= 0] or [45]
        angle = int(choices[rng.integers(len(choices))])
        repeat = int(rng.integers(run_lo, run_hi + 1))
        for _ in range(repeat):
            if sum(s.height for s in segments) >= budget:
                break
            segments.append(Segment(angle))
            drift += ANGLE_DX[angle]
        prev_angle = angle

    # Cancel the remaining drift with 30/150 (pairs of units) then 45/135.
    while abs(drift) >= 2:
        segments.append(Segment(150 if drift > 0 else 30))
        drift += -2 if drift > 0 else 2
    if drift != 0:
        segments.append(Segment(135 if drift > 0 else 45))
        drift = 0
    while sum(s.height for s in segments) < lap:
        segments.append(Segment(90))
    return CourseSpec(kind=kind, segments=segments, frames_per_lap=lap)


def save_course(spec: CourseSpec, path) -> None:
    lines = ["# course", f"kind {spec.kind}", f"frames_per_lap {spec.frames_per_lap}"]
    lines += [f"{angle} {repeat}" for angle, repeat in segment_runs(spec)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_course(path) -> CourseSpec:
    kind = None
    lap = None
    segments: List[Segment] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "kind":
            kind = rest.strip()
        elif head == "frames_per_lap":
            lap = int(rest)
        else:
            angle, repeat = int(head), int(rest)
            segments.extend(Segment(angle) for _ in range(repeat))
    if kind is None or lap is None or not segments:
        raise ValueError(f"malformed course file {path}")
    return CourseSpec(kind=kind, segments=segments, frames_per_lap=lap)


def bundled_course_path(kind: str) -> Path:
    return DATA_DIR / f"{kind}.course"


def load_bundled_course(kind: str) -> CourseSpec:
    return load_course(bundled_course_path(kind))
