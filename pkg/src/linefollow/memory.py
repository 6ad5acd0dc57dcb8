"""Declarative memory kernel: chunks, activation, noisy retrieval.

A chunk's activation is ``r * (B + S) + eps`` where

* ``B`` is the base-level term ``ln(num / (1 - d)) - d*ln(L) + beta``,
  with ``num`` the presentation count and ``L`` the chunk's age,
* ``S`` is spreading activation received from the current goal-buffer
  context,
* ``r`` is the arousal coefficient (1.0 in the neutral state), and
* ``eps`` is logistic noise of scale ``noise_s``; the noise is NOT
  scaled by ``r``, which is what lets a large ``r`` widen activation
  gaps relative to the fixed noise.

Retrieval returns the argmax candidate when its activation clears the
retrieval threshold, with latency ``F * exp(-A)``; otherwise a failure
outcome with latency ``F * exp(-tau)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

MAIN_GOAL = "main-goal"
SUB_GOAL = "sub-goal"

SPREADING_INDICATOR = "indicator"
SPREADING_LITERAL = "literal"


@dataclass
class ActivationParams:
    """Subsymbolic parameters of the memory kernel."""

    decay: float = 0.5
    beta: float = 4.0
    noise_s: float = 0.13
    mas: float = 16.84
    retrieval_threshold: float = 0.0
    latency_factor: float = 1.0
    # "indicator": an association contributes mas - ln(fan);
    # "literal": an association contributes strength 1.0 as written.
    spreading_mode: str = SPREADING_INDICATOR

    def __post_init__(self) -> None:
        if self.noise_s <= 0:
            raise ValueError("noise_s must be positive")
        if self.latency_factor <= 0:
            raise ValueError("latency_factor must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")
        if self.spreading_mode not in (SPREADING_INDICATOR, SPREADING_LITERAL):
            raise ValueError(f"unknown spreading_mode {self.spreading_mode!r}")


@dataclass
class Chunk:
    """A declarative item with the presentation history driving its base level."""

    id: str
    kind: str
    num: int
    first_presentation: float
    slots: Dict[str, object] = field(default_factory=dict)

    def age(self, now: float) -> float:
        return now - self.first_presentation


@dataclass
class RetrievalOutcome:
    chunk: Optional[Chunk]
    activation: float
    latency: float
    activations: Dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.chunk is None


class AssociationTable:
    """Source slot -> target chunk associations with fan bookkeeping."""

    def __init__(self) -> None:
        self._targets: Dict[str, set] = {}

    def associate(self, source: str, target_id: str) -> None:
        self._targets.setdefault(source, set()).add(target_id)

    def fan(self, source: str) -> int:
        return len(self._targets.get(source, ()))

    def strength(self, source: str, target_id: str, params: ActivationParams) -> float:
        targets = self._targets.get(source)
        if not targets or target_id not in targets:
            return 0.0
        if params.spreading_mode == SPREADING_LITERAL:
            return 1.0
        return max(params.mas - math.log(self.fan(source)), 0.0)


def base_level(num: float, L: float, d: float, beta: float) -> float:
    """Base-level activation from presentation count and chunk age."""
    if num < 1:
        raise ValueError(f"presentation count must be >= 1, got {num}")
    if L <= 0:
        raise ValueError(f"chunk age must be positive, got {L}")
    return math.log(num / (1.0 - d)) - d * math.log(L) + beta


def filled_sources(context: Dict[str, object]) -> List[str]:
    """Context slots that act as spreading sources.

    A slot participates when it holds a value; the probe-seen flag
    participates only while set.
    """
    return [name for name, value in context.items()
            if value is not None and value is not False]


def spreading(context: Dict[str, object], target: Chunk,
              assoc: AssociationTable, params: ActivationParams) -> float:
    """Spreading activation from the goal-buffer context to a chunk.

    Each filled source slot carries weight 1/n; unassociated sources
    contribute zero strength.
    """
    sources = filled_sources(context)
    if not sources:
        return 0.0
    w = 1.0 / len(sources)
    total = 0.0
    for source in sources:
        total += w * assoc.strength(source, target.id, params)
    return total


def sample_noise(s: float, rng, size=None):
    """Logistic noise, location 0 and scale s."""
    if s <= 0:
        raise ValueError("noise scale must be positive")
    return rng.logistic(0.0, s, size)


def total_activation(chunk: Chunk, context: Dict[str, object],
                     assoc: AssociationTable, r: float, now: float,
                     params: ActivationParams, rng,
                     noise: bool = True) -> float:
    """r * (B + S) + eps for one chunk; eps is a fresh draw per call."""
    if r < 0:
        raise ValueError("arousal coefficient must be non-negative")
    b = base_level(chunk.num, chunk.age(now), params.decay, params.beta)
    s = spreading(context, chunk, assoc, params)
    eps = sample_noise(params.noise_s, rng) if noise else 0.0
    return r * (b + s) + eps


def retrieve(chunks: Iterable[Chunk], kind: Optional[str],
             context: Dict[str, object], assoc: AssociationTable,
             r: float, now: float, params: ActivationParams, rng,
             noise: bool = True) -> RetrievalOutcome:
    """Noisy argmax retrieval over chunks matching the kind filter."""
    candidates = [c for c in chunks if kind is None or c.kind == kind]
    if not candidates:
        raise LookupError(f"no chunk matches kind {kind!r}")
    best = None
    best_a = -math.inf
    activations: Dict[str, float] = {}
    for chunk in candidates:
        a = total_activation(chunk, context, assoc, r, now, params, rng, noise)
        activations[chunk.id] = a
        if a > best_a:
            best, best_a = chunk, a
    if best_a < params.retrieval_threshold:
        latency = params.latency_factor * math.exp(-params.retrieval_threshold)
        return RetrievalOutcome(None, best_a, latency, activations)
    latency = params.latency_factor * math.exp(-best_a)
    return RetrievalOutcome(best, best_a, latency, activations)


def record_presentation(chunk: Chunk, now: float) -> Chunk:
    """Register one more presentation of the chunk."""
    chunk.num += 1
    return chunk


def make_goal_chunks(main_num: int, main_L: float,
                     sub_num: int, sub_L: float) -> List[Chunk]:
    """The two goal chunks, aged as if introduced during instruction."""
    return [
        Chunk(id="main", kind=MAIN_GOAL, num=main_num, first_presentation=-main_L),
        Chunk(id="sub", kind=SUB_GOAL, num=sub_num, first_presentation=-sub_L),
    ]


def make_goal_associations() -> AssociationTable:
    """The probe-seen flag feeds the sub goal only."""
    assoc = AssociationTable()
    assoc.associate("flag", "sub")
    return assoc
