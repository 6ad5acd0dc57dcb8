"""Seeded simulator of an arousal-modulated goal-switching agent.

The package couples a small declarative-memory kernel (base-level
learning, spreading activation, logistic retrieval noise, an arousal
coefficient that scales activation) with a scrolling line-following
task, a threshold-based motor controller tuned by annealing, and a
batch harness that aggregates per-round statistics and fits them
against reference regression curves.
"""

__version__ = "0.1.0"
