"""Static figures for a batch: per-round series against the human curves."""

from __future__ import annotations

from pathlib import Path
from typing import Dict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import stats as stats_mod
from .env import STATUS_ANSWERED, STATUS_MISSING, STATUS_TIMEOUT
from .harness import AnalysisResult

_LABELS = {
    stats_mod.INDICATOR_OFFLINE: ("Offline ratio", "offline_by_round.png"),
    stats_mod.INDICATOR_RT_MEAN: ("Probe RT mean (s)", "rt_by_round.png"),
    stats_mod.INDICATOR_RT_STD: ("Probe RT STD (s)", "rt_std_by_round.png"),
}


def _series_triplet(analysis: AnalysisResult):
    return {
        stats_mod.INDICATOR_OFFLINE: (analysis.offline_mean,
                                      analysis.offline_std),
        stats_mod.INDICATOR_RT_MEAN: (analysis.rt_mean, analysis.rt_std),
        stats_mod.INDICATOR_RT_STD: (analysis.rt_std, None),
    }


def render_report(analysis: AnalysisResult, out_dir) -> Dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = analysis.meta
    n_rounds = meta["n_rounds"]
    x = np.arange(1, n_rounds + 1)
    human_cond = ("lad" if meta["condition"] == "mlad" else "had")
    reference = stats_mod.load_human_reference()
    title = f"{meta['condition']} / parameter set {meta['param_set']}"

    paths: Dict[str, Path] = {}
    for indicator, (mean, std) in _series_triplet(analysis).items():
        label, fname = _LABELS[indicator]
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot(x, mean, "o-", color="tab:blue", label="model mean",
                markersize=3)
        if std is not None and indicator != stats_mod.INDICATOR_OFFLINE:
            ax.fill_between(x, mean - std, mean + std, alpha=0.2,
                            color="tab:blue", label="model +/- STD")
        human = stats_mod.human_curve(indicator, human_cond, n_rounds,
                                      reference)
        ax.plot(x, human, "--", color="tab:red", label="human regression")
        fit = analysis.fits[indicator]
        r_txt = "n/a" if fit.r is None else f"{fit.r:.2f}"
        ax.set_title(f"{label} - {title} (R={r_txt}, RMSE={fit.rmse:.2f})")
        ax.set_xlabel("round")
        ax.set_ylabel(label)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = out / fname
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths[indicator] = path

    fig, ax = plt.subplots(figsize=(5, 4))
    order = (STATUS_ANSWERED, STATUS_TIMEOUT, STATUS_MISSING)
    values = [analysis.probe_counts.get(k, 0) for k in order]
    ax.bar(order, values, color=["tab:green", "tab:orange", "tab:red"])
    for i, v in enumerate(values):
        ax.text(i, v, str(v), ha="center", va="bottom", fontsize=9)
    ax.set_title(f"Probe outcomes - {title}")
    ax.set_ylabel("count")
    fig.tight_layout()
    path = out / "probe_outcomes.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    paths["probe_outcomes"] = path
    return paths
