"""Batch execution and report emission.

``simulate`` writes rounds.csv, probes.csv, arousal.csv, and meta.json
into an output directory; ``analyze`` reads those back, aggregates,
regresses, and scores the fit against the bundled human reference,
writing fit.csv; the plotting layer renders figures from the same
files.  Float formatting is fixed so identical seeds give
byte-identical CSVs.
"""

from __future__ import annotations

import dataclasses
import json
import traceback
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import stats as stats_mod
from .config import RunConfig, config_to_dict
from .env import STATUS_ANSWERED, STATUS_MISSING, STATUS_TIMEOUT, TIMEOUT_RT_S
from .simulation import RunResult, run_single

ROUNDS_CSV = "rounds.csv"
PROBES_CSV = "probes.csv"
AROUSAL_CSV = "arousal.csv"
FIT_CSV = "fit.csv"
META_JSON = "meta.json"

_HUMAN_CONDITION = {"mlad": stats_mod.CONDITION_LAD,
                    "mhad": stats_mod.CONDITION_HAD}


@dataclass
class BatchResult:
    results: List[RunResult]
    failures: List[dict]
    base_config: RunConfig


def run_batch(base_config: RunConfig, n_runs: int,
              base_seed: Optional[int] = None) -> BatchResult:
    """n independent runs with consecutive seeds; failures are logged."""
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    if base_seed is None:
        base_seed = base_config.seed
    results: List[RunResult] = []
    failures: List[dict] = []
    for i in range(n_runs):
        cfg = replace(base_config, seed=base_seed + i, run_id=i)
        try:
            results.append(run_single(cfg))
        except Exception as exc:  # per-run isolation by contract
            failures.append({"run_id": i, "seed": base_seed + i,
                             "error": repr(exc),
                             "traceback": traceback.format_exc()})
    return BatchResult(results=results, failures=failures,
                       base_config=base_config)


def emit_reports(batch: BatchResult, out_dir) -> Dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "rounds": out / ROUNDS_CSV,
        "probes": out / PROBES_CSV,
        "arousal": out / AROUSAL_CSV,
        "meta": out / META_JSON,
    }
    with open(paths["rounds"], "w", newline="") as fh:
        fh.write("run_id,round,offline_ratio\n")
        for res in batch.results:
            for rnd, v in enumerate(res.offline_ratio, start=1):
                fh.write(f"{res.run_id},{rnd},{v:.6f}\n")
    with open(paths["probes"], "w", newline="") as fh:
        fh.write("run_id,onset_s,rt_s,status\n")
        for res in batch.results:
            for rec in res.probes:
                if rec.status == STATUS_ANSWERED:
                    rt = f"{rec.rt:.6f}"
                elif rec.status == STATUS_TIMEOUT:
                    rt = f"{TIMEOUT_RT_S:.6f}"
                else:
                    rt = ""
                fh.write(f"{res.run_id},{rec.onset:.6f},{rt},{rec.status}\n")
    with open(paths["arousal"], "w", newline="") as fh:
        fh.write("run_id,round,mean_r\n")
        for res in batch.results:
            for rnd, v in enumerate(res.mean_r_by_round, start=1):
                cell = "" if np.isnan(v) else f"{v:.6f}"
                fh.write(f"{res.run_id},{rnd},{cell}\n")
    meta = {
        "condition": batch.base_config.condition,
        "param_set": batch.base_config.param_set,
        "n_runs": len(batch.results),
        "base_seed": batch.base_config.seed,
        "round_s": batch.base_config.env.round_s,
        "n_rounds": batch.base_config.n_rounds,
        "degenerate_runs": [r.run_id for r in batch.results if r.degenerate],
        "failures": batch.failures,
        "config": config_to_dict(batch.base_config),
    }
    with open(paths["meta"], "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths


@dataclass
class BatchTables:
    """CSV contents read back for analysis."""

    offline: np.ndarray          # runs x rounds
    rt: np.ndarray               # runs x rounds (NaN where no usable probe)
    mean_r: np.ndarray           # runs x rounds
    probe_counts: Dict[str, int]
    meta: dict


def read_batch(in_dir) -> BatchTables:
    src = Path(in_dir)
    meta = json.loads((src / META_JSON).read_text())
    n_rounds = meta["n_rounds"]
    round_s = meta["round_s"]

    def _read_matrix(path, value_col):
        rows: Dict[int, np.ndarray] = {}
        with open(path) as fh:
            header = fh.readline().strip().split(",")
            idx = header.index(value_col)
            for line in fh:
                parts = line.rstrip("\n").split(",")
                run = int(parts[0])
                rnd = int(parts[1])
                if run not in rows:
                    rows[run] = np.full(n_rounds, np.nan)
                cell = parts[idx]
                rows[run][rnd - 1] = float(cell) if cell else np.nan
        return np.vstack([rows[k] for k in sorted(rows)])

    offline = _read_matrix(src / ROUNDS_CSV, "offline_ratio")
    mean_r = _read_matrix(src / AROUSAL_CSV, "mean_r")

    n_runs = offline.shape[0]
    sums = np.zeros((n_runs, n_rounds))
    counts = np.zeros((n_runs, n_rounds))
    probe_counts = {STATUS_ANSWERED: 0, STATUS_TIMEOUT: 0, STATUS_MISSING: 0}
    with open(src / PROBES_CSV) as fh:
        fh.readline()
        for line in fh:
            run_s, onset_s, rt_s, status = line.rstrip("\n").split(",")
            probe_counts[status] += 1
            if status == STATUS_MISSING:
                continue
            run = int(run_s)
            rnd = min(int(float(onset_s) // round_s), n_rounds - 1)
            sums[run, rnd] += float(rt_s)
            counts[run, rnd] += 1
    with np.errstate(invalid="ignore"):
        rt = sums / counts
    rt[counts == 0] = np.nan
    return BatchTables(offline=offline, rt=rt, mean_r=mean_r,
                       probe_counts=probe_counts, meta=meta)


@dataclass
class AnalysisResult:
    offline_mean: np.ndarray
    offline_std: np.ndarray
    rt_mean: np.ndarray
    rt_std: np.ndarray
    regressions: Dict[str, stats_mod.RegressionResult]
    fits: Dict[str, stats_mod.FitReport]
    probe_counts: Dict[str, int]
    meta: dict


def analyze_batch(tables: BatchTables) -> AnalysisResult:
    """Aggregate a batch and score it against the human reference."""
    offline_mean, offline_std = stats_mod.aggregate(tables.offline)
    rt_mean, rt_std = stats_mod.aggregate(tables.rt)
    n_rounds = tables.meta["n_rounds"]
    human_cond = _HUMAN_CONDITION[tables.meta["condition"]]
    reference = stats_mod.load_human_reference()

    series = {
        stats_mod.INDICATOR_OFFLINE: offline_mean,
        stats_mod.INDICATOR_RT_MEAN: rt_mean,
        stats_mod.INDICATOR_RT_STD: rt_std,
    }
    regressions = {}
    fits = {}
    missing = tables.probe_counts[STATUS_MISSING]
    for indicator, model_series in series.items():
        regressions[indicator] = stats_mod.quad_regression(model_series)
        human = stats_mod.human_curve(indicator, human_cond, n_rounds,
                                      reference)
        fit = stats_mod.fit_metrics(model_series, human, missing=missing)
        fit.regression = regressions[indicator]
        fits[indicator] = fit
    return AnalysisResult(
        offline_mean=offline_mean, offline_std=offline_std,
        rt_mean=rt_mean, rt_std=rt_std, regressions=regressions,
        fits=fits, probe_counts=tables.probe_counts, meta=tables.meta)


def write_fit_csv(analysis: AnalysisResult, out_dir) -> Path:
    path = Path(out_dir) / FIT_CSV
    with open(path, "w", newline="") as fh:
        fh.write("indicator,r,rmse,missing,"
                 "coef_intercept,coef_x,coef_x2,"
                 "se_intercept,se_x,se_x2,"
                 "t_intercept,t_x,t_x2,"
                 "p_intercept,p_x,p_x2\n")
        for indicator, fit in analysis.fits.items():
            reg = fit.regression
            r = "" if fit.r is None else f"{fit.r:.6f}"
            cells = [indicator, r, f"{fit.rmse:.6f}", str(fit.missing)]
            for arr in (reg.coef, reg.se, reg.t, reg.p):
                cells.extend(f"{v:.6f}" for v in arr)
            fh.write(",".join(cells) + "\n")
    return path
