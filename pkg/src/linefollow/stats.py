"""Aggregation, regression, and model-human fit metrics."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy import stats as sps

INDICATOR_OFFLINE = "offline_ratio"
INDICATOR_RT_MEAN = "rt_mean"
INDICATOR_RT_STD = "rt_std"

CONDITION_LAD = "lad"
CONDITION_HAD = "had"

N_ROUNDS_DEFAULT = 30


@dataclass
class RegressionResult:
    coef: np.ndarray        # intercept, linear, quadratic
    se: np.ndarray
    t: np.ndarray
    p: np.ndarray
    n: int

    def as_rows(self):
        names = ("intercept", "x", "x2")
        for i, name in enumerate(names):
            yield name, self.coef[i], self.se[i], self.t[i], self.p[i]


@dataclass
class FitReport:
    r: Optional[float]
    rmse: float
    regression: Optional[RegressionResult] = None
    missing: int = 0


def quad_regression(series, x=None) -> RegressionResult:
    """OLS fit of y on (1, x, x^2) with coefficient SEs, t, and p.

    NaN points are dropped. x defaults to 1..n over the full series.
    """
    y = np.asarray(series, dtype=float)
    if x is None:
        x = np.arange(1, len(y) + 1, dtype=float)
    else:
        x = np.asarray(x, dtype=float)
    keep = ~np.isnan(y)
    y, x = y[keep], x[keep]
    n = len(y)
    if n < 4:
        raise ValueError(f"need at least 4 points, got {n}")
    design = np.column_stack([np.ones(n), x, x * x])
    gram = design.T @ design
    if np.linalg.matrix_rank(gram) < 3:
        raise np.linalg.LinAlgError("singular design matrix")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    dof = n - 3
    sigma2 = float(resid @ resid) / dof
    cov = sigma2 * np.linalg.inv(gram)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, coef / se, 0.0)
    p = 2.0 * sps.t.sf(np.abs(t), dof)
    return RegressionResult(coef=coef, se=se, t=t, p=p, n=n)


def human_reference_path():
    return resources.files("linefollow").joinpath("data/human_reference.csv")


def load_human_reference(path=None) -> Dict[Tuple[str, str], Tuple[float, float, float]]:
    """Quadratic coefficients per (indicator, condition) from the fixture."""
    if path is None:
        path = human_reference_path()
    table = {}
    with open(str(path), newline="") as fh:
        for row in csv.DictReader(filter(lambda s: not s.startswith("#"), fh)):
            key = (row["indicator"], row["condition"])
            table[key] = (float(row["intercept"]), float(row["x"]),
                          float(row["x2"]))
    return table


def human_curve(indicator: str, condition: str, n_rounds: int = N_ROUNDS_DEFAULT,
                reference=None) -> np.ndarray:
    """The fixture polynomial evaluated at rounds 1..n."""
    if reference is None:
        reference = load_human_reference()
    key = (indicator, condition)
    if key not in reference:
        raise KeyError(f"no reference curve for {key}")
    c0, c1, c2 = reference[key]
    x = np.arange(1, n_rounds + 1, dtype=float)
    return c0 + c1 * x + c2 * x * x


def fit_metrics(model_series, human_series, missing: int = 0) -> FitReport:
    """Pearson R and RMSE over paired points; NaN pairs are dropped."""
    a = np.asarray(model_series, dtype=float)
    b = np.asarray(human_series, dtype=float)
    if a.shape != b.shape:
        raise ValueError("series lengths differ")
    keep = ~(np.isnan(a) | np.isnan(b))
    a, b = a[keep], b[keep]
    if len(a) < 2:
        raise ValueError("need at least 2 paired points")
    rmse = float(np.sqrt(np.mean((a - b) ** 2)))
    if np.std(a) == 0 or np.std(b) == 0:
        r = None
    else:
        r = float(sps.pearsonr(a, b).statistic)
    return FitReport(r=r, rmse=rmse, missing=missing)


def paired_t(series_a, series_b, alternative: str = "two-sided") -> Tuple[float, float]:
    """Paired-sample t over matched points; NaN pairs are dropped."""
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("series lengths differ")
    keep = ~(np.isnan(a) | np.isnan(b))
    a, b = a[keep], b[keep]
    if len(a) < 2:
        raise ValueError("need at least 2 paired points")
    diff = a - b
    if np.std(diff) < 1e-12:
        if abs(diff.mean()) < 1e-12:
            return 0.0, 1.0
        raise ValueError("zero variance in paired differences")
    res = sps.ttest_rel(a, b, alternative=alternative)
    return float(res.statistic), float(res.pvalue)


def aggregate(series_matrix) -> Tuple[np.ndarray, np.ndarray]:
    """Across-run mean and STD per round, ignoring NaNs.

    Expects one row per run. Requires at least two runs so the STD is
    defined.
    """
    m = np.asarray(series_matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] < 2:
        raise ValueError("need a 2-D matrix with at least 2 runs")
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        mean = np.nanmean(m, axis=0)
        std = np.nanstd(m, axis=0, ddof=1)
    return mean, std
