"""Relative importance of predictors from coefficients and standard deviations alone.

The share of explained variance attributed to predictor i is estimated as
|a_i sd_i|^p normalized over predictors. p = 1 treats predictors as perfectly
correlated, p = 2 as independent; the pair brackets the truth for
nonnegatively correlated predictors, and intermediate p interpolates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DegenerateError, InputError
from .models import PredictorSummary, RegressionModel, sd_bounds

P_LOWER = 1.0
P_UPPER = 2.0
DEFAULT_P = 1.3
_P_GRID_STEP = 0.01


def _check_p(p: float) -> None:
    if not P_LOWER <= p <= P_UPPER:
        raise InputError(f"p must lie in [{P_LOWER:g}, {P_UPPER:g}], got {p}")


@dataclass(frozen=True)
class ImportanceRow:
    """Share band for one predictor; sign < 0 marks an anti-correlated term."""

    name: str
    lower: float
    point: float
    upper: float
    sign: int


@dataclass(frozen=True)
class ImportanceReport:
    rows: tuple[ImportanceRow, ...]
    p_point: float


@dataclass(frozen=True)
class CovarianceMatrix:
    """Predictor covariance, when a study bothers to publish one."""

    names: tuple[str, ...]
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        names = tuple(str(n) for n in self.names)
        object.__setattr__(self, "names", names)
        entries = tuple(tuple(float(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        k = len(names)
        if len(set(names)) != k:
            raise InputError("duplicate names in covariance matrix")
        if len(entries) != k or any(len(row) != k for row in entries):
            raise InputError(f"covariance matrix must be {k}x{k}")
        for i in range(k):
            if entries[i][i] < 0:
                raise InputError(f"negative variance for {names[i]!r}")
            for j in range(i):
                if abs(entries[i][j] - entries[j][i]) > 1e-9:
                    raise InputError(
                        f"covariance matrix is not symmetric at ({names[i]}, {names[j]})"
                    )


@dataclass(frozen=True)
class CompositeFold:
    """Weighted z-score statistics for a composite replacing several predictors."""

    folded_name: str
    source_names: tuple[str, ...]
    mu_star: float
    sigma_star: float


def weight_shares(sds: Sequence[tuple[str, float]], p: float) -> dict[str, float]:
    """Normalized p-th power shares of nonnegative weights; sums to 1."""
    _check_p(p)
    names = [str(n) for n, _ in sds]
    if len(set(names)) != len(names):
        raise InputError("duplicate names in weight list")
    values = []
    for name, sd in sds:
        if sd < 0:
            raise InputError(f"negative weight for {name!r}")
        values.append(float(sd))
    powered = [v**p for v in values]
    total = sum(powered)
    if total == 0.0:
        raise DegenerateError("all weights are zero; shares are undefined")
    return {name: w / total for name, w in zip(names, powered)}


def ri(model: RegressionModel, p: float) -> dict[str, float]:
    """Relative-importance shares at exponent p.

    Negative coefficients enter through |a_i sd_i|; their sign is carried
    separately by ri_bounds so reports can mark anti-correlated predictors.
    """
    return weight_shares([(q.name, q.weight) for q in model.predictors], p)


def ri_bounds(model: RegressionModel, p_point: float = DEFAULT_P) -> ImportanceReport:
    """Per-predictor share band from the p = 1 and p = 2 endpoints, point at p_point."""
    _check_p(p_point)
    at_lower = ri(model, P_LOWER)
    at_upper = ri(model, P_UPPER)
    at_point = ri(model, p_point)
    rows = tuple(
        ImportanceRow(
            name=q.name,
            lower=min(at_lower[q.name], at_upper[q.name]),
            point=at_point[q.name],
            upper=max(at_lower[q.name], at_upper[q.name]),
            sign=1 if q.coefficient > 0 else -1 if q.coefficient < 0 else 0,
        )
        for q in model.predictors
    )
    return ImportanceReport(rows=rows, p_point=p_point)


def calibrate_p(model: RegressionModel) -> float:
    """Pick the p in [1, 2] whose implied outcome sd best matches sqrt(R2) * reported sd.

    The implied sd at p interpolates linearly between the perfectly
    correlated bound sd_l1 (p = 1) and the independence bound sd_l2 (p = 2).
    Grid search with step 0.01; ties break toward the smaller p.
    """
    if model.reported_r2 is None or model.reported_outcome_sd is None:
        raise InputError("calibrate_p needs reported_r2 and reported_outcome_sd")
    sd_l1, sd_l2 = sd_bounds(model)
    target = math.sqrt(model.reported_r2) * model.reported_outcome_sd
    steps = round((P_UPPER - P_LOWER) / _P_GRID_STEP)
    best_p = P_LOWER
    best_err = math.inf
    for i in range(steps + 1):
        p = round(P_LOWER + i * _P_GRID_STEP, 2)
        implied = (P_UPPER - p) * sd_l1 + (p - P_LOWER) * sd_l2
        err = abs(implied - target)
        if err < best_err:
            best_p = p
            best_err = err
    return best_p


def explained_variance(model: RegressionModel, cov: CovarianceMatrix) -> float:
    """Exact variance of the fitted linear combination under a full covariance.

    This is the quantity the importance shares only estimate; it needs the
    covariance the original study never printed.
    """
    if sorted(cov.names) != sorted(model.names):
        raise InputError(
            f"covariance names {sorted(cov.names)} do not match model predictors "
            f"{sorted(model.names)}"
        )
    coefficient = {q.name: q.coefficient for q in model.predictors}
    a = np.array([coefficient[n] for n in cov.names], dtype=float)
    matrix = np.array(cov.entries, dtype=float)
    return float(a @ matrix @ a)


def composite_fold(model: RegressionModel, sources: Sequence[str], name: str) -> CompositeFold:
    """Weighted z-score statistics for folding several predictors into one.

    sigma* adds source sds in quadrature; mu* is the sd-weighted mean over
    sigma*.
    """
    sources = [str(s) for s in sources]
    if not sources:
        raise InputError("no source predictors given")
    if len(set(sources)) != len(sources):
        raise InputError("duplicate source names")
    picked = [model.predictor(s) for s in sources]
    sigma_star = math.sqrt(sum(q.sd**2 for q in picked))
    if sigma_star == 0.0:
        raise DegenerateError("all source sds are zero; the composite is degenerate")
    mu_star = sum(q.sd * q.mean for q in picked) / sigma_star
    return CompositeFold(
        folded_name=str(name),
        source_names=tuple(sources),
        mu_star=mu_star,
        sigma_star=sigma_star,
    )


def zfold(
    model: RegressionModel,
    sources: Sequence[str],
    name: str,
    coefficient: float,
) -> RegressionModel:
    """Replace the source predictors by a single composite in the first source's slot.

    The composite gets the supplied coefficient and the weighted z-score
    mean and sd; the constant and reported statistics pass through unchanged.
    """
    fold = composite_fold(model, sources, name)
    remaining = set(model.names) - set(fold.source_names)
    if name in remaining:
        raise InputError(f"composite name {name!r} collides with a remaining predictor")
    folded = PredictorSummary(
        name=fold.folded_name,
        coefficient=float(coefficient),
        mean=fold.mu_star,
        sd=fold.sigma_star,
    )
    predictors: list[PredictorSummary] = []
    inserted = False
    for q in model.predictors:
        if q.name in fold.source_names:
            if not inserted:
                predictors.append(folded)
                inserted = True
            continue
        predictors.append(q)
    return RegressionModel(
        label=model.label,
        constant=model.constant,
        predictors=tuple(predictors),
        reported_outcome_mean=model.reported_outcome_mean,
        reported_outcome_sd=model.reported_outcome_sd,
        reported_r2=model.reported_r2,
        sample_n=model.sample_n,
    )
