"""Regression-model types, prediction, consistency checks, small OLS, and data validation.

Everything here works from published summary statistics or small observation
tables; none of it needs the original study data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError, SingularDesignError

DEFAULT_MEAN_TOLERANCE = 0.05
DEFAULT_SD_SLACK = 0.20
CONDITION_LIMIT = 1e12
DEFAULT_IQR_MULTIPLIER = 3.0


@dataclass(frozen=True)
class PredictorSummary:
    """Published per-predictor summary: coefficient, mean, and standard deviation."""

    name: str
    coefficient: float
    mean: float
    sd: float

    def __post_init__(self) -> None:
        if not self.name:
            raise InputError("predictor name must be nonempty")
        if self.sd < 0:
            raise InputError(f"predictor {self.name!r} has negative sd {self.sd}")

    @property
    def weight(self) -> float:
        """Absolute contribution |coefficient * sd| to the outcome spread."""
        return abs(self.coefficient * self.sd)


@dataclass(frozen=True)
class RegressionModel:
    """A published linear model plus whatever outcome statistics were reported."""

    label: str
    constant: float
    predictors: tuple[PredictorSummary, ...]
    reported_outcome_mean: float | None = None
    reported_outcome_sd: float | None = None
    reported_r2: float | None = None
    sample_n: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "predictors", tuple(self.predictors))
        if not self.predictors:
            raise InputError("model needs at least one predictor")
        names = [p.name for p in self.predictors]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise InputError(f"duplicate predictor names: {duplicates}")
        if self.reported_outcome_sd is not None and self.reported_outcome_sd < 0:
            raise InputError("reported outcome sd must be nonnegative")
        if self.reported_r2 is not None and not 0.0 <= self.reported_r2 <= 1.0:
            raise InputError("reported r2 must lie in [0, 1]")
        if self.sample_n is not None and self.sample_n <= len(self.predictors) + 1:
            raise InputError("sample_n must exceed predictor count + 1")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.predictors)

    def predictor(self, name: str) -> PredictorSummary:
        for p in self.predictors:
            if p.name == name:
                return p
        raise InputError(f"unknown predictor {name!r} in model {self.label!r}")

    def means(self) -> dict[str, float]:
        """Predictor means, the natural evaluation point for the model."""
        return {p.name: p.mean for p in self.predictors}


@dataclass(frozen=True)
class ConsistencyReport:
    """Implied outcome statistics next to the reported ones, with any flags raised."""

    predicted_mean: float
    sd_l1: float
    sd_l2: float
    reported_mean: float | None = None
    mean_abs_dev: float | None = None
    reported_sd: float | None = None
    flags: tuple[str, ...] = ()

    @property
    def clean(self) -> bool:
        return not self.flags


def predict(model: RegressionModel, values: Mapping[str, float]) -> float:
    """Evaluate the model at the given predictor values.

    The mapping must supply every predictor name exactly once; missing and
    unexpected names are reported by name.
    """
    missing = [n for n in model.names if n not in values]
    if missing:
        raise InputError(f"missing predictor values: {missing}")
    extra = sorted(set(values) - set(model.names))
    if extra:
        raise InputError(f"unexpected predictor values: {extra}")
    return model.constant + sum(p.coefficient * float(values[p.name]) for p in model.predictors)


def sd_bounds(model: RegressionModel) -> tuple[float, float]:
    """(sd_l1, sd_l2): the implied outcome spread under perfect correlation and independence.

    sd_l1 sums the |coefficient * sd| terms; sd_l2 adds them in quadrature.
    The true model spread lies between sd_l2 and sd_l1 when predictors are
    nonnegatively correlated; anticorrelation can escape the bracket.
    """
    weights = [p.weight for p in model.predictors]
    sd_l1 = float(sum(weights))
    sd_l2 = math.sqrt(sum(w * w for w in weights))
    return sd_l1, sd_l2


def consistency_check(
    model: RegressionModel,
    mean_tolerance: float = DEFAULT_MEAN_TOLERANCE,
    sd_slack: float = DEFAULT_SD_SLACK,
) -> ConsistencyReport:
    """Compare the model's implied outcome mean and spread against the reported values.

    Flags when the predicted mean misses the reported mean by more than
    mean_tolerance (relative), or the reported sd falls outside the
    [sd_l2, sd_l1] band widened by sd_slack on each side. Missing reported
    statistics produce no flags; the audit runs on whatever was published.
    """
    predicted = predict(model, model.means())
    sd_l1, sd_l2 = sd_bounds(model)
    flags: list[str] = []

    reported_mean = model.reported_outcome_mean
    mean_abs_dev = None
    if reported_mean is not None:
        mean_abs_dev = abs(predicted - reported_mean)
        scale = abs(reported_mean)
        rel = mean_abs_dev / scale if scale > 0 else math.inf if mean_abs_dev > 0 else 0.0
        if rel > mean_tolerance:
            flags.append(
                f"predicted mean {predicted:.1f} deviates from reported {reported_mean:.1f} "
                f"by {100.0 * rel:.1f}% (tolerance {100.0 * mean_tolerance:.0f}%)"
            )

    reported_sd = model.reported_outcome_sd
    if reported_sd is not None:
        lo = sd_l2 * (1.0 - sd_slack)
        hi = sd_l1 * (1.0 + sd_slack)
        if not lo <= reported_sd <= hi:
            flags.append(
                f"reported sd {reported_sd:.1f} outside the implied band "
                f"[{sd_l2:.1f}, {sd_l1:.1f}] with {100.0 * sd_slack:.0f}% slack"
            )

    return ConsistencyReport(
        predicted_mean=predicted,
        sd_l1=sd_l1,
        sd_l2=sd_l2,
        reported_mean=reported_mean,
        mean_abs_dev=mean_abs_dev,
        reported_sd=reported_sd,
        flags=tuple(flags),
    )


@dataclass(frozen=True)
class ObservationTable:
    """A small rectangular table of numeric observations."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    outcome_column: str | None = None

    def __post_init__(self) -> None:
        columns = tuple(str(c) for c in self.columns)
        object.__setattr__(self, "columns", columns)
        if len(set(columns)) != len(columns):
            raise InputError("duplicate column names in observation table")
        try:
            rows = tuple(tuple(float(v) for v in row) for row in self.rows)
        except (TypeError, ValueError) as exc:
            raise InputError(f"non-numeric value in observation table: {exc}") from exc
        object.__setattr__(self, "rows", rows)
        for i, row in enumerate(rows):
            if len(row) != len(columns):
                raise InputError(f"row {i} has {len(row)} values, expected {len(columns)}")
        if self.outcome_column is not None and self.outcome_column not in columns:
            raise InputError(f"outcome column {self.outcome_column!r} not in table")

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise InputError(f"unknown column {name!r}")
        j = self.columns.index(name)
        return np.array([row[j] for row in self.rows], dtype=float)


@dataclass(frozen=True)
class OlsFit:
    """Least-squares result: intercept-first coefficients, R^2, and residual sum of squares."""

    coefficients: tuple[float, ...]
    r2: float
    residual_sum_squares: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if not 0.0 <= self.r2 <= 1.0:
            raise InputError(f"r2 must lie in [0, 1], got {self.r2}")
        if self.residual_sum_squares < 0:
            raise InputError("residual sum of squares must be nonnegative")

    @property
    def intercept(self) -> float:
        return self.coefficients[0]

    @property
    def slopes(self) -> tuple[float, ...]:
        return self.coefficients[1:]


def fit_ols(data: ObservationTable, outcome: str | None = None) -> OlsFit:
    """Ordinary least squares with an intercept on every non-outcome column.

    Solves the normal equations by a pivoted LU factorization; the problems
    here are tiny, so no orthogonalization is needed. A condition estimate of
    the normal-equations matrix above 1e12 is treated as rank deficiency.
    """
    target = outcome if outcome is not None else data.outcome_column
    if target is None:
        raise InputError("no outcome column given")
    y = data.column(target)
    features = [c for c in data.columns if c != target]
    n = len(data)
    k = len(features) + 1
    if n < k:
        raise InputError(f"need at least {k} rows to fit {k} coefficients, got {n}")
    design = np.column_stack([np.ones(n)] + [data.column(c) for c in features])
    gram = design.T @ design
    cond = float(np.linalg.cond(gram))
    if not math.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularDesignError(
            f"design condition estimate {cond:.3g} exceeds {CONDITION_LIMIT:.0e}; "
            "columns are collinear or constant"
        )
    coefficients = np.linalg.solve(gram, design.T @ y)
    residuals = y - design @ coefficients
    rss = float(residuals @ residuals)
    tss = float(((y - y.mean()) ** 2).sum())
    if tss > 0.0:
        r2 = 1.0 - rss / tss
    else:
        r2 = 1.0 if rss <= 1e-12 else 0.0
    return OlsFit(
        coefficients=tuple(float(c) for c in coefficients),
        r2=min(1.0, max(0.0, r2)),
        residual_sum_squares=max(rss, 0.0),
    )


def cross_validate(model: RegressionModel, data: ObservationTable) -> tuple[float, float]:
    """Apply a fixed model to held-out rows; returns (mse, r2_holdout).

    r2_holdout is 1 - RSS/TSS about the holdout outcome mean and may be
    negative for a model worse than the mean predictor.
    """
    if not data.rows:
        raise InputError("empty observation table")
    target = data.outcome_column
    if target is None:
        raise InputError("observation table needs an outcome column")
    for name in model.names:
        if name not in data.columns:
            raise InputError(f"data is missing model predictor {name!r}")
    y = data.column(target)
    indices = {name: data.columns.index(name) for name in model.names}
    predictions = np.array(
        [predict(model, {name: row[j] for name, j in indices.items()}) for row in data.rows]
    )
    residuals = y - predictions
    mse = float(np.mean(residuals**2))
    rss = float(residuals @ residuals)
    tss = float(((y - y.mean()) ** 2).sum())
    if tss > 0.0:
        r2_holdout = 1.0 - rss / tss
    else:
        r2_holdout = 1.0 if rss <= 1e-12 else 0.0
    return mse, r2_holdout


@dataclass(frozen=True)
class Violation:
    """One rule violation: which cell broke which rule."""

    row: int
    column: str
    value: float
    rule: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def clean(self) -> bool:
        return not self.violations


def validate_observations(
    data: ObservationTable,
    rules: Mapping[str, Sequence[float | None]],
) -> ValidationReport:
    """Flag values outside explicit bounds or far outside the column's quartile spread.

    rules maps a column name to (min, max) or (min, max, iqr_multiplier);
    None disables a bound. Every ruled column also gets the quartile screen:
    values outside median +- multiplier * IQR are flagged (default 3.0).
    """
    violations: list[Violation] = []
    for name, rule in rules.items():
        if name not in data.columns:
            raise InputError(f"rule references unknown column {name!r}")
        if len(rule) not in (2, 3):
            raise InputError(f"rule for {name!r} must be (min, max) or (min, max, iqr_multiplier)")
        lo = rule[0]
        hi = rule[1]
        mult = rule[2] if len(rule) == 3 and rule[2] is not None else DEFAULT_IQR_MULTIPLIER
        column = data.column(name)
        median = float(np.median(column))
        q1, q3 = (float(q) for q in np.percentile(column, [25.0, 75.0]))
        band_lo = median - mult * (q3 - q1)
        band_hi = median + mult * (q3 - q1)
        for i, raw in enumerate(column):
            value = float(raw)
            if lo is not None and value < lo:
                violations.append(Violation(i, name, value, f"min {lo:g}"))
            if hi is not None and value > hi:
                violations.append(Violation(i, name, value, f"max {hi:g}"))
            if value < band_lo or value > band_hi:
                violations.append(Violation(i, name, value, f"iqr {mult:g}"))
    return ValidationReport(tuple(violations))
