"""R-squared significance under the null, and the quartet demonstration of its limits."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalCheckError
from .models import ObservationTable, OlsFit, fit_ols
from .special import regularized_incomplete_beta

ANSCOMBE_AGREEMENT = 0.01


@dataclass(frozen=True)
class NullSpec:
    """Observed R^2 with the sample size and coefficient count behind it.

    k counts the constant term, so a three-predictor model has k = 4.
    """

    n: int
    k: int
    r2: float

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InputError("k must be >= 2 (a constant plus at least one predictor)")
        if self.n <= self.k:
            raise InputError(f"n must exceed k, got n={self.n}, k={self.k}")
        if not 0.0 <= self.r2 <= 1.0:
            raise InputError(f"r2 must lie in [0, 1], got {self.r2}")

    @property
    def shape_a(self) -> float:
        return (self.k - 1) / 2.0

    @property
    def shape_b(self) -> float:
        return (self.n - self.k) / 2.0


def r2_null_mean(spec: NullSpec) -> float:
    """Expected R^2 when the predictors explain nothing: (k - 1)/(n - 1)."""
    return (spec.k - 1) / (spec.n - 1)


def r2_null_pvalue(spec: NullSpec) -> float:
    """P(R^2 >= observed) when the true model explains nothing.

    Under the null, R^2 follows Beta((k - 1)/2, (n - k)/2). The upper tail
    is evaluated directly through the symmetry identity, so small p-values
    keep full accuracy instead of cancelling against 1.
    """
    if spec.r2 == 0.0:
        return 1.0
    if spec.r2 == 1.0:
        return 0.0
    return regularized_incomplete_beta(spec.shape_b, spec.shape_a, 1.0 - spec.r2)


def anscombe_sets() -> tuple[ObservationTable, ...]:
    """The four eleven-point sets that share one fitted line and R^2."""
    from .io import load_anscombe_sets

    return load_anscombe_sets()


def anscombe_demo() -> dict[str, OlsFit]:
    """Fit all four sets and confirm they are indistinguishable to the regression.

    Returns the fits keyed by set label. Pairwise disagreement beyond 0.01 in
    intercept, slope, or R^2 would mean the bundled data is corrupt.
    """
    fits: dict[str, OlsFit] = {}
    for label, table in zip(("1", "2", "3", "4"), anscombe_sets()):
        fits[label] = fit_ols(table, "y")
    labels = list(fits)
    for i, left in enumerate(labels):
        for right in labels[i + 1 :]:
            fi, fj = fits[left], fits[right]
            agree = (
                abs(fi.intercept - fj.intercept) <= ANSCOMBE_AGREEMENT
                and abs(fi.slopes[0] - fj.slopes[0]) <= ANSCOMBE_AGREEMENT
                and abs(fi.r2 - fj.r2) <= ANSCOMBE_AGREEMENT
            )
            if not agree:
                raise InternalCheckError(
                    f"quartet fits diverge between sets {left} and {right}"
                )
    return fits
