"""Distribution rebuilding from percentile tables, plus effect sizes.

A published percentile table defines a quantile function by monotone cubic
interpolation. Inverse-transform sampling and a Gaussian kernel density then
recover a full distribution picture from the handful of printed numbers, and
effect sizes (Cohen's d, the common-language effect size, odds) compare two
such distributions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateError, InputError

GRID_SIZE = 512
DEFAULT_SAMPLES = 1000
_KDE_CHUNK = 4096
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


class Direction(str, enum.Enum):
    """Whether larger or smaller scores are better for an event."""

    HIGHER_IS_BETTER = "higher_is_better"
    LOWER_IS_BETTER = "lower_is_better"


@dataclass(frozen=True)
class QuantileProfile:
    """Scores at listed percentiles, the usual shape of a published distribution."""

    label: str
    points: tuple[tuple[float, float], ...]
    direction: Direction = Direction.HIGHER_IS_BETTER

    def __post_init__(self) -> None:
        try:
            points = tuple((float(p), float(s)) for p, s in self.points)
        except (TypeError, ValueError) as exc:
            raise InputError(f"profile points must be (percentile, score) pairs: {exc}") from exc
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "direction", Direction(self.direction))
        if len(points) < 2:
            raise InputError("profile needs at least two points")
        percentiles = [p for p, _ in points]
        scores = [s for _, s in points]
        if percentiles[0] != 0.0 or percentiles[-1] != 100.0:
            raise InputError("percentiles must start at 0 and end at 100")
        if any(b <= a for a, b in zip(percentiles, percentiles[1:])):
            raise InputError("percentiles must be strictly increasing")
        if any(b < a for a, b in zip(scores, scores[1:])):
            raise InputError("scores must be non-decreasing in percentile")

    @property
    def knots(self) -> np.ndarray:
        """Percentiles rescaled to cumulative fractions in [0, 1]."""
        return np.array([p / 100.0 for p, _ in self.points])

    @property
    def scores(self) -> np.ndarray:
        return np.array([s for _, s in self.points])


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Draws from a reconstructed distribution; values are read-only."""

    label: str
    values: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.size == 0:
            raise InputError("sample set must be nonempty")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class DensityCurve:
    """Kernel density on a fixed grid; integrates to 1 within 1%."""

    grid: np.ndarray
    density: np.ndarray
    bandwidth: float

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=float)
        density = np.array(self.density, dtype=float)
        grid.setflags(write=False)
        density.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "density", density)
        if grid.ndim != 1 or grid.shape != density.shape:
            raise InputError("grid and density must be 1-d arrays of equal length")
        if np.any(np.diff(grid) <= 0):
            raise InputError("grid must be strictly increasing")
        if self.bandwidth <= 0:
            raise InputError("bandwidth must be positive")
        if np.any(density < 0):
            raise InputError("density values must be nonnegative")
        integral = float(_trapezoid(density, grid))
        if abs(integral - 1.0) > 0.01:
            raise InputError(
                f"density integrates to {integral:.4f}, outside 1 +- 0.01; "
                "the bandwidth is too small for the grid to resolve"
            )


def _monotone_slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Knot slopes for a monotonicity-preserving cubic Hermite interpolant.

    Interior slopes average the neighboring secants, drop to zero beside a
    flat interval or a direction change, and are clamped to three times the
    smaller adjacent secant. Endpoints take the one-sided secant. Keeping
    every slope within [0, 3] secants is the classic sufficient condition
    for the cubic to stay monotone on each interval.
    """
    h = np.diff(x)
    delta = np.diff(y) / h
    n = len(x)
    m = np.zeros(n)
    m[0] = delta[0]
    m[-1] = delta[-1]
    for i in range(1, n - 1):
        left, right = delta[i - 1], delta[i]
        if left == 0.0 or right == 0.0 or (left < 0.0) != (right < 0.0):
            m[i] = 0.0
        else:
            mean = 0.5 * (left + right)
            cap = 3.0 * min(abs(left), abs(right))
            m[i] = math.copysign(min(abs(mean), cap), mean)
    return m


def _hermite(x: np.ndarray, y: np.ndarray, m: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Evaluate the cubic Hermite interpolant at points q within [x[0], x[-1]]."""
    idx = np.clip(np.searchsorted(x, q, side="right") - 1, 0, len(x) - 2)
    h = x[idx + 1] - x[idx]
    t = (q - x[idx]) / h
    h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
    h10 = t * (1.0 - t) ** 2
    h01 = t**2 * (3.0 - 2.0 * t)
    h11 = t**2 * (t - 1.0)
    return h00 * y[idx] + h10 * h * m[idx] + h01 * y[idx + 1] + h11 * h * m[idx + 1]


def quantile_function(profile: QuantileProfile, u, method: str = "pchip"):
    """Score at cumulative fraction u in [0, 1].

    method "pchip" is the monotone cubic; "linear" is the piecewise-linear
    fallback. Scalar in, scalar out; array input evaluates elementwise.
    """
    q = np.asarray(u, dtype=float)
    if q.size and (np.any(np.isnan(q)) or float(q.min()) < 0.0 or float(q.max()) > 1.0):
        raise InputError("u must lie in [0, 1]")
    x = profile.knots
    y = profile.scores
    if method == "linear":
        values = np.interp(q, x, y)
    elif method == "pchip":
        values = _hermite(x, y, _monotone_slopes(x, y), q)
    else:
        raise InputError(f"unknown interpolation method {method!r}")
    if np.ndim(u) == 0:
        return float(values)
    return values


def sample(profile: QuantileProfile, n: int, seed: int, method: str = "pchip") -> SampleSet:
    """Inverse-transform draws through the profile's quantile function.

    The generator is constructed from the seed on every call, so identical
    (profile, n, seed) always reproduce the same values.
    """
    if n < 1:
        raise InputError("sample count must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    values = quantile_function(profile, u, method=method)
    return SampleSet(label=profile.label, values=np.asarray(values, dtype=float), seed=seed)


def silverman_bandwidth(values: np.ndarray) -> float:
    """0.9 * min(sd, IQR/1.34) * n^(-1/5); needs some spread in the data."""
    values = np.asarray(values, dtype=float)
    n = values.size
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    q1, q3 = np.percentile(values, [25.0, 75.0])
    iqr = float(q3 - q1)
    spread = min(sd, iqr / 1.34) if iqr > 0.0 else sd
    if spread <= 0.0:
        raise DegenerateError("samples have no spread; pass an explicit bandwidth")
    return 0.9 * spread * n ** (-0.2)


def density(samples: SampleSet, bandwidth: float | None = None) -> DensityCurve:
    """Gaussian kernel density on a 512-point grid spanning the data plus 3 bandwidths."""
    values = samples.values
    if bandwidth is None:
        h = silverman_bandwidth(values)
    else:
        if bandwidth <= 0:
            raise InputError("bandwidth must be positive")
        h = float(bandwidth)
    lo = float(values.min()) - 3.0 * h
    hi = float(values.max()) + 3.0 * h
    grid = np.linspace(lo, hi, GRID_SIZE)
    total = np.zeros(GRID_SIZE)
    # chunked so n = 1e5 samples never materializes a full n x 512 matrix
    for start in range(0, values.size, _KDE_CHUNK):
        chunk = values[start : start + _KDE_CHUNK]
        z = (grid[:, None] - chunk[None, :]) / h
        total += np.exp(-0.5 * z * z).sum(axis=1)
    curve = total / (values.size * h * _SQRT_TWO_PI)
    return DensityCurve(grid=grid, density=curve, bandwidth=h)


def profile_moments(
    profile: QuantileProfile, resolution: int = 4096, method: str = "pchip"
) -> tuple[float, float]:
    """Mean and variance of the reconstructed distribution, by quadrature of Q(u)."""
    if resolution < 8:
        raise InputError("resolution too small")
    u = np.linspace(0.0, 1.0, resolution + 1)
    q = quantile_function(profile, u, method=method)
    mean = float(_trapezoid(q, u))
    var = float(_trapezoid((q - mean) ** 2, u))
    return mean, max(var, 0.0)


def cohen_d(
    mean1: float, sd1: float, n1: int, mean2: float, sd2: float, n2: int
) -> float:
    """Standardized mean difference with a count-weighted pooled sd.

    Pooling uses sqrt((n1 s1^2 + n2 s2^2)/(n1 + n2)), the population form,
    not the unbiased n-1 variant.
    """
    if n1 < 1 or n2 < 1:
        raise InputError("group sizes must be >= 1")
    if sd1 < 0 or sd2 < 0:
        raise InputError("standard deviations must be nonnegative")
    pooled = math.sqrt((n1 * sd1**2 + n2 * sd2**2) / (n1 + n2))
    if pooled == 0.0:
        raise DegenerateError("pooled sd is zero; d is undefined")
    return (mean1 - mean2) / pooled


def cles_normal(d: float) -> float:
    """P(a random draw from group 1 beats one from group 2) under equal-variance normals.

    Phi(d / sqrt(2)), evaluated through erf, so the absolute error is at
    machine level.
    """
    return 0.5 * (1.0 + math.erf(d / 2.0))


def cles_mc(a: QuantileProfile, b: QuantileProfile, n: int, seed: int) -> float:
    """Monte Carlo common-language effect size: fraction of paired draws where a beats b.

    Better means larger or smaller according to the shared direction; exact
    ties score one half. Deterministic for fixed (profiles, n, seed).
    """
    if a.direction != b.direction:
        raise InputError(
            f"direction mismatch: {a.direction.value} vs {b.direction.value}"
        )
    if n < 1:
        raise InputError("sample count must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random((2, n))
    draws_a = np.asarray(quantile_function(a, u[0]))
    draws_b = np.asarray(quantile_function(b, u[1]))
    if a.direction is Direction.HIGHER_IS_BETTER:
        wins = np.count_nonzero(draws_a > draws_b)
    else:
        wins = np.count_nonzero(draws_a < draws_b)
    ties = np.count_nonzero(draws_a == draws_b)
    return float((wins + 0.5 * ties) / n)


def odds(p: float) -> tuple[int, int]:
    """Format a probability as whole-number odds with the larger side first.

    0.857 becomes (6, 1); 0.25 becomes (1, 3). Exactly 0 or 1 has no finite
    odds and raises.
    """
    if math.isnan(p) or not 0.0 < p < 1.0:
        raise DegenerateError(f"odds are undefined for p = {p}")
    if p >= 0.5:
        return round(p / (1.0 - p)), 1
    return 1, round((1.0 - p) / p)


@dataclass(frozen=True)
class EffectSizeReport:
    """Effect size in three synonymous currencies: d, probability, and odds."""

    d: float
    cles: float
    odds_numerator: float
    odds_denominator: float

    def __post_init__(self) -> None:
        if not 0.0 < self.cles < 1.0:
            raise DegenerateError("cles must lie strictly between 0 and 1")
        if self.odds_numerator <= 0 or self.odds_denominator <= 0:
            raise InputError("odds sides must be positive")
        ratio = self.cles / (1.0 - self.cles)
        if abs(ratio - self.odds_numerator / self.odds_denominator) > 1e-6:
            raise InputError("odds do not match cles")

    @property
    def odds_formatted(self) -> tuple[int, int]:
        return odds(self.cles)


def effect_size_report(d: float, cles: float) -> EffectSizeReport:
    """Bundle d and cles with exact (unrounded) odds, larger side first."""
    if not 0.0 < cles < 1.0:
        raise DegenerateError("cles at 0 or 1 gives infinite odds")
    if cles >= 0.5:
        return EffectSizeReport(d, cles, cles / (1.0 - cles), 1.0)
    return EffectSizeReport(d, cles, 1.0, (1.0 - cles) / cles)
