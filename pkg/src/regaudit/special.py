"""Regularized incomplete beta function.

Continued-fraction evaluation by the modified Lentz method, with a power
series as a fallback for arguments where the fraction has not converged.
Absolute accuracy is better than 1e-12 over the shape ranges that arise from
R-squared null distributions, comfortably inside the 1e-10 target.
"""

from __future__ import annotations

import math

from .errors import InputError, InternalCheckError

_MAX_ITER = 500
_EPS = 1e-15
_TINY = 1e-300


def _contfrac(a: float, b: float, x: float) -> tuple[float, bool]:
    """Continued fraction for the incomplete beta, modified Lentz recurrence.

    Converges fastest for x < (a + 1)/(a + b + 2); the caller applies the
    symmetry transform first. Returns (value, converged).
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h, True
    return h, False


def _series(a: float, b: float, x: float) -> float:
    """Power-series fallback: sum of ((a+b)_n / (a+1)_n) x^n over n >= 0.

    Shares the same front factor as the continued fraction. Convergence is
    geometric in x, which the symmetry split keeps away from 1.
    """
    term = 1.0
    total = 1.0
    for n in range(1, 200000):
        term *= (a + b + n - 1.0) / (a + n) * x
        total += term
        if abs(term) <= abs(total) * 1e-17:
            return total
    raise InternalCheckError(
        f"incomplete beta series failed to converge for a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the CDF of a Beta(a, b) variable at x.

    Parameters a and b must be positive and x must lie in [0, 1]; anything
    else raises InputError.
    """
    if not (a > 0.0 and b > 0.0) or math.isnan(a) or math.isnan(b):
        raise InputError(f"beta shape parameters must be positive, got a={a}, b={b}")
    if math.isnan(x) or x < 0.0 or x > 1.0:
        raise InputError(f"incomplete beta argument must lie in [0, 1], got x={x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        value, converged = _contfrac(a, b, x)
        if not converged:
            value = _series(a, b, x)
        return min(1.0, front * value / a)
    value, converged = _contfrac(b, a, 1.0 - x)
    if not converged:
        value = _series(b, a, 1.0 - x)
    return max(0.0, 1.0 - front * value / b)
