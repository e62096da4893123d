"""Rogers dilogarithm on [0, 1], a quadrature oracle, and normalized sums.

The primary evaluator splits L(x) into the power-series dilogarithm plus a
log product and reflects arguments above 1/2, so series arguments never
exceed 1/2. The oracle integrates the defining integrand directly and is
kept independent of the series path on purpose.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from scipy import integrate

PI2_OVER_6 = math.pi**2 / 6

_SERIES_EPS = 1e-18
_SERIES_MAX_TERMS = 200


def _li2_series(x: float) -> float:
    # Power-series dilogarithm for 0 < x <= 1/2; terms decay at least as 2^-k.
    total = 0.0
    power = 1.0
    for k in range(1, _SERIES_MAX_TERMS + 1):
        power *= x
        term = power / (k * k)
        total += term
        if term < _SERIES_EPS:
            break
    return total


def rogers_dilog(x: float) -> float:
    """Rogers dilogarithm L(x) for 0 <= x <= 1.

    Endpoints are exact: L(0) = 0 and L(1) = pi^2/6. Elsewhere the result
    tracks the defining integral to roughly 1e-15.
    """
    if math.isnan(x) or x < 0.0 or x > 1.0:
        raise ValueError(f"rogers_dilog is defined on [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_OVER_6
    if x > 0.5:
        return PI2_OVER_6 - rogers_dilog(1.0 - x)
    return _li2_series(x) + 0.5 * math.log(x) * math.log1p(-x)


def _integrand(y: float) -> float:
    return math.log1p(-y) / y + math.log(y) / (1.0 - y)


def dilog_oracle(x: float) -> float:
    """L(x) by adaptive quadrature of the defining integral.

    Target absolute error 1e-12; used as an independent cross-check of
    ``rogers_dilog``, never on the hot path.
    """
    if math.isnan(x) or x < 0.0 or x > 1.0:
        raise ValueError(f"dilog_oracle is defined on [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    value, _err = integrate.quad(_integrand, 0.0, x, epsabs=1e-13, epsrel=1e-13, limit=200)
    return -0.5 * value


def normalized_weighted_sum(args: Sequence[float], weights: Sequence[int]) -> float:
    """(6/pi^2) * sum_i weights[i] * L(args[i]) for args in (0, 1)."""
    if len(args) != len(weights):
        raise ValueError(f"length mismatch: {len(args)} arguments vs {len(weights)} weights")
    total = 0.0
    for a, w in zip(args, weights):
        if not 0.0 < a < 1.0:
            raise ValueError(f"arguments must lie in (0, 1), got {a!r}")
        if w <= 0:
            raise ValueError(f"weights must be positive integers, got {w!r}")
        total += w * rogers_dilog(a)
    return total / PI2_OVER_6
