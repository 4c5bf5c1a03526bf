"""Complementary error function and its deep-tail logarithm.

The log of erfc(y)/2 is needed far past the point where erfc itself
underflows (y around 26.6); there the classical tail expansion

    erfc(y) = exp(-y^2)/sqrt(pi) * (1/y - 1/(2y^3) + 3/(4y^5) - 15/(8y^7) + ...)

is used directly in log space.
"""

from __future__ import annotations

import math

# switch to the tail series where direct erfc is still far from underflow but
# the series truncation is already < 1e-16 relative
_TAIL_SWITCH = 20.0

# (2k-1)!!/2^k for k = 1..8, with alternating signs applied in the loop
_TAIL_COEFFS = (0.5, 0.75, 1.875, 6.5625, 29.53125, 162.421875, 1055.7421875, 7918.06640625)

_LOG_2_SQRT_PI = math.log(2.0 * math.sqrt(math.pi))


def erfc(y: float) -> float:
    """erfc(y) = (2/sqrt(pi)) * integral of exp(-t^2) from y to infinity."""
    return math.erfc(y)


def _tail_log_series(y: float) -> float:
    """log(S(y)) with S = sqrt(pi)*y*exp(y^2)*erfc(y), valid for y >= ~10."""
    y2 = 1.0 / (y * y)
    s = 0.0
    p = 1.0
    for k, c in enumerate(_TAIL_COEFFS):
        p *= y2
        s += (-c if k % 2 == 0 else c) * p
    return math.log1p(s)


def log_half_erfc(y: float) -> float:
    """log(erfc(y)/2) without underflow for y up to at least 1e4.

    For y <= -cut the reflection erfc(y) = 2 - erfc(-y) gives
    log1p(-erfc(-y)/2); for large positive y the tail series above takes over.
    """
    if y >= _TAIL_SWITCH:
        return -y * y - math.log(y) - _LOG_2_SQRT_PI + _tail_log_series(y)
    if y <= 0.0:
        return math.log1p(-0.5 * math.erfc(-y))
    return math.log(0.5 * math.erfc(y))
