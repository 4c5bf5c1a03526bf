"""Barnes G, zeta'(-1), and the log q-product sum_{j>=1} log(1 - rho^(2j))."""

from __future__ import annotations

import math

from ..errors import ConvergenceError, DomainError

# zeta'(-1) = 1/12 - log(Glaisher); frozen at 25 significant digits
ZETA_PRIME_MINUS_ONE = -0.1654211437004509292139197

# log G(1+z) = (z^2/2 - 1/12) log z - 3z^2/4 + z/2 log(2pi) + zeta'(-1)
#              + sum_k B_{2k+2} / (2k (2k+2) z^{2k})
_BARNES_ASYM_COEFFS = (
    -1.0 / 240.0,        # B4 /(2*4)
    1.0 / 1008.0,        # B6 /(4*6)
    -1.0 / 1440.0,       # B8 /(6*8)
    1.0 / 1056.0,        # B10/(8*10)
    -691.0 / 327600.0,   # B12/(10*12)
    1.0 / 144.0,         # B14/(12*14)
)
_BARNES_MIN_X = 16.0

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def zeta_prime_minus_one() -> float:
    """zeta'(-1), the constant tying the gamma-sum limit to Barnes G."""
    return ZETA_PRIME_MINUS_ONE


def _log_barnes_g_asym(x: float) -> float:
    """Asymptotic expansion of log G at x = 1 + z, needs z >= ~15."""
    z = x - 1.0
    lz = math.log(z)
    s = (0.5 * z * z - 1.0 / 12.0) * lz - 0.75 * z * z + z * _HALF_LOG_2PI + ZETA_PRIME_MINUS_ONE
    zi2 = 1.0 / (z * z)
    p = 1.0
    for c in _BARNES_ASYM_COEFFS:
        p *= zi2
        s += c * p
    return s


def log_barnes_g(x: float) -> float:
    """log G(x) for x > 0, via the large-x expansion plus the recurrence
    G(x+1) = Gamma(x) G(x) shifted downward."""
    if not (x > 0):
        raise DomainError(f"log_barnes_g needs x > 0, got {x}")
    shift = 0.0
    while x < _BARNES_MIN_X:
        # log G(x) = log G(x+1) - log Gamma(x)
        shift += math.lgamma(x)
        x += 1.0
    return _log_barnes_g_asym(x) - shift


def log_q_pochhammer_sum(rho: float, max_terms: int = 100_000) -> float:
    """sum_{j>=1} log(1 - rho^(2j)) for rho in (0,1); negative, absolutely
    convergent, truncated when rho^(2j) drops below machine epsilon."""
    if not (0.0 < rho < 1.0):
        raise DomainError(f"rho must be in (0,1), got {rho}")
    q = rho * rho
    p = 1.0
    s = 0.0
    for _ in range(max_terms):
        p *= q
        if p < 1e-18:
            return s
        s += math.log1p(-p)
    raise ConvergenceError(f"q-product sum stalled at rho={rho}")
