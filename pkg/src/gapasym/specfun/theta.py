"""Third Jacobi theta function for real argument and purely imaginary modulus.

theta(z | i*t) = sum_l exp(2*pi*i*l*z - pi*l^2*t) is evaluated by the cosine
series when t >= 1 and through the modular (heat-kernel) form

    theta(z | i*t) = t^(-1/2) * sum_l exp(-pi*(l+z)^2/t)

when t < 1, so the working series always decays at rate exp(-pi*max(t, 1/t)).
Both sums are strictly positive; the log version assembles the t < 1 branch by
log-sum-exp because the value itself underflows for very small t.
"""

from __future__ import annotations

import math

from ..errors import DomainError

# exp(-x) below exp(-41.5) ~ 1e-18 contributes nothing at double precision
_SERIES_CUT = 41.5


def _check_tau(tau_im: float) -> None:
    if not (tau_im > 0) or math.isnan(tau_im):
        raise DomainError(f"tau_im must be > 0, got {tau_im}")


def _reduce(z: float) -> float:
    """Reduce to [0, 1); exact periodicity makes this a free rewrite."""
    return z - math.floor(z)


def _series_direct_delta(z: float, tau_im: float) -> float:
    """theta - 1 = 2*sum_{l>=1} q^(l^2) cos(2*pi*l*z), q = exp(-pi*tau_im)."""
    z = _reduce(z)
    lmax = max(1, math.ceil(math.sqrt(_SERIES_CUT / (math.pi * tau_im))))
    c = 0.0
    for ell in range(1, lmax + 1):
        c += 2.0 * math.exp(-math.pi * ell * ell * tau_im) * math.cos(2.0 * math.pi * ell * z)
    return c


def _series_direct(z: float, tau_im: float) -> float:
    return 1.0 + _series_direct_delta(z, tau_im)


def _series_transformed(z: float, tau_im: float) -> float:
    """t^(-1/2) * sum exp(-pi*(l+z)^2/t); underflows for tiny t."""
    z = _reduce(z)
    lmax = math.ceil(math.sqrt(_SERIES_CUT * tau_im / math.pi)) + 1
    s = 0.0
    for ell in range(-lmax - 1, lmax + 1):
        s += math.exp(-math.pi * (ell + z) ** 2 / tau_im)
    return s / math.sqrt(tau_im)


def _log_series_transformed(z: float, tau_im: float) -> float:
    z = _reduce(z)
    lmax = math.ceil(math.sqrt(_SERIES_CUT * tau_im / math.pi)) + 1
    exps = [-math.pi * (ell + z) ** 2 / tau_im for ell in range(-lmax - 1, lmax + 1)]
    m = max(exps)
    s = sum(math.exp(e - m) for e in exps)
    return m + math.log(s) - 0.5 * math.log(tau_im)


def jacobi_theta(z: float, tau_im: float) -> float:
    """theta(z | i*tau_im) for real z; strictly positive."""
    _check_tau(tau_im)
    if tau_im >= 1.0:
        return _series_direct(z, tau_im)
    return _series_transformed(z, tau_im)


def log_jacobi_theta(z: float, tau_im: float) -> float:
    """log theta(z | i*tau_im) without underflow for any tau_im > 0."""
    _check_tau(tau_im)
    if tau_im >= 1.0:
        return math.log1p(_series_direct_delta(z, tau_im))
    return _log_series_transformed(z, tau_im)
