"""Large-n expansion of the log gap probability.

For every admissible hole geometry the expansion has the shape

    log P_n = C1 n^2 + C2 n log n + C3 n + C4 sqrt(n) + C5 log n + C6 + F_n + o(1),

where F_n is a bounded oscillation carried by the Jacobi theta function.  The
constants decompose additively into contributions from each strictly interior
annulus, plus boundary contributions when the innermost annulus is a disk or
the outermost is unbounded.  The disk contribution involves the constant limit
of the Stirling-corrected sum of log Gamma((k+alpha)/b), available either as a
Richardson-extrapolated limit or, for rational b, in closed form through
Barnes G and zeta'(-1).
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.special import erfcx

from .errors import ConvergenceError, DomainError, MissingRational, ThetaNonpositive
from .model import CaseTag, GapConfig, ModelParams, annulus_log_mean, classify
from .policy import DEFAULT_POLICY, PrecisionPolicy
from .quadrature import adaptive_quad, tanh_sinh
from .specfun.barnes import log_barnes_g, log_q_pochhammer_sum, zeta_prime_minus_one
from .specfun.erfcfn import log_half_erfc
from .specfun.theta import log_jacobi_theta

_SQRT_PI = math.sqrt(math.pi)
_LOG_2_SQRT_PI = math.log(2.0 * _SQRT_PI)

# ---------------------------------------------------------------------------
# erfc integral constants

# finite integration window; beyond it the analytic tail series below are
# accurate to ~1e-12 absolute
_ERFC_T_PLUS = 20.0
_ERFC_T_MINUS = 12.0


@dataclass(frozen=True)
class ErfcIntegralSet:
    """The four erfc tail integrals entering C4 (i pair) and the boundary C6
    terms (j pair); each reproduced by two quadrature strategies within
    est_abs_err."""

    i_minus: float
    i_plus: float
    j_minus: float
    j_plus: float
    est_abs_err: float


def _i_minus_integrand(y: float) -> float:
    return log_half_erfc(y)


def _j_any_integrand(y: float) -> float:
    # 2y log(erfc(y)/2) + exp(-y^2)(1-5y^2)/(3 sqrt(pi) erfc(y)); the second
    # factor is 1/erfcx(y) in disguise
    return 2.0 * y * log_half_erfc(y) + (1.0 - 5.0 * y * y) / (3.0 * _SQRT_PI * float(erfcx(y)))


def _i_plus_smooth(y: float) -> float:
    # integrand plus log(y) removed: log(sqrt(pi) * erfcx(y))
    return math.log(_SQRT_PI * float(erfcx(y)))


def _j_plus_smooth(y: float) -> float:
    # integrand with the 2y log y part removed, grouped to avoid the large
    # cancellation between the cubic terms at big y
    if y < 1e-12:
        return 1.0 / (3.0 * _SQRT_PI)
    s = _SQRT_PI * y * float(erfcx(y))
    return (
        2.0 * y * (log_half_erfc(y) + y * y)
        + (5.0 * y ** 3 * (s - 1.0) + y) / (3.0 * s)
        + (0.5 + 2.0 * _LOG_2_SQRT_PI) * y
    )


def _i_plus_tail(T: float) -> float:
    return (-1.0 / 2.0) / T + (5.0 / 24.0) / T**3 - (37.0 / 120.0) / T**5 \
        + (353.0 / 448.0) / T**7 - (4081.0 / 1440.0) / T**9


def _j_plus_tail(T: float) -> float:
    return (-1.0 / 2.0) / T**2 + (121.0 / 96.0) / T**4 - (873.0 / 192.0) / T**6 \
        + (27023.0 / 1280.0) / T**8 - (114491.0 / 960.0) / T**10


def _erfc_integrals_once(integrate) -> tuple[float, float, float, float]:
    Tm, Tp = _ERFC_T_MINUS, _ERFC_T_PLUS
    i_minus = integrate(_i_minus_integrand, -Tm, -4.0) + integrate(_i_minus_integrand, -4.0, 0.0)
    j_minus = integrate(_j_any_integrand, -Tm, -4.0) + integrate(_j_any_integrand, -4.0, 0.0)
    i_plus = (
        integrate(_i_plus_smooth, 0.0, 2.0)
        + integrate(_i_plus_smooth, 2.0, 8.0)
        + integrate(_i_plus_smooth, 8.0, Tp)
        + Tp * math.log(Tp) - Tp          # exact integral of the log(y) part
        + _i_plus_tail(Tp)
    )
    j_plus = (
        integrate(_j_plus_smooth, 0.0, 2.0)
        + integrate(_j_plus_smooth, 2.0, 8.0)
        + integrate(_j_plus_smooth, 8.0, Tp)
        + Tp * Tp * math.log(Tp) - 0.5 * Tp * Tp   # exact 2y log y part
        + _j_plus_tail(Tp)
    )
    return i_minus, i_plus, j_minus, j_plus


_erfc_cache: dict[float, ErfcIntegralSet] = {}
_erfc_lock = threading.Lock()


def erfc_integral_constants(policy: PrecisionPolicy = DEFAULT_POLICY) -> ErfcIntegralSet:
    """Compute the four constants once by two independent strategies
    (adaptive Gauss-Kronrod and tanh-sinh, both with the same analytic tail
    corrections) and memoize the agreed values."""
    key = policy.target_abs
    with _erfc_lock:
        hit = _erfc_cache.get(key)
    if hit is not None:
        return hit
    gk = _erfc_integrals_once(lambda f, a, b: adaptive_quad(f, a, b, target_abs=1e-13))
    ts = _erfc_integrals_once(lambda f, a, b: tanh_sinh(f, a, b, target_abs=1e-13))
    diff = max(abs(x - y) for x, y in zip(gk, ts))
    if diff > 1e-9:
        raise ConvergenceError(f"quadrature strategies disagree by {diff:.3e}")
    est = max(diff, 1e-13) + 2e-12  # dual-strategy spread plus tail truncation
    out = ErfcIntegralSet(gk[0], gk[1], gk[2], gk[3], est)
    with _erfc_lock:
        _erfc_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# gamma-sum constant

class GRoute(enum.Enum):
    AUTO = "auto"
    LIMIT = "limit"
    CLOSED_FORM = "closed_form"


_LD = np.longdouble


def _gamma_sum_bracket(n_max: int, b: float, alpha: float) -> np.longdouble:
    """sum_{k<=N} log Gamma((k+alpha)/b) minus its growing asymptotic part,
    in 80-bit arithmetic: the two sides agree to ~1e10, so double precision
    would lose the constant."""
    bl = _LD(b)
    al = _LD(alpha)
    z = (np.arange(1, n_max + 1, dtype=_LD) + al) / bl
    shift = np.zeros_like(z)
    while np.any(z < 16):
        m = z < 16
        shift[m] += np.log(z[m])
        z[m] += 1
    zi = 1.0 / z
    z2 = zi * zi
    corr = zi * (_LD(1) / 12 + z2 * (_LD(-1) / 360 + z2 * (_LD(1) / 1260 + z2 * (_LD(-1) / 1680 + z2 * (_LD(1) / 1188)))))
    half_log_2pi = _LD("0.91893853320467274178032973640562")
    lg = (z - _LD(0.5)) * np.log(z) - z + half_log_2pi + corr - shift
    total = np.sum(lg, dtype=_LD)

    N = _LD(n_max)
    logN = np.log(N)
    asym = (
        N * N / (2 * bl) * logN
        - (3 + 2 * np.log(bl)) / (4 * bl) * N * N
        + (1 + 2 * al - bl) / (2 * bl) * N * logN
        + (half_log_2pi + (bl - 2 * al - 1) / (2 * bl) * (1 + np.log(bl))) * N
        + (1 - 3 * bl + bl * bl + 6 * al - 6 * bl * al + 6 * al * al) / (12 * bl) * logN
    )
    return total - asym


def _gamma_sum_limit(b: float, alpha: float, n_limit: int) -> float:
    # Richardson step assuming an O(1/N) remainder
    a1 = _gamma_sum_bracket(n_limit, b, alpha)
    a2 = _gamma_sum_bracket(2 * n_limit, b, alpha)
    return float(2 * a2 - a1)


def _gamma_sum_closed(n1: int, n2: int, alpha: float) -> float:
    b = n1 / n2
    s = (
        n1 * n2 * zeta_prime_minus_one()
        + (b * (n2 - n1) + 2 * n1 * alpha) / (4.0 * b) * math.log(2.0 * math.pi)
        - (1 - 3 * b + b * b + 6 * alpha - 6 * b * alpha + 6 * alpha * alpha) / (12.0 * b) * math.log(n1)
    )
    tot = 0.0
    for j in range(1, n2 + 1):
        for k in range(1, n1 + 1):
            tot += log_barnes_g((j + alpha / b - 1.0) / n2 + k / n1)
    return s - tot


_gsum_cache: dict[tuple, float] = {}
_gsum_lock = threading.Lock()


def gamma_sum_constant(
    params: ModelParams, route: GRoute = GRoute.AUTO, *, n_limit: int = 50_000
) -> float:
    """Constant term of sum_{k<=N} log Gamma((k+alpha)/b) after removing its
    growing asymptotics.

    CLOSED_FORM needs b as an explicit integer ratio; LIMIT works for any b
    and is Richardson-extrapolated from N = n_limit and 2*n_limit.  AUTO takes
    the closed form when available.
    """
    if route is GRoute.AUTO:
        route = GRoute.CLOSED_FORM if params.b_rational is not None else GRoute.LIMIT
    if route is GRoute.CLOSED_FORM and params.b_rational is None:
        raise MissingRational("closed form needs b as an explicit integer ratio")
    key = (params.b, params.alpha, route, n_limit if route is GRoute.LIMIT else 0)
    with _gsum_lock:
        if key in _gsum_cache:
            return _gsum_cache[key]
    if route is GRoute.CLOSED_FORM:
        n1, n2 = params.b_rational
        val = _gamma_sum_closed(n1, n2, params.alpha)
    else:
        val = _gamma_sum_limit(params.b, params.alpha, n_limit)
    with _gsum_lock:
        _gsum_cache[key] = val
    return val


# ---------------------------------------------------------------------------
# expansion coefficients

@dataclass(frozen=True)
class ThetaTerm:
    """One oscillating annulus: contributes log theta(rate*n + offset | i*tau_im)."""

    rate: float
    offset: float
    tau_im: float


@dataclass(frozen=True)
class ExpansionCoefficients:
    case: CaseTag
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    theta_terms: tuple[ThetaTerm, ...]


def expansion_coefficients(
    params: ModelParams,
    gap: GapConfig,
    *,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    g_route: GRoute = GRoute.AUTO,
    n_limit: int = 50_000,
) -> ExpansionCoefficients:
    """Transcribe the expansion constants for the configuration's case.

    Each strictly interior annulus contributes a block to C1, C2, C3, C6 and
    one theta term; a disk or unbounded boundary annulus contributes its own
    block (no oscillation).  C4 couples every finite radius to the erfc
    integral pair.
    """
    case = classify(gap, params)
    b, alpha = params.b, params.alpha
    ints = erfc_integral_constants(policy)

    pairs = list(gap.pairs)
    disk_r = None
    unbounded_r = None
    if pairs and pairs[0][0] == 0.0:
        disk_r = pairs[0][1]
        pairs = pairs[1:]
    if pairs and math.isinf(pairs[-1][1]):
        unbounded_r = pairs[-1][0]
        pairs = pairs[:-1]

    c1 = c2 = c3 = c5 = c6 = 0.0
    theta_terms: list[ThetaTerm] = []

    for p, q in pairs:
        t = annulus_log_mean(p, q, params)
        L = math.log(q / p)
        p2b, q2b = p ** (2 * b), q ** (2 * b)
        lo_gap = t - b * p2b        # t - b p^(2b) > 0
        hi_gap = b * q2b - t        # b q^(2b) - t > 0
        c1 += (q2b - p2b) ** 2 / (4.0 * L) - b / 4.0 * (q ** (4 * b) - p ** (4 * b))
        c2 += -b * (q2b - p2b) / 2.0
        c3 += (
            b * (q2b - p2b) * (0.5 + math.log(b / math.sqrt(2.0 * math.pi)))
            + b * b * (q2b * math.log(q) - p2b * math.log(p))
            - lo_gap * math.log(lo_gap)
            - hi_gap * math.log(hi_gap)
        )
        c6 += (
            0.5 * math.log(math.pi)
            + (1.0 - 2.0 * b * b) / 12.0 * L
            + b * b * q2b / hi_gap
            + b * b * p2b / lo_gap
            - 0.5 * math.log(L)
            + math.log(hi_gap / lo_gap) ** 2 / (4.0 * L)
            - log_q_pochhammer_sum(p / q)
        )
        theta_terms.append(
            ThetaTerm(
                rate=t,
                offset=0.5 - alpha + math.log(hi_gap / lo_gap) / (2.0 * L),
                tau_im=math.pi / L,
            )
        )

    if disk_r is not None:
        r = disk_r
        r2b = r ** (2 * b)
        gconst = gamma_sum_constant(params, g_route, n_limit=n_limit)
        c1 += -b * r ** (4 * b) / 4.0
        c2 += -b * r2b / 2.0
        c3 += r2b * (alpha + 0.5 + b / 2.0 * (1.0 - 2.0 * math.log(r ** b * math.sqrt(2.0 * math.pi))))
        c5 += -(1 - 6 * b + b * b + 6 * alpha + 6 * alpha * alpha - 12 * alpha * b) / (12.0 * b)
        c6 += (
            (2 * alpha + 1) / 4.0 * math.log(2.0 * math.pi)
            + (b + 2 * alpha * b - alpha - alpha * alpha - (1 + b * b) / 6.0) * math.log(r)
            - (b * b - 6 * b * alpha + 6 * alpha * alpha + 6 * alpha - 3 * b + 1) / (12.0 * b) * math.log(b)
            - gconst
            - 2.0 * b * (ints.j_minus + ints.j_plus)
        )

    if unbounded_r is not None:
        R = unbounded_r
        R2b = R ** (2 * b)
        edge = 1.0 - b * R2b        # positive: R is strictly inside the bulk
        c1 += b * R ** (4 * b) / 4.0 - R2b + math.log(b * R2b) / (2.0 * b) + 3.0 / (4.0 * b)
        c2 += b * R2b / 2.0 - 0.5
        c3 += (
            -R2b * (alpha + (b + 1.0) / 2.0 + b * math.log(b * R ** b / math.sqrt(2.0 * math.pi)))
            - edge * math.log(edge)
            + (1 + 2 * alpha) / (2.0 * b) * math.log(b * R2b)
            + (b + 2 * alpha + 1) / (2.0 * b)
            + 0.5 * math.log(b / (2.0 * math.pi))
        )
        c5 += -(1 + 2 * alpha) / 4.0
        c6 += (
            -(2 * alpha + 1) / 4.0 * math.log(2.0 * math.pi)
            - (1 + 2 * alpha) / 2.0 * math.log(edge)
            + b * b * R2b / edge
            + b
            + (b * b + 6 * b * alpha + 6 * alpha * alpha + 6 * alpha + 3 * b + 1) / (12.0 * b) * math.log(b)
            + (b * b + 6 * alpha * alpha + 6 * alpha + 1) / 6.0 * math.log(R)
            + 2.0 * b * (ints.j_minus + ints.j_plus)
        )

    c4 = (
        math.sqrt(2.0)
        * b
        * (ints.i_minus + ints.i_plus)
        * sum(r ** b for r in gap.radii if not math.isinf(r))
    )

    return ExpansionCoefficients(
        case=case, c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, c6=c6, theta_terms=tuple(theta_terms)
    )


def fluctuation(coeffs: ExpansionCoefficients, n: float) -> float:
    """Oscillatory order-1 term: sum over annuli of
    log theta(rate*n + offset | i*tau_im), argument reduced mod 1."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    total = 0.0
    for term in coeffs.theta_terms:
        arg = math.fmod(term.rate * n, 1.0) + term.offset
        val = log_jacobi_theta(arg, term.tau_im)
        if not math.isfinite(val):
            raise ThetaNonpositive(
                f"theta factor degenerate at rate={term.rate}, n={n}, tau_im={term.tau_im}"
            )
        total += val
    return total


def predicted_log_gap_probability(
    coeffs: ExpansionCoefficients, n: float, *, include_fluctuation: bool = True
) -> float:
    """C1 n^2 + C2 n log n + C3 n + C4 sqrt(n) + C5 log n + C6 + F_n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    val = (
        coeffs.c1 * n * n
        + coeffs.c2 * n * math.log(n)
        + coeffs.c3 * n
        + coeffs.c4 * math.sqrt(n)
        + coeffs.c5 * math.log(n)
        + coeffs.c6
    )
    if include_fluctuation:
        val += fluctuation(coeffs, n)
    return val


# ---------------------------------------------------------------------------
# the two-sided q-product identity

def log_theta_product(x: float, rho: float, a: float, route: str = "series") -> float:
    """x(x-1) log rho + x log a + sum_j log(1 + a rho^(2(j+x)))
    + sum_j log(1 + rho^(2(j+1-x))/a), evaluated either term by term
    ("series") or through its Jacobi closed form ("closed").

    The two routes agreeing to ~1e-10 exercises the triple-product and
    modular identities end to end.
    """
    if not (0.0 < rho < 1.0):
        raise DomainError(f"rho must be in (0,1), got {rho}")
    if not (a > 0):
        raise DomainError(f"a must be > 0, got {a}")
    log_rho = math.log(rho)
    if route == "series":
        total = x * (x - 1.0) * log_rho + x * math.log(a)
        q2 = rho * rho
        p = math.exp(2.0 * x * log_rho)           # rho^(2(0+x))
        for _ in range(100_000):
            u = a * p
            if u < 1e-18:
                break
            total += math.log1p(u)
            p *= q2
        else:
            raise ConvergenceError("first product series stalled")
        p = math.exp(2.0 * (1.0 - x) * log_rho)   # rho^(2(0+1-x))
        for _ in range(100_000):
            u = p / a
            if u < 1e-18:
                break
            total += math.log1p(u)
            p *= q2
        else:
            raise ConvergenceError("second product series stalled")
        return total
    if route == "closed":
        log_inv_rho = -log_rho
        return (
            0.5 * math.log(math.pi * a / (math.sqrt(rho) * log_inv_rho))
            + math.log(a) ** 2 / (4.0 * log_inv_rho)
            - log_q_pochhammer_sum(rho)
            + log_jacobi_theta(x + math.log(a * rho) / (2.0 * log_rho), math.pi / log_inv_rho)
        )
    raise DomainError(f"unknown route {route!r}")
