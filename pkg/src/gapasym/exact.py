"""Exact finite-n evaluation of the log gap probability and log partition
function, plus an independent Monte Carlo oracle built on the radii
decomposition of rotation-invariant determinantal ensembles.

With a_j = (j + alpha)/b and x = n r^(2b), the probability that no point
modulus falls in the hole annuli factorizes over j:

    log P_n = sum_{j=1..n} log( sum over kept intervals [x_lo, x_hi]
                                 of P(a_j, x_hi) - P(a_j, x_lo) ),

where the kept intervals are the complement of the holes between x = 0 and
x = +inf.  Every inner summand is a positive mass, so the only cancellation
left is inside a single interval mass, which is what kept_interval_log_mass
manages.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import GapConfig, ModelParams
from .policy import DEFAULT_POLICY, PrecisionPolicy
from .quadrature import log_integral_doubling
from .specfun.gammafn import log_reg_gamma_p, log_reg_gamma_q

_EPS = 2.220446049250313e-16
# half-digit loss floor; the policy target can force the fallback earlier
_CANCEL_FLOOR = 1e-8


class MassRoute(enum.Enum):
    P_DIFF = "P_DIFF"
    Q_DIFF = "Q_DIFF"
    QUADRATURE = "QUADRATURE"


@dataclass(frozen=True)
class IntervalMass:
    """One regularized incomplete-gamma interval mass in log space."""

    a: float
    x_lo: float
    x_hi: float
    log_mass: float
    route: MassRoute
    est_rel_err: float


@dataclass(frozen=True)
class ExactResult:
    log_pn: float
    n: int
    routes_used: dict[str, int]
    policy: PrecisionPolicy
    per_j_terms: list[float] | None = None


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_err: float
    method: str  # "mc" or "analytic"
    insufficient_samples: bool
    samples: int
    seed: int


def _log1mexp(x: float) -> float:
    """log(1 - exp(x)) for x < 0."""
    if x >= 0.0:
        return -math.inf
    if x < -math.log(2.0):
        return math.log1p(-math.exp(x))
    return math.log(-math.expm1(x))


def _logaddexp(vals: list[float]) -> float:
    m = max(vals)
    if m == -math.inf:
        return -math.inf
    return m + math.log(sum(math.exp(v - m) for v in vals))


def _log_diff(l_hi: float, l_lo: float) -> tuple[float, float]:
    """log(e^l_hi - e^l_lo) with an estimate of the surviving fraction."""
    if l_lo == -math.inf:
        return l_hi, 1.0
    d = l_lo - l_hi
    kept = -math.expm1(d)  # 1 - exp(d), the fraction that survives
    return l_hi + _log1mexp(d), kept


def _quadrature_log_mass(a: float, x_lo: float, x_hi: float, policy: PrecisionPolicy) -> tuple[float, float]:
    lg = math.lgamma(a)

    def log_f(t: np.ndarray) -> np.ndarray:
        return (a - 1.0) * np.log(t) - t - lg

    lo = max(x_lo, 5e-324)
    return log_integral_doubling(
        log_f, lo, x_hi, policy.target_rel, start_nodes=policy.quadrature_nodes, max_nodes=1024
    )


def kept_interval_log_mass(
    a: float, x_lo: float, x_hi: float, policy: PrecisionPolicy = DEFAULT_POLICY
) -> IntervalMass:
    """log of P(a, x_hi) - P(a, x_lo) by the route with least cancellation.

    x_lo <= a: the interval sits in the lower tail, so the P-difference is a
    difference of comparable lower-tail masses; x_lo >= a mirrors this with
    Q.  An interval straddling a is evaluated through the complement
    1 - P(x_lo) - Q(x_hi).  Whenever a difference would keep less than
    ~1e-8 of the larger operand, Gauss-Legendre in log space takes over.
    """
    if not (a > 0):
        raise DomainError(f"shape a must be > 0, got {a}")
    if not (0 <= x_lo < x_hi):
        raise DomainError(f"need 0 <= x_lo < x_hi, got [{x_lo}, {x_hi}]")

    if x_lo == 0.0 and math.isinf(x_hi):
        return IntervalMass(a, x_lo, x_hi, 0.0, MassRoute.P_DIFF, 0.0)
    if x_lo == 0.0:
        lm = log_reg_gamma_p(a, x_hi, policy)
        return IntervalMass(a, x_lo, x_hi, lm, MassRoute.P_DIFF, 4.0 * _EPS)
    if math.isinf(x_hi):
        lm = log_reg_gamma_q(a, x_lo, policy)
        return IntervalMass(a, x_lo, x_hi, lm, MassRoute.Q_DIFF, 4.0 * _EPS)

    if x_hi <= a:
        lm, kept = _log_diff(log_reg_gamma_p(a, x_hi, policy), log_reg_gamma_p(a, x_lo, policy))
        route = MassRoute.P_DIFF
    elif x_lo >= a:
        lm, kept = _log_diff(log_reg_gamma_q(a, x_lo, policy), log_reg_gamma_q(a, x_hi, policy))
        route = MassRoute.Q_DIFF
    else:
        # straddling interval: mass = 1 - (P(x_lo) + Q(x_hi))
        drop = math.exp(log_reg_gamma_p(a, x_lo, policy)) + math.exp(log_reg_gamma_q(a, x_hi, policy))
        kept = 1.0 - drop
        lm = math.log1p(-drop) if drop < 1.0 else -math.inf
        route = MassRoute.P_DIFF

    if kept < max(_CANCEL_FLOOR, 4.0 * _EPS / policy.target_rel):
        lm, rel = _quadrature_log_mass(a, x_lo, x_hi, policy)
        return IntervalMass(a, x_lo, x_hi, lm, MassRoute.QUADRATURE, rel)
    est = 4.0 * _EPS / kept
    return IntervalMass(a, x_lo, x_hi, lm, route, est)


def _kept_bounds(gap: GapConfig, params: ModelParams, n: int) -> list[tuple[float, float]]:
    """Kept intervals in the x = n u^(2b) variable.

    Zero-width holes are dropped first, so the empty-hole fixture yields the
    single kept interval [0, inf) and an exactly zero log term.
    """
    tb = 2.0 * params.b
    holes = []
    for lo, hi in gap.pairs:
        if lo == hi:
            continue
        holes.append((n * lo ** tb, math.inf if math.isinf(hi) else n * hi ** tb))
    kept = []
    prev = 0.0
    for x_lo, x_hi in holes:
        if x_lo > prev:
            kept.append((prev, x_lo))
        prev = x_hi
    if not math.isinf(prev):
        kept.append((prev, math.inf))
    return kept


def _neumaier_sum(values: list[float]) -> float:
    """Compensated summation in the given (fixed) order."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def exact_log_gap_probability(
    params: ModelParams,
    n: int,
    gap: GapConfig,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    *,
    keep_terms: bool = False,
    threads: int = 1,
) -> ExactResult:
    """log P_n by the factorized exact formula.

    Per-j terms are pure and may be computed on any number of threads; the
    final reduction is compensated and always runs in ascending j, so the
    result is bit-stable across thread counts.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    kept = _kept_bounds(gap, params, n)
    if not kept:
        raise DomainError("hole region covers the whole plane")
    routes = {r.value: 0 for r in MassRoute}

    def term(j: int) -> tuple[float, tuple[str, ...]]:
        a_j = (j + params.alpha) / params.b
        masses = []
        used = []
        try:
            for lo, hi in kept:
                m = kept_interval_log_mass(a_j, lo, hi, policy)
                masses.append(m.log_mass)
                used.append(m.route.value)
        except ConvergenceError as exc:
            raise ConvergenceError(f"term j={j}: {exc}") from exc
        # kept masses sum to at most 1; clamp the rounding drift
        return min(_logaddexp(masses), 0.0), tuple(used)

    js = range(1, n + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(term, js))
    else:
        results = [term(j) for j in js]

    terms = [t for t, _ in results]
    for _, used in results:
        for r in used:
            routes[r] += 1
    log_pn = min(_neumaier_sum(terms), 0.0)
    return ExactResult(
        log_pn=log_pn,
        n=n,
        routes_used=routes,
        policy=policy,
        per_j_terms=terms if keep_terms else None,
    )


def exact_log_partition(params: ModelParams, n: int) -> float:
    """log Z_n = -(n^2/(2b)) log n - ((1+2a)/(2b)) n log n + n log(pi/b)
    + sum_j log Gamma((j+alpha)/b)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    b, alpha = params.b, params.alpha
    lg_sum = math.fsum(math.lgamma((j + alpha) / b) for j in range(1, n + 1))
    return (
        -(n * n) / (2.0 * b) * math.log(n)
        - (1.0 + 2.0 * alpha) / (2.0 * b) * n * math.log(n)
        + n * math.log(math.pi / b)
        + lg_sum
    )


def kostlan_sample_radii(params: ModelParams, n: int, seed: int) -> np.ndarray:
    """One draw of the n point moduli: u_j = (t_j/n)^(1/(2b)) with independent
    t_j ~ Gamma((j+1+alpha)/b), j = 0..n-1.  Deterministic in (seed, n)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    shapes = (np.arange(n) + 1.0 + params.alpha) / params.b
    t = rng.standard_gamma(shapes)
    return (t / n) ** (1.0 / (2.0 * params.b))


_MC_CHUNK = 100_000
_MC_FLOOR = 1e-4


def mc_gap_probability(
    params: ModelParams,
    n: int,
    gap: GapConfig,
    samples: int,
    seed: int,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> McEstimate:
    """Monte Carlo estimate of P_n from the radii sampler.

    Sampling runs in fixed chunks with per-chunk seeds derived from
    (seed, chunk index), so the result depends only on (seed, samples).  When
    the empirical probability falls below 1e-4 the estimator is uninformative
    and the analytic per-j product (the exact formula) is returned instead,
    flagged as such; a zero hit count also raises the insufficient flag.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    holes = [(lo, hi) for lo, hi in gap.pairs if lo < hi]
    shapes = (np.arange(n) + 1.0 + params.alpha) / params.b
    inv_tb = 1.0 / (2.0 * params.b)

    hits = 0
    done = 0
    chunk_idx = 0
    while done < samples:
        m = min(_MC_CHUNK, samples - done)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, chunk_idx)))
        in_hole = np.zeros(m, dtype=bool)
        for shape in shapes:
            u = (rng.standard_gamma(shape, size=m) / n) ** inv_tb
            for lo, hi in holes:
                in_hole |= (u >= lo) & (u <= hi)
        hits += int(np.count_nonzero(~in_hole))
        done += m
        chunk_idx += 1

    p_hat = hits / samples
    if p_hat >= _MC_FLOOR:
        std_err = math.sqrt(p_hat * (1.0 - p_hat) / samples)
        return McEstimate(p_hat, std_err, "mc", False, samples, seed)
    exact = exact_log_gap_probability(params, n, gap, policy)
    return McEstimate(math.exp(exact.log_pn), 0.0, "analytic", hits == 0, samples, seed)
