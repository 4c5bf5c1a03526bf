"""Exact-vs-asymptotic comparison ladders and fluctuation traces."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .asym import ExpansionCoefficients, expansion_coefficients, fluctuation, predicted_log_gap_probability
from .errors import DomainError, GapAsymError
from .exact import exact_log_gap_probability
from .model import GapConfig, ModelParams
from .policy import DEFAULT_POLICY, PrecisionPolicy

# residuals below this are treated as exact matches and excluded from the
# decay-rate fit
_FIT_FLOOR = 1e-12


@dataclass(frozen=True)
class LadderRow:
    n: int
    exact: float | None
    predicted: float | None
    residual: float | None
    fluctuation: float | None
    error: str | None = None


@dataclass(frozen=True)
class LadderSummary:
    max_abs_residual: float
    median_early: float
    median_late: float
    fitted_slope: float | None
    fitted_slope_stderr: float | None
    fit_flagged: bool


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[LadderRow, ...]
    summary: LadderSummary


def _median(vals: Sequence[float]) -> float:
    s = sorted(vals)
    m = len(s)
    if m == 0:
        return math.nan
    return s[m // 2] if m % 2 else 0.5 * (s[m // 2 - 1] + s[m // 2])


def _fit_loglog(ns: Sequence[float], rs: Sequence[float]) -> tuple[float | None, float | None, bool]:
    """Least-squares slope of log|residual| against log n; rows at the
    noise floor are excluded and flag the fit."""
    xs, ys = [], []
    flagged = False
    for n, r in zip(ns, rs):
        if abs(r) < _FIT_FLOOR:
            flagged = True
            continue
        xs.append(math.log(n))
        ys.append(math.log(abs(r)))
    if len(xs) < 2:
        return None, None, True
    m = len(xs)
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0.0:
        return None, None, True
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    if m > 2:
        resid = sum((y - ybar - slope * (x - xbar)) ** 2 for x, y in zip(xs, ys))
        stderr = math.sqrt(resid / (m - 2) / sxx)
    else:
        stderr = math.inf
        flagged = True
    return slope, stderr, flagged


def convergence_ladder(
    params: ModelParams,
    gap: GapConfig,
    n_values: Sequence[int],
    policy: PrecisionPolicy = DEFAULT_POLICY,
    *,
    predictor: Callable[[int], float] | None = None,
    include_fluctuation: bool = True,
    threads: int = 1,
) -> ConvergenceReport:
    """Exact and predicted values with residuals over an ascending n ladder.

    Rows compute independently (optionally in parallel); per-row failures are
    recorded on the row instead of aborting the ladder.  A custom predictor
    substitutes for the expansion, which the self-comparison fixture uses.
    """
    if not n_values:
        raise DomainError("n ladder must be nonempty")
    if list(n_values) != sorted(n_values) or n_values[0] < 1:
        raise DomainError("n ladder must be ascending with every n >= 1")

    coeffs: ExpansionCoefficients | None = None
    if predictor is None:
        coeffs = expansion_coefficients(params, gap, policy=policy)

    def row(n: int) -> LadderRow:
        try:
            ex = exact_log_gap_probability(params, n, gap, policy).log_pn
            if predictor is not None:
                pred = predictor(n)
                fl = None
            else:
                pred = predicted_log_gap_probability(coeffs, n, include_fluctuation=include_fluctuation)
                fl = fluctuation(coeffs, n)
            return LadderRow(n=n, exact=ex, predicted=pred, residual=ex - pred, fluctuation=fl)
        except GapAsymError as exc:
            return LadderRow(n=n, exact=None, predicted=None, residual=None, fluctuation=None,
                             error=f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(row, n_values))
    else:
        rows = tuple(row(n) for n in n_values)

    good = [(r.n, r.residual) for r in rows if r.residual is not None]
    abs_res = [abs(res) for _, res in good]
    k = len(good)
    half = max(1, k // 2) if k else 0
    early = abs_res[:half] if k else []
    late = abs_res[k - half:] if k else []
    slope, stderr, flagged = _fit_loglog([n for n, _ in good], [res for _, res in good])
    summary = LadderSummary(
        max_abs_residual=max(abs_res) if abs_res else math.nan,
        median_early=_median(early),
        median_late=_median(late),
        fitted_slope=slope,
        fitted_slope_stderr=stderr,
        fit_flagged=flagged,
    )
    return ConvergenceReport(rows=rows, summary=summary)


def fluctuation_trace(
    coeffs: ExpansionCoefficients, n_range: Sequence[int]
) -> list[tuple[int, float]]:
    """The oscillatory term per n over a range; finite everywhere."""
    if not n_range:
        raise DomainError("n range must be nonempty")
    return [(int(n), fluctuation(coeffs, int(n))) for n in n_range]
