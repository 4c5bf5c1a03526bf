"""Command handlers mapping request models onto the core package.

The FastAPI app and the CLI both call these, so a report is identical whether
it was produced over HTTP or at the terminal.  This module deliberately does
not import FastAPI.
"""

from __future__ import annotations

import math

from .. import asym, exact, verify
from ..errors import DomainError, HardEdgeRadius, RadiiOutOfBulk
from ..model import GapConfig, ModelParams, classify
from ..policy import DEFAULT_POLICY, PrecisionPolicy
from . import schemas as s


def _params(spec: s.ParamsSpec) -> ModelParams:
    if spec.b_rational is not None:
        n1, n2 = spec.b_rational
        if spec.b is not None and spec.b != n1 / n2:
            raise DomainError("b and b_rational disagree")
        return ModelParams.from_rational(n1, n2, spec.alpha)
    return ModelParams(b=spec.b, alpha=spec.alpha)


def _policy(spec: s.PolicySpec | None) -> PrecisionPolicy:
    if spec is None:
        return DEFAULT_POLICY
    return PrecisionPolicy(
        target_rel=spec.target_rel,
        target_abs=spec.target_abs,
        max_terms=spec.max_terms,
        quadrature_nodes=spec.quadrature_nodes,
    )


def _envelope(
    params: ModelParams, gap: GapConfig, *, enforce_bulk: bool = True
) -> tuple[s.ParamsOut, s.GapOut, list[str]]:
    """Echoed parameters and gap with resolved case.

    The exact formula and the sampler are valid for any sorted radii, so their
    handlers relax the bulk-disk restriction and warn instead; the expansion
    handlers keep it, since the theorems assume strictly interior radii.
    """
    warnings: list[str] = []
    try:
        case = classify(gap, params)
    except (HardEdgeRadius, RadiiOutOfBulk):
        if enforce_bulk:
            raise
        case = classify(gap, params, enforce_bulk=False)
        warnings.append(
            "radii are not strictly inside the bulk disk; the asymptotic expansions do not apply"
        )
    return (
        s.ParamsOut(b=params.b, alpha=params.alpha, b_rational=params.b_rational),
        s.GapOut(radii=list(gap.radii), case=case.value),
        warnings,
    )


def handle_exact(req: s.ExactRequest) -> s.ExactReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap, enforce_bulk=False)
    res = exact.exact_log_gap_probability(
        params, req.n, gap, _policy(req.policy), keep_terms=req.include_terms, threads=req.threads
    )
    return s.ExactReport(
        params=p_out,
        gap=g_out,
        result=s.ExactPayload(n=res.n, log_pn=res.log_pn, per_j_terms=res.per_j_terms),
        diagnostics=s.Diagnostics(
            routes_used={k: v for k, v in res.routes_used.items() if v}, warnings=warnings
        ),
    )


def _g_route(name: str) -> asym.GRoute:
    return {"auto": asym.GRoute.AUTO, "limit": asym.GRoute.LIMIT, "closed_form": asym.GRoute.CLOSED_FORM}[name]


def handle_constants(req: s.ConstantsRequest) -> s.ConstantsReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap)
    policy = _policy(req.policy)
    co = asym.expansion_coefficients(params, gap, policy=policy, g_route=_g_route(req.g_route))
    ints = asym.erfc_integral_constants(policy)
    if gap.radii[0] == 0.0 and params.b_rational is None and req.g_route != "limit":
        warnings.append("gamma-sum constant used the extrapolated limit route (no rational b given)")
    return s.ConstantsReport(
        params=p_out,
        gap=g_out,
        result=s.ConstantsPayload(
            c1=co.c1, c2=co.c2, c3=co.c3, c4=co.c4, c5=co.c5, c6=co.c6,
            theta_terms=[s.ThetaTermOut(rate=t.rate, offset=t.offset, tau_im=t.tau_im) for t in co.theta_terms],
            erfc_integrals={
                "i_minus": ints.i_minus,
                "i_plus": ints.i_plus,
                "j_minus": ints.j_minus,
                "j_plus": ints.j_plus,
                "est_abs_err": ints.est_abs_err,
            },
        ),
        diagnostics=s.Diagnostics(warnings=warnings),
    )


def handle_predict(req: s.PredictRequest) -> s.PredictReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap)
    co = asym.expansion_coefficients(params, gap, policy=_policy(req.policy))
    rows = []
    for n in req.n_values:
        rows.append(
            s.PredictRow(
                n=n,
                predicted=asym.predicted_log_gap_probability(co, n),
                fluctuation=asym.fluctuation(co, n),
            )
        )
    return s.PredictReport(params=p_out, gap=g_out, result=rows,
                           diagnostics=s.Diagnostics(warnings=warnings))


def handle_verify(req: s.VerifyRequest) -> s.VerifyReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap)
    rep = verify.convergence_ladder(
        params, gap, list(req.n_values), _policy(req.policy), threads=req.threads
    )
    rows = [
        s.VerifyRow(
            n=r.n, exact=r.exact, predicted=r.predicted,
            residual=r.residual, fluctuation=r.fluctuation, error=r.error,
        )
        for r in rep.rows
    ]
    su = rep.summary
    warnings = warnings + [f"row n={r.n}: {r.error}" for r in rep.rows if r.error]
    return s.VerifyReport(
        params=p_out,
        gap=g_out,
        result=s.VerifyPayload(
            rows=rows,
            summary=s.VerifySummary(
                max_abs_residual=su.max_abs_residual,
                median_early=su.median_early,
                median_late=su.median_late,
                fitted_slope=su.fitted_slope,
                fitted_slope_stderr=su.fitted_slope_stderr,
                fit_flagged=su.fit_flagged,
            ),
        ),
        diagnostics=s.Diagnostics(warnings=warnings),
    )


def handle_trace(req: s.TraceRequest) -> s.TraceReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap)
    co = asym.expansion_coefficients(params, gap, policy=_policy(req.policy))
    pairs = verify.fluctuation_trace(co, list(req.n_values))
    vals = [f for _, f in pairs]
    return s.TraceReport(
        params=p_out,
        gap=g_out,
        result=s.TracePayload(
            rows=[s.TraceRow(n=n, fluctuation=f) for n, f in pairs],
            min_fluctuation=min(vals),
            max_fluctuation=max(vals),
        ),
        diagnostics=s.Diagnostics(warnings=warnings),
    )


def handle_mc(req: s.McRequest) -> s.McReport:
    params = _params(req.params)
    gap = GapConfig(tuple(req.radii))
    p_out, g_out, warnings = _envelope(params, gap, enforce_bulk=False)
    est = exact.mc_gap_probability(params, req.n, gap, req.samples, req.seed, _policy(req.policy))
    if est.method == "analytic":
        warnings.append("probability below the Monte Carlo floor; analytic value returned")
    if est.insufficient_samples:
        warnings.append("no surviving samples; estimate is not a Monte Carlo result")
    return s.McReport(
        params=p_out,
        gap=g_out,
        result=s.McPayload(
            estimate=est.estimate,
            std_err=est.std_err,
            method=est.method,
            insufficient_samples=est.insufficient_samples,
            samples=est.samples,
            seed=est.seed,
        ),
        diagnostics=s.Diagnostics(warnings=warnings),
    )
