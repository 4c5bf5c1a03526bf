"""Command-line front end.

A thin client over the service handlers: flags are parsed into the same
request models the HTTP endpoints consume, so a CLI report and a service
response are byte-for-byte the same JSON document.

Exit codes: 0 success, 2 invalid usage or parameters, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Any

from pydantic import ValidationError

from .errors import ConvergenceError, DomainError, GapAsymError
from .service import handlers
from .service import schemas as s

_CSV_HEADER = "n,exact,predicted,residual,fluctuation"


def _fmt_float(x: float) -> str:
    # 17 significant digits: lossless double round-trip
    if math.isnan(x):
        return "null"
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _dump_json(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(f'{inner}"{k}": {_dump_json(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{inner}{_dump_json(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _parse_b(text: str) -> tuple[float | None, tuple[int, int] | None]:
    """'3/2' populates the rational pair; a plain decimal stays float-only."""
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            n1, n2 = int(num), int(den)
        except ValueError:
            raise DomainError(f"rational b must look like 3/2, got {text!r}")
        if n1 < 1 or n2 < 1:
            raise DomainError("rational b needs positive integers")
        return None, (n1, n2)
    try:
        return float(text), None
    except ValueError:
        raise DomainError(f"could not parse b: {text!r}")


def _parse_radii(text: str) -> list[float]:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece.lower() in ("inf", "+inf", "infinity"):
            out.append(math.inf)
            continue
        try:
            out.append(float(piece))
        except ValueError:
            raise DomainError(f"could not parse radius {piece!r}")
    return out


def _parse_n_list(text: str) -> list[int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise DomainError(f"could not parse n range {text!r}")
        if hi_i < lo_i:
            raise DomainError("n range must be ascending")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise DomainError(f"could not parse n list {text!r}")


def _default_threads() -> int:
    env = os.environ.get("GAPASYM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapasym",
        description="Gap probabilities on centered annuli: exact finite-n values, "
        "large-n expansion constants, and convergence verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_n: str | None) -> None:
        p.add_argument("--b", required=True, help="exponent b: decimal (1.5) or rational (3/2)")
        p.add_argument("--alpha", type=float, default=0.0, help="charge alpha > -1")
        p.add_argument("--radii", required=True, help="comma-separated ascending radii; 'inf' allowed last")
        if needs_n == "single":
            p.add_argument("--n", required=True, type=int, help="number of points")
        elif needs_n == "list":
            p.add_argument("--n", required=True, help="comma list (64,128,...) or range (1:200)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker cap; results do not depend on it")
        p.add_argument("--target-rel", type=float, default=None, help="relative tolerance override")
        p.add_argument("--target-abs", type=float, default=None, help="absolute tolerance override")
        p.add_argument("--max-terms", type=int, default=None, help="series length cap override")
        p.add_argument("--quad-nodes", type=int, default=None, help="starting quadrature panel size")

    p_exact = sub.add_parser("exact", help="exact log gap probability at one n")
    common(p_exact, "single")
    p_exact.add_argument("--include-terms", action="store_true", help="emit the per-j log terms")

    p_const = sub.add_parser("constants", help="expansion constants C1..C6 and theta data")
    common(p_const, None)
    p_const.add_argument("--g-route", choices=("auto", "limit", "closed_form"), default="auto")

    p_pred = sub.add_parser("predict", help="asymptotic prediction over an n list")
    common(p_pred, "list")

    p_ver = sub.add_parser("verify", help="exact-vs-predicted convergence ladder")
    common(p_ver, "list")

    p_tr = sub.add_parser("trace", help="oscillatory term over an n range")
    common(p_tr, "list")

    p_mc = sub.add_parser("mc", help="Monte Carlo estimate from the radii sampler")
    common(p_mc, "single")
    p_mc.add_argument("--samples", required=True, type=int)
    p_mc.add_argument("--seed", type=int, default=0)

    return parser


def _policy_spec(args: argparse.Namespace) -> s.PolicySpec | None:
    overrides = {
        k: v
        for k, v in (
            ("target_rel", args.target_rel),
            ("target_abs", args.target_abs),
            ("max_terms", args.max_terms),
            ("quadrature_nodes", args.quad_nodes),
        )
        if v is not None
    }
    return s.PolicySpec(**overrides) if overrides else None


def _build_report(args: argparse.Namespace):
    b, b_rational = _parse_b(args.b)
    params = s.ParamsSpec(b=b, b_rational=b_rational, alpha=args.alpha)
    radii = _parse_radii(args.radii)
    policy = _policy_spec(args)
    if args.command == "exact":
        return handlers.handle_exact(
            s.ExactRequest(params=params, radii=radii, n=args.n, policy=policy,
                           include_terms=args.include_terms, threads=args.threads)
        )
    if args.command == "constants":
        return handlers.handle_constants(
            s.ConstantsRequest(params=params, radii=radii, policy=policy, g_route=args.g_route)
        )
    if args.command == "predict":
        return handlers.handle_predict(
            s.PredictRequest(params=params, radii=radii, policy=policy, n_values=_parse_n_list(args.n))
        )
    if args.command == "verify":
        return handlers.handle_verify(
            s.VerifyRequest(params=params, radii=radii, policy=policy,
                            n_values=_parse_n_list(args.n), threads=args.threads)
        )
    if args.command == "trace":
        return handlers.handle_trace(
            s.TraceRequest(params=params, radii=radii, policy=policy, n_values=_parse_n_list(args.n))
        )
    if args.command == "mc":
        return handlers.handle_mc(
            s.McRequest(params=params, radii=radii, policy=policy, n=args.n,
                        samples=args.samples, seed=args.seed)
        )
    raise DomainError(f"unknown command {args.command!r}")


def _csv_cell(x) -> str:
    return "" if x is None else format(x, ".17g")


def _to_csv(report) -> str:
    lines = [_CSV_HEADER]
    if isinstance(report, s.VerifyReport):
        for r in report.result.rows:
            lines.append(",".join([str(r.n), _csv_cell(r.exact), _csv_cell(r.predicted),
                                   _csv_cell(r.residual), _csv_cell(r.fluctuation)]))
    elif isinstance(report, s.TraceReport):
        for r in report.result.rows:
            lines.append(",".join([str(r.n), "", "", "", _csv_cell(r.fluctuation)]))
    elif isinstance(report, s.PredictReport):
        for r in report.result:
            lines.append(",".join([str(r.n), "", _csv_cell(r.predicted), "", _csv_cell(r.fluctuation)]))
    else:
        raise DomainError("csv output is only available for verify, trace and predict")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _build_report(args)
        if args.format == "csv":
            text = _to_csv(report)
        else:
            text = _dump_json(report.model_dump(mode="python")) + "\n"
    except (DomainError, ValidationError) as exc:
        msg = str(exc).splitlines()[0] if isinstance(exc, ValidationError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GapAsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
