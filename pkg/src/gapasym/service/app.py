"""FastAPI application exposing the package over HTTP.

Run with:  uvicorn gapasym.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ConvergenceError, DomainError
from . import handlers
from . import schemas as s


def create_app() -> FastAPI:
    app = FastAPI(
        title="gapasym",
        version=__version__,
        description=(
            "Exact finite-n gap probabilities on centered annuli for the "
            "Mittag-Leffler family of planar determinantal point processes, "
            "their large-n expansions, and exact-vs-asymptotic verification."
        ),
    )

    @app.exception_handler(DomainError)
    async def _domain_error(_req: Request, exc: DomainError):
        return JSONResponse(
            status_code=400,
            content=s.ErrorBody(error=type(exc).__name__, detail=str(exc)).model_dump(),
        )

    @app.exception_handler(ConvergenceError)
    async def _convergence_error(_req: Request, exc: ConvergenceError):
        return JSONResponse(
            status_code=500,
            content=s.ErrorBody(error=type(exc).__name__, detail=str(exc)).model_dump(),
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__, "schema_version": s.SCHEMA_VERSION}

    @app.post("/v1/exact", response_model=s.ExactReport)
    def exact(req: s.ExactRequest) -> s.ExactReport:
        return handlers.handle_exact(req)

    @app.post("/v1/constants", response_model=s.ConstantsReport)
    def constants(req: s.ConstantsRequest) -> s.ConstantsReport:
        return handlers.handle_constants(req)

    @app.post("/v1/predict", response_model=s.PredictReport)
    def predict(req: s.PredictRequest) -> s.PredictReport:
        return handlers.handle_predict(req)

    @app.post("/v1/verify", response_model=s.VerifyReport)
    def verify(req: s.VerifyRequest) -> s.VerifyReport:
        return handlers.handle_verify(req)

    @app.post("/v1/trace", response_model=s.TraceReport)
    def trace(req: s.TraceRequest) -> s.TraceReport:
        return handlers.handle_trace(req)

    @app.post("/v1/mc", response_model=s.McReport)
    def mc(req: s.McRequest) -> s.McReport:
        return handlers.handle_mc(req)

    return app


app = create_app()
