"""Request and response models shared by the HTTP service and the CLI.

Every report carries the same envelope: a schema_version, the echoed model
parameters, the gap with its resolved case tag, a command-specific result, and
diagnostics.  The unbounded outer radius is serialized as the string "inf" so
reports stay valid strict JSON.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, field_validator

SCHEMA_VERSION = 1


def _ser_radius(v: float):
    return "inf" if math.isinf(v) else v


Radius = Annotated[float, PlainSerializer(_ser_radius, when_used="always")]


class ParamsSpec(BaseModel):
    """Ensemble parameters; give b either as a float or as a rational pair."""

    model_config = ConfigDict(extra="forbid")

    b: float | None = Field(default=None, gt=0)
    b_rational: tuple[int, int] | None = None
    alpha: float = Field(default=0.0, gt=-1)

    @field_validator("b_rational")
    @classmethod
    def _positive_pair(cls, v):
        if v is not None and (v[0] < 1 or v[1] < 1):
            raise ValueError("b_rational entries must be positive integers")
        return v

    def model_post_init(self, _ctx) -> None:
        if self.b is None and self.b_rational is None:
            raise ValueError("one of b, b_rational is required")


class ParamsOut(BaseModel):
    b: float
    alpha: float
    b_rational: tuple[int, int] | None = None


class GapOut(BaseModel):
    radii: list[Radius]
    case: str


class PolicySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    target_rel: float = Field(default=1e-10, gt=0)
    target_abs: float = Field(default=1e-14, gt=0)
    max_terms: int = Field(default=100_000, ge=1)
    quadrature_nodes: int = Field(default=64, ge=2)


class Diagnostics(BaseModel):
    routes_used: dict[str, int] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)


class _RequestBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: ParamsSpec
    radii: list[float] = Field(min_length=2)
    policy: PolicySpec | None = None


class ExactRequest(_RequestBase):
    n: int = Field(ge=1)
    include_terms: bool = False
    threads: int = Field(default=1, ge=1)


class ConstantsRequest(_RequestBase):
    g_route: Literal["auto", "limit", "closed_form"] = "auto"


class PredictRequest(_RequestBase):
    n_values: list[int] = Field(min_length=1)


class VerifyRequest(_RequestBase):
    n_values: list[int] = Field(min_length=1)
    threads: int = Field(default=1, ge=1)


class TraceRequest(_RequestBase):
    n_values: list[int] = Field(min_length=1)


class McRequest(_RequestBase):
    n: int = Field(ge=1)
    samples: int = Field(ge=1)
    seed: int = 0


class _ReportBase(BaseModel):
    schema_version: int = SCHEMA_VERSION
    params: ParamsOut
    gap: GapOut
    diagnostics: Diagnostics = Field(default_factory=Diagnostics)


class ExactPayload(BaseModel):
    n: int
    log_pn: float
    per_j_terms: list[float] | None = None


class ExactReport(_ReportBase):
    result: ExactPayload


class ThetaTermOut(BaseModel):
    rate: float
    offset: float
    tau_im: float


class ConstantsPayload(BaseModel):
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    theta_terms: list[ThetaTermOut]
    erfc_integrals: dict[str, float]


class ConstantsReport(_ReportBase):
    result: ConstantsPayload


class PredictRow(BaseModel):
    n: int
    predicted: float
    fluctuation: float


class PredictReport(_ReportBase):
    result: list[PredictRow]


class VerifyRow(BaseModel):
    n: int
    exact: float | None
    predicted: float | None
    residual: float | None
    fluctuation: float | None
    error: str | None = None


class VerifySummary(BaseModel):
    max_abs_residual: float
    median_early: float
    median_late: float
    fitted_slope: float | None
    fitted_slope_stderr: float | None
    fit_flagged: bool


class VerifyPayload(BaseModel):
    rows: list[VerifyRow]
    summary: VerifySummary


class VerifyReport(_ReportBase):
    result: VerifyPayload


class TraceRow(BaseModel):
    n: int
    fluctuation: float


class TracePayload(BaseModel):
    rows: list[TraceRow]
    min_fluctuation: float
    max_fluctuation: float


class TraceReport(_ReportBase):
    result: TracePayload


class McPayload(BaseModel):
    estimate: float
    std_err: float
    method: str
    insufficient_samples: bool
    samples: int
    seed: int


class McReport(_ReportBase):
    result: McPayload


class ErrorBody(BaseModel):
    error: str
    detail: str
