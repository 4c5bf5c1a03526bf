"""Numerical tolerances and budgets threaded through the computational layers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PrecisionPolicy:
    """Accuracy targets and iteration budgets for series, continued fractions
    and quadrature.

    target_rel / target_abs bound the accepted relative/absolute error of a
    single primitive evaluation; max_terms caps any single series or continued
    fraction; quadrature_nodes is the starting Gauss-Legendre panel size (the
    fallback doubles it until two successive estimates agree).
    """

    target_rel: float = 1e-10
    target_abs: float = 1e-14
    max_terms: int = 100_000
    quadrature_nodes: int = 64

    def __post_init__(self) -> None:
        if self.target_rel <= 0 or self.target_abs <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.quadrature_nodes < 2:
            raise DomainError("quadrature_nodes must be >= 2")


DEFAULT_POLICY = PrecisionPolicy()
