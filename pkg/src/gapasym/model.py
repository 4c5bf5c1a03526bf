"""Ensemble parameters, hole geometry, and the case classification.

The point process lives in the plane with weight |z|^(2*alpha) * exp(-n |z|^(2b));
its points fill the disk of radius b**(-1/(2b)) as n grows.  A hole region is a
union of g centered annuli given by an even, strictly increasing radii list
r_1 < ... < r_2g.  The first radius may be 0 (the innermost annulus is a disk)
and the last may be +inf (the outermost annulus is unbounded); every other
radius must sit strictly inside the bulk disk.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DegenerateRadii, DomainError, HardEdgeRadius, RadiiOutOfBulk


class CaseTag(enum.Enum):
    """Which of the four admissible hole geometries a configuration is."""

    BULK = "BULK"                      # all annuli strictly inside the bulk
    UNBOUNDED = "UNBOUNDED"            # last annulus reaches infinity
    DISK = "DISK"                      # first annulus is a disk
    DISK_UNBOUNDED = "DISK_UNBOUNDED"  # both of the above (needs g >= 2)


@dataclass(frozen=True)
class ModelParams:
    """Ensemble exponent b > 0 and charge alpha > -1.

    When b is known as an exact ratio n1/n2, pass it via ``from_rational`` so
    the closed-form route of the gamma-sum constant becomes available; a float
    b is never silently promoted to a rational.
    """

    b: float
    alpha: float = 0.0
    b_rational: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not (self.b > 0):
            raise DomainError(f"b must be > 0, got {self.b}")
        if not (self.alpha > -1):
            raise DomainError(f"alpha must be > -1, got {self.alpha}")
        if self.b_rational is not None:
            n1, n2 = self.b_rational
            if n1 < 1 or n2 < 1 or n1 != int(n1) or n2 != int(n2):
                raise DomainError("b_rational must be a pair of positive integers")
            if self.b != n1 / n2:
                raise DomainError("b_rational inconsistent with b; construct via from_rational")

    @classmethod
    def from_rational(cls, n1: int, n2: int, alpha: float = 0.0) -> "ModelParams":
        return cls(b=n1 / n2, alpha=alpha, b_rational=(int(n1), int(n2)))

    @property
    def bulk_radius(self) -> float:
        """Support radius b**(-1/(2b)) of the limiting density."""
        return self.b ** (-1.0 / (2.0 * self.b))


@dataclass(frozen=True)
class GapConfig:
    """Ordered radii r_1 < ... < r_2g of the hole annuli.

    Radii must be sorted by the caller; an unsorted list is an error, never
    silently fixed.  ``fixture`` relaxes the strict-increase requirement so
    unit tests can build zero-width holes (mass 0, log term 0); the relaxed
    form is rejected by ``classify``.
    """

    radii: tuple[float, ...]
    _allow_zero_width: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        r = tuple(float(x) for x in self.radii)
        object.__setattr__(self, "radii", r)
        if len(r) < 2 or len(r) % 2 != 0:
            raise DomainError(f"radii list must have positive even length, got {len(r)}")
        if r[0] < 0:
            raise DomainError("radii must be nonnegative")
        if any(math.isnan(x) for x in r):
            raise DomainError("radii must not be NaN")
        if any(math.isinf(x) for x in r[:-1]):
            raise DomainError("only the last radius may be infinite")
        for lo, hi in zip(r, r[1:]):
            if lo > hi:
                raise DomainError(f"radii must be sorted ascending, got {lo} > {hi}")
            if lo == hi and not self._allow_zero_width:
                raise DegenerateRadii(f"equal radii {lo} are not allowed")

    @classmethod
    def fixture(cls, radii) -> "GapConfig":
        """Zero-width-tolerant constructor for test fixtures only."""
        return cls(tuple(radii), _allow_zero_width=True)

    @property
    def g(self) -> int:
        """Number of hole annuli."""
        return len(self.radii) // 2

    @property
    def pairs(self) -> tuple[tuple[float, float], ...]:
        """Hole annuli as (inner, outer) radius pairs."""
        r = self.radii
        return tuple((r[2 * k], r[2 * k + 1]) for k in range(self.g))


def classify(gap: GapConfig, params: ModelParams, *, enforce_bulk: bool = True) -> CaseTag:
    """Map a (gap, params) pair to the unique admissible case.

    Raises HardEdgeRadius when a radius equals the bulk radius, RadiiOutOfBulk
    when a finite radius exceeds it, and DegenerateRadii for zero-width
    fixtures, which are a computational convention of the exact layer only.
    enforce_bulk=False skips the bulk-disk checks; the exact formula does not
    need them, the expansions do.
    """
    for lo, hi in gap.pairs:
        if lo == hi:
            raise DegenerateRadii("zero-width annuli are not classifiable")
    rho = params.bulk_radius
    for r in gap.radii:
        if math.isinf(r) or not enforce_bulk:
            continue
        if r == rho:
            raise HardEdgeRadius(f"radius {r} sits on the bulk boundary {rho}")
        if r > rho:
            raise RadiiOutOfBulk(f"radius {r} exceeds the bulk radius {rho}")
    has_disk = gap.radii[0] == 0.0
    has_unbounded = math.isinf(gap.radii[-1])
    if has_disk and has_unbounded:
        if gap.g < 2:
            raise DomainError("a hole covering 0 and infinity needs at least two annuli")
        return CaseTag.DISK_UNBOUNDED
    if has_disk:
        return CaseTag.DISK
    if has_unbounded:
        return CaseTag.UNBOUNDED
    return CaseTag.BULK


def limiting_density(z_modulus: float, params: ModelParams) -> float:
    """Radial profile b^2/pi * |z|^(2b-2) of the limiting density, 0 outside
    the bulk disk.  Integrates to 1 over the plane."""
    if z_modulus < 0:
        raise DomainError("modulus must be nonnegative")
    if z_modulus > params.bulk_radius:
        return 0.0
    b = params.b
    if z_modulus == 0.0:
        if b < 1.0:
            return math.inf
        if b == 1.0:
            return 1.0 / math.pi
        return 0.0
    return b * b / math.pi * z_modulus ** (2.0 * b - 2.0)


def annulus_log_mean(r_lo: float, r_hi: float, params: ModelParams) -> float:
    """Logarithmic mean of b*r^(2b) across an annulus [r_lo, r_hi].

    Equals (r_hi^(2b) - r_lo^(2b)) / (2 log(r_hi/r_lo)) and lies strictly
    between b*r_lo^(2b) and b*r_hi^(2b).  This is the point where the index
    fraction j/n crosses the annulus in the expansion's saddle analysis, and
    it drives both the constant terms and the oscillation frequency.
    """
    if r_lo == r_hi:
        raise DegenerateRadii("annulus has zero width")
    if not (0.0 < r_lo < r_hi) or math.isinf(r_hi):
        raise DomainError("need 0 < r_lo < r_hi < inf")
    b = params.b
    # log1p/expm1 form keeps accuracy when the annulus is narrow
    d = math.log1p((r_hi - r_lo) / r_lo)
    return r_lo ** (2.0 * b) * math.expm1(2.0 * b * d) / (2.0 * d)
