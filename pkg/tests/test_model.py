import math

import pytest
from scipy.integrate import quad

from gapasym import (
    CaseTag,
    DegenerateRadii,
    DomainError,
    GapConfig,
    HardEdgeRadius,
    ModelParams,
    RadiiOutOfBulk,
    annulus_log_mean,
    classify,
    limiting_density,
)


class TestModelParams:
    def test_rejects_bad_b(self):
        with pytest.raises(DomainError):
            ModelParams(b=0.0)
        with pytest.raises(DomainError):
            ModelParams(b=-1.0)

    def test_rejects_bad_alpha(self):
        with pytest.raises(DomainError):
            ModelParams(b=1.0, alpha=-1.0)

    def test_rational_constructor_is_exact(self):
        p = ModelParams.from_rational(3, 2, alpha=0.5)
        assert p.b == 3 / 2
        assert p.b_rational == (3, 2)

    def test_inconsistent_rational_rejected(self):
        with pytest.raises(DomainError):
            ModelParams(b=1.4, b_rational=(3, 2))

    def test_bulk_radius(self):
        assert ModelParams(1.0).bulk_radius == 1.0
        p = ModelParams(2.0)
        assert math.isclose(p.bulk_radius, 2.0 ** (-0.25), rel_tol=1e-15)


class TestGapConfig:
    def test_unsorted_rejected(self):
        with pytest.raises(DomainError):
            GapConfig((0.5, 0.3))

    def test_equal_radii_rejected(self):
        with pytest.raises(DegenerateRadii):
            GapConfig((0.3, 0.3))

    def test_fixture_allows_zero_width(self):
        g = GapConfig.fixture((0.3, 0.3))
        assert g.g == 1

    def test_odd_length_rejected(self):
        with pytest.raises(DomainError):
            GapConfig((0.1, 0.2, 0.3))

    def test_interior_inf_rejected(self):
        with pytest.raises(DomainError):
            GapConfig((0.1, math.inf, 0.2, 0.3))


class TestClassify:
    def test_four_cases(self):
        p = ModelParams(1.0)
        assert classify(GapConfig((0.3, 0.5)), p) is CaseTag.BULK
        assert classify(GapConfig((0.0, 0.5)), p) is CaseTag.DISK
        assert classify(GapConfig((0.5, math.inf)), p) is CaseTag.UNBOUNDED
        assert classify(GapConfig((0.0, 0.2, 0.5, math.inf)), p) is CaseTag.DISK_UNBOUNDED

    def test_disk_unbounded_needs_two_annuli(self):
        with pytest.raises(DomainError):
            classify(GapConfig((0.0, math.inf)), ModelParams(1.0))

    def test_bulk_violations(self):
        p = ModelParams(1.0)
        with pytest.raises(RadiiOutOfBulk):
            classify(GapConfig((0.5, 1.5)), p)
        with pytest.raises(HardEdgeRadius):
            classify(GapConfig((0.5, 1.0)), p)
        # the hard-edge error is a kind of out-of-bulk error
        assert issubclass(HardEdgeRadius, RadiiOutOfBulk)

    def test_enforce_bulk_off(self):
        p = ModelParams(1.0)
        assert classify(GapConfig((0.5, 1.5)), p, enforce_bulk=False) is CaseTag.BULK

    def test_zero_width_fixture_not_classifiable(self):
        with pytest.raises(DegenerateRadii):
            classify(GapConfig.fixture((0.3, 0.3)), ModelParams(1.0))

    def test_deterministic(self):
        p = ModelParams(2.0, alpha=0.5)
        g = GapConfig((0.1, 0.3, 0.5, 0.6))
        assert classify(g, p) is classify(g, p)


class TestLimitingDensity:
    def test_uniform_for_b_one(self):
        p = ModelParams(1.0)
        assert math.isclose(limiting_density(0.5, p), 1 / math.pi, rel_tol=1e-15)

    def test_zero_outside_support(self):
        assert limiting_density(2.0, ModelParams(1.0)) == 0.0

    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0, 3.0])
    def test_integrates_to_one(self, b):
        p = ModelParams(b)
        total, _ = quad(lambda u: limiting_density(u, p) * 2 * math.pi * u, 0, p.bulk_radius,
                        epsabs=1e-13, epsrel=1e-13, limit=200)
        assert abs(total - 1.0) < 1e-10

    def test_negative_modulus_rejected(self):
        with pytest.raises(DomainError):
            limiting_density(-0.1, ModelParams(1.0))


class TestAnnulusLogMean:
    def test_direct_arithmetic_b1(self):
        p = ModelParams(1.0)
        expected = (0.25 - 0.09) / (2 * math.log(0.5 / 0.3))
        assert math.isclose(annulus_log_mean(0.3, 0.5, p), expected, rel_tol=1e-14)

    def test_direct_arithmetic_b2(self):
        p = ModelParams(2.0)
        expected = (0.5**4 - 0.3**4) / (2 * math.log(0.5 / 0.3))
        assert math.isclose(annulus_log_mean(0.3, 0.5, p), expected, rel_tol=1e-14)

    @pytest.mark.parametrize("b", [0.5, 1.0, 1.5, 2.0, 3.0])
    @pytest.mark.parametrize("r_lo,r_hi", [(0.1, 0.2), (0.3, 0.5), (0.2, 0.7)])
    def test_mean_value_property(self, b, r_lo, r_hi):
        p = ModelParams(b)
        t = annulus_log_mean(r_lo, r_hi, p)
        assert b * r_lo ** (2 * b) < t < b * r_hi ** (2 * b)

    def test_narrow_annulus_limit(self):
        # as the annulus collapses, the log mean tends to b r^(2b)
        p = ModelParams(1.7)
        r = 0.4
        t = annulus_log_mean(r, r * (1 + 1e-9), p)
        assert math.isclose(t, 1.7 * r ** 3.4, rel_tol=1e-8)

    def test_monotone_in_each_radius(self):
        p = ModelParams(1.0)
        base = annulus_log_mean(0.3, 0.5, p)
        assert annulus_log_mean(0.31, 0.5, p) > base
        assert annulus_log_mean(0.3, 0.51, p) > base

    def test_errors(self):
        p = ModelParams(1.0)
        with pytest.raises(DegenerateRadii):
            annulus_log_mean(0.3, 0.3, p)
        with pytest.raises(DomainError):
            annulus_log_mean(0.5, 0.3, p)
        with pytest.raises(DomainError):
            annulus_log_mean(0.0, 0.3, p)
