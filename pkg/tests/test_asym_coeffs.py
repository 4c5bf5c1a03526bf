import math

import numpy as np
import pytest

from gapasym import (
    CaseTag,
    ExpansionCoefficients,
    GapConfig,
    ModelParams,
    ThetaTerm,
    annulus_log_mean,
    erfc_integral_constants,
    expansion_coefficients,
    fluctuation,
    predicted_log_gap_probability,
)

GINIBRE = ModelParams(1.0)
BULK_RADII = (0.2, 0.35, 0.5, 0.65, 0.8)


def _i_sum() -> float:
    ints = erfc_integral_constants()
    return ints.i_minus + ints.i_plus


class TestDiskSpecialization:
    """Ginibre disk hole: the four classical constants."""

    @pytest.mark.parametrize("r", BULK_RADII)
    def test_matches_closed_forms(self, r):
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, r)))
        assert co.case is CaseTag.DISK
        assert abs(co.c1 - (-(r ** 4) / 4.0)) < 1e-10
        assert abs(co.c2 - (-(r ** 2) / 2.0)) < 1e-10
        assert abs(co.c3 - r ** 2 * (1.0 - math.log(r * math.sqrt(2 * math.pi)))) < 1e-10
        assert abs(co.c4 - math.sqrt(2.0) * r * _i_sum()) < 1e-10

    def test_no_oscillation(self):
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, 0.5)))
        assert co.theta_terms == ()
        assert fluctuation(co, 57) == 0.0


class TestUnboundedSpecialization:
    """Ginibre unbounded annulus: third-order constants."""

    @pytest.mark.parametrize("r", BULK_RADII)
    def test_matches_closed_forms(self, r):
        co = expansion_coefficients(GINIBRE, GapConfig((r, math.inf)))
        assert co.case is CaseTag.UNBOUNDED
        assert abs(co.c1 - (r ** 4 / 4.0 - r ** 2 + 0.75 + math.log(r))) < 1e-10
        assert abs(co.c2 - (r ** 2 - 1.0) / 2.0) < 1e-10
        ref_c3 = (1 - r ** 2) * (1.0 - math.log(math.sqrt(2 * math.pi) * (1 - r ** 2) / r))
        assert abs(co.c3 - ref_c3) < 1e-10
        assert abs(co.c5 - (-0.25)) < 1e-12

    def test_no_oscillation(self):
        co = expansion_coefficients(GINIBRE, GapConfig((0.5, math.inf)))
        assert co.theta_terms == ()


class TestBulkSpecialization:
    """Ginibre annulus in the bulk: leading constant."""

    @pytest.mark.parametrize("r_lo,r_hi", [(0.2, 0.35), (0.35, 0.5), (0.2, 0.8), (0.5, 0.65)])
    def test_leading_constant(self, r_lo, r_hi):
        co = expansion_coefficients(GINIBRE, GapConfig((r_lo, r_hi)))
        a, b2 = r_lo ** 2, r_hi ** 2
        ref = (b2 - a) ** 2 / (4 * math.log(r_hi / r_lo)) - (b2 ** 2 - a ** 2) / 4.0
        assert abs(co.c1 - ref) < 1e-10
        assert co.c5 == 0.0  # no log n term for holes strictly in the bulk
        assert len(co.theta_terms) == 1

    def test_theta_term_data(self):
        r_lo, r_hi = 0.3, 0.5
        co = expansion_coefficients(GINIBRE, GapConfig((r_lo, r_hi)))
        term = co.theta_terms[0]
        t = annulus_log_mean(r_lo, r_hi, GINIBRE)
        assert math.isclose(term.rate, t, rel_tol=1e-14)
        assert math.isclose(term.tau_im, math.pi / math.log(r_hi / r_lo), rel_tol=1e-14)
        L = math.log(r_hi / r_lo)
        off = 0.5 - 0.0 + math.log((r_hi ** 2 - t) / (t - r_lo ** 2)) / (2 * L)
        assert math.isclose(term.offset, off, rel_tol=1e-13)

    def test_mean_point_inside_bracket(self):
        for p in (ModelParams(0.7), ModelParams(1.0), ModelParams(2.3, alpha=0.8)):
            co = expansion_coefficients(p, GapConfig((0.2, 0.4)))
            t = co.theta_terms[0].rate
            assert p.b * 0.2 ** (2 * p.b) < t < p.b * 0.4 ** (2 * p.b)


class TestDiskUnboundedCase:
    def test_no_oscillation_for_two_annuli(self):
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, 0.3, 0.6, math.inf)))
        assert co.case is CaseTag.DISK_UNBOUNDED
        assert co.theta_terms == ()
        assert abs(fluctuation(co, 100)) == 0.0

    def test_three_annuli_oscillates(self):
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, 0.2, 0.4, 0.5, 0.7, math.inf)))
        assert len(co.theta_terms) == 1

    def test_c5_combines_both_edges(self):
        # c5(disk+unbounded) = c5(disk) + c5(unbounded) for any (b, alpha)
        p = ModelParams(1.7, alpha=0.4)
        both = expansion_coefficients(p, GapConfig((0.0, 0.2, 0.5, math.inf)))
        disk = expansion_coefficients(p, GapConfig((0.0, 0.2)))
        unb = expansion_coefficients(p, GapConfig((0.5, math.inf)))
        assert math.isclose(both.c5, disk.c5 + unb.c5, rel_tol=1e-12)
        # the erfc j-integrals cancel between the edges, so c6 combines too
        assert math.isclose(both.c6, disk.c6 + unb.c6, rel_tol=1e-10)


class TestFluctuation:
    def test_empty_terms(self):
        co = ExpansionCoefficients(CaseTag.DISK, 0, 0, 0, 0, 0, 0, ())
        assert fluctuation(co, 10) == 0.0

    def test_period_in_real_argument(self):
        # each term has period 1/rate in the (real) n argument
        co = expansion_coefficients(GINIBRE, GapConfig((0.3, 0.5)))
        rate = co.theta_terms[0].rate
        x = 17.25
        assert abs(fluctuation(co, x) - fluctuation(co, x + 1.0 / rate)) < 1e-8

    def test_direct_series_oracle(self):
        # against a raw summation of the defining series, |l| <= 50
        co = expansion_coefficients(GINIBRE, GapConfig((0.3, 0.5)))
        term = co.theta_terms[0]
        n = 100
        z = term.rate * n + term.offset
        raw = sum(
            math.exp(-math.pi * ell * ell * term.tau_im) * math.cos(2 * math.pi * ell * z)
            for ell in range(-50, 51)
        )
        assert abs(fluctuation(co, n) - math.log(raw)) < 1e-12

    def test_wide_annulus_is_order_one(self):
        # oscillation becomes visible once the annulus ratio is large
        co = expansion_coefficients(GINIBRE, GapConfig((0.02, 0.5)))
        vals = [fluctuation(co, n) for n in range(1, 201)]
        assert all(math.isfinite(v) for v in vals)
        assert max(vals) - min(vals) > 0.05


class TestPredicted:
    def test_zero_coefficients(self):
        co = ExpansionCoefficients(CaseTag.BULK, 0, 0, 0, 0, 0, 0, ())
        assert predicted_log_gap_probability(co, 37) == 0.0

    def test_affine_in_c3(self):
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, 0.5)))
        bumped = ExpansionCoefficients(
            co.case, co.c1, co.c2, co.c3 + 1.0, co.c4, co.c5, co.c6, co.theta_terms
        )
        n = 123
        assert math.isclose(
            predicted_log_gap_probability(bumped, n) - predicted_log_gap_probability(co, n),
            float(n),
            rel_tol=1e-12,
        )

    def test_difference_from_four_term_truncation(self):
        # the full prediction minus the sqrt(n)-truncated form is exactly
        # c5 log n + c6 + F_n, bounded in n
        co = expansion_coefficients(GINIBRE, GapConfig((0.0, 0.5)))
        n = 400
        four_term = co.c1 * n * n + co.c2 * n * math.log(n) + co.c3 * n + co.c4 * math.sqrt(n)
        diff = predicted_log_gap_probability(co, n) - four_term
        assert math.isclose(diff, co.c5 * math.log(n) + co.c6, rel_tol=1e-10)
        assert abs(diff) < 10.0


class TestGeneralParameterCoefficients:
    @pytest.mark.parametrize("b,alpha", [(0.5, 0.0), (1.5, 0.3), (2.0, -0.5), (3.0, 1.0)])
    def test_all_cases_produce_finite_constants(self, b, alpha):
        p = ModelParams(b, alpha=alpha)
        rho = p.bulk_radius
        configs = [
            GapConfig((0.3 * rho, 0.5 * rho)),
            GapConfig((0.0, 0.4 * rho)),
            GapConfig((0.6 * rho, math.inf)),
            GapConfig((0.0, 0.3 * rho, 0.7 * rho, math.inf)),
        ]
        for gap in configs:
            co = expansion_coefficients(p, gap)
            for c in (co.c1, co.c2, co.c3, co.c4, co.c5, co.c6):
                assert math.isfinite(c)
            assert co.c4 < 0  # positive radii prefactor times negative integrals
            for t in co.theta_terms:
                assert t.tau_im > 0
