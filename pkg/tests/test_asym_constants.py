import math

import pytest

from gapasym import DomainError, MissingRational, ModelParams
from gapasym.asym import (
    GRoute,
    _erfc_integrals_once,
    _i_plus_smooth,
    _j_any_integrand,
    _j_plus_smooth,
    erfc_integral_constants,
    gamma_sum_constant,
    log_theta_product,
)
from gapasym.quadrature import adaptive_quad, tanh_sinh
from gapasym.specfun import log_half_erfc, zeta_prime_minus_one

# frozen from an independent 40-digit evaluation (finite window + the same
# analytic tails at T = 30)
REF = {
    "i_minus": -0.3376684770344218621827399,
    "i_plus": -1.2896783215766568915693880,
    "j_minus": 0.1618661766853387476910996,
    "j_plus": -0.3525764698528426173783968,
}


class TestErfcIntegralConstants:
    def test_regression_values(self):
        ints = erfc_integral_constants()
        assert abs(ints.i_minus - REF["i_minus"]) < 1e-10
        assert abs(ints.i_plus - REF["i_plus"]) < 1e-10
        assert abs(ints.j_minus - REF["j_minus"]) < 1e-10
        assert abs(ints.j_plus - REF["j_plus"]) < 1e-10

    def test_dual_strategy_agreement(self):
        gk = _erfc_integrals_once(lambda f, a, b: adaptive_quad(f, a, b, target_abs=1e-13))
        ts = _erfc_integrals_once(lambda f, a, b: tanh_sinh(f, a, b, target_abs=1e-13))
        for x, y in zip(gk, ts):
            assert abs(x - y) < 1e-10

    def test_est_abs_err_covers_reference(self):
        ints = erfc_integral_constants()
        for key, ref in REF.items():
            assert abs(getattr(ints, key) - ref) <= 10 * ints.est_abs_err

    def test_both_c4_integrals_negative(self):
        # C4 < 0 then follows from the positive radii prefactor
        ints = erfc_integral_constants()
        assert ints.i_minus < 0 and ints.i_plus < 0

    def test_i_plus_integrand_decay(self):
        # integrand ~ -1/(2 y^2): y^2 * integrand stays bounded
        for k in range(5, 51):
            y = float(k)
            val = (log_half_erfc(y) + y * y + math.log(y) + math.log(2 * math.sqrt(math.pi)))
            assert abs(val * y * y) < 0.6

    def test_j_plus_integrand_decay(self):
        # integrand ~ -1/y^3: y^3 * integrand stays bounded
        for k in range(5, 51):
            y = float(k)
            val = _j_plus_smooth(y) + 2.0 * y * math.log(y)
            assert abs(val * y ** 3) < 1.5

    def test_i_minus_integrand_tail(self):
        assert abs(log_half_erfc(-10.0)) < math.exp(-50.0)
        assert abs(_j_any_integrand(-10.0)) < 25 * math.exp(-50.0)

    def test_smooth_forms_match_raw_integrands(self):
        for y in (0.3, 1.0, 3.0, 7.0):
            raw_i = log_half_erfc(y) + y * y + math.log(y) + math.log(2 * math.sqrt(math.pi))
            assert math.isclose(_i_plus_smooth(y) + math.log(y), raw_i, rel_tol=0, abs_tol=1e-12)
            raw_j = (
                2 * y * log_half_erfc(y)
                + math.exp(-y * y) * (1 - 5 * y * y) / (3 * math.sqrt(math.pi) * math.erfc(y))
                + 11.0 / 3.0 * y ** 3
                + 2 * y * math.log(y)
                + (0.5 + 2 * math.log(2 * math.sqrt(math.pi))) * y
            )
            assert math.isclose(_j_plus_smooth(y) + 2 * y * math.log(y), raw_j, rel_tol=0, abs_tol=1e-10)


GSUM_REFS = {
    (1, 1, 0.0): -0.1654211437004509292,
    (1, 2, 0.0): 0.0616950907664298082,
    (2, 1, 0.5): -0.1576272760832551528,
    (3, 2, 1.0): 0.3184613389301970565,
}


class TestGammaSumConstant:
    @pytest.mark.parametrize("key", sorted(GSUM_REFS))
    def test_closed_form_regression(self, key):
        n1, n2, alpha = key
        p = ModelParams.from_rational(n1, n2, alpha)
        assert abs(gamma_sum_constant(p, GRoute.CLOSED_FORM) - GSUM_REFS[key]) < 1e-12

    @pytest.mark.parametrize("key", sorted(GSUM_REFS))
    def test_dual_route(self, key):
        n1, n2, alpha = key
        p = ModelParams.from_rational(n1, n2, alpha)
        cf = gamma_sum_constant(p, GRoute.CLOSED_FORM)
        lim = gamma_sum_constant(p, GRoute.LIMIT)
        assert abs(cf - lim) < 1e-6

    def test_unit_case_reduces_to_zeta_prime(self):
        # n1 = n2 = 1, alpha = 0: every correction vanishes and the closed
        # form collapses to zeta'(-1)
        p = ModelParams.from_rational(1, 1, 0.0)
        assert abs(gamma_sum_constant(p, GRoute.CLOSED_FORM) - zeta_prime_minus_one()) < 1e-10

    def test_auto_route_selection(self):
        rational = ModelParams.from_rational(1, 2, 0.0)
        plain = ModelParams(0.5)
        assert abs(gamma_sum_constant(rational, GRoute.AUTO) - GSUM_REFS[(1, 2, 0.0)]) < 1e-12
        # float-only b falls back to the limit route
        assert abs(gamma_sum_constant(plain, GRoute.AUTO) - GSUM_REFS[(1, 2, 0.0)]) < 1e-6

    def test_closed_form_without_rational_raises(self):
        with pytest.raises(MissingRational):
            gamma_sum_constant(ModelParams(0.5), GRoute.CLOSED_FORM)

    def test_limit_route_for_irrational_b(self):
        # pi/3 has no rational route; the limit must still be finite and
        # stable under doubling the extrapolation base
        p = ModelParams(math.pi / 3.0)
        a = gamma_sum_constant(p, GRoute.LIMIT, n_limit=25_000)
        b = gamma_sum_constant(p, GRoute.LIMIT, n_limit=50_000)
        assert abs(a - b) < 1e-6


class TestLogThetaProduct:
    @pytest.mark.parametrize("x", (0.1, 0.3, 0.7))
    @pytest.mark.parametrize("rho", (0.3, 0.5, 0.8))
    @pytest.mark.parametrize("a", (0.5, 1.0, 2.0))
    def test_dual_route_grid(self, x, rho, a):
        assert abs(log_theta_product(x, rho, a, "series") - log_theta_product(x, rho, a, "closed")) < 1e-10

    def test_periodicity(self):
        for route in ("series", "closed"):
            v0 = log_theta_product(0.3, 0.5, 2.0, route)
            v1 = log_theta_product(1.3, 0.5, 2.0, route)
            assert abs(v0 - v1) < 1e-10

    def test_unit_a_reflection_symmetry(self):
        for x in (0.125, 0.3, 0.45):
            assert abs(log_theta_product(x, 0.6, 1.0, "series")
                       - log_theta_product(1.0 - x, 0.6, 1.0, "series")) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            log_theta_product(0.3, 1.2, 1.0)
        with pytest.raises(DomainError):
            log_theta_product(0.3, 0.5, -1.0)
        with pytest.raises(DomainError):
            log_theta_product(0.3, 0.5, 1.0, route="bogus")
