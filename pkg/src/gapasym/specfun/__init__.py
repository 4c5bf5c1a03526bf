"""Special functions with cross-validated evaluation routes."""

from .barnes import log_barnes_g, log_q_pochhammer_sum, zeta_prime_minus_one
from .erfcfn import erfc, log_half_erfc
from .gammafn import (
    PARIS_MIN_RATIO,
    PARIS_MIN_Z,
    TEMME_MIN_A,
    TemmeFrame,
    log_gamma,
    log_reg_gamma_p,
    log_reg_gamma_q,
    log_reg_gamma_q_paris,
    reg_gamma_p,
    reg_gamma_p_temme,
    reg_gamma_q,
    reg_gamma_q_paris,
    reg_gamma_q_temme,
)
from .theta import jacobi_theta, log_jacobi_theta

__all__ = [
    "PARIS_MIN_RATIO",
    "PARIS_MIN_Z",
    "TEMME_MIN_A",
    "TemmeFrame",
    "erfc",
    "jacobi_theta",
    "log_barnes_g",
    "log_gamma",
    "log_half_erfc",
    "log_jacobi_theta",
    "log_q_pochhammer_sum",
    "log_reg_gamma_p",
    "log_reg_gamma_q",
    "log_reg_gamma_q_paris",
    "reg_gamma_p",
    "reg_gamma_p_temme",
    "reg_gamma_q",
    "reg_gamma_q_paris",
    "reg_gamma_q_temme",
    "zeta_prime_minus_one",
]
