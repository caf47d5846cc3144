"""Gamma-function families, their log-complete monotonicity, and related inequalities."""

from .family import (
    FamilyParams,
    HFamilyParams,
    OrderError,
    h_special,
    log_f,
    log_f_derivative,
    log_h_beta,
    log_h_special,
)
from .inequalities import (
    CASE_IDS,
    InequalityCase,
    RegimeError,
    gamma_ratio_bound,
    gurland_weighted,
    identric_bound,
    identric_mean,
    misc_survey_bounds,
    polygamma_envelopes,
    psi_envelopes,
    shifted_envelopes,
    sweep,
)
from .report import ReportDocument
from .special import DomainError, EvalPrecision, digamma, guaranteed, ln_gamma, log_minus_digamma, polygamma
from .verifier import (
    LcmCheckConfig,
    LcmReport,
    RegionScan,
    check_lcm,
    classify_by_theorems,
    integrand,
    integrand_quadrature,
    integrand_test,
    scan_region,
)

__version__ = "0.1.0"
