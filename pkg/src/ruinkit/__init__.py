"""ruinkit: survival probabilities for the discrete-time risk model
W(n) = u + 2n - (Z_1 + ... + Z_n).

Exact rational recurrences for the sequences x_n, y_n and the determinants
D_n, zero location for H(s) - s^2, partial-fraction asymptotics, survival
probabilities by three cross-checking routes, and independent finite-horizon
oracles (dynamic programming and seeded Monte Carlo).
"""

from .asymptotics import (
    AsymptoticCoefficients,
    compute_coefficients,
    determinant_ratio_limit,
    geometric_margin_factor,
    geometric_partial_fraction,
    margin_factor_from_coefficients,
    predict_Dn,
    predict_xn,
    verify_sign_monotonicity,
    xn_residuals,
)
from .distributions import ClaimDistribution, DistributionError, MomentReport
from .oracle import DPConfig, DPResult, MCConfig, MCResult, finite_horizon_dp, mc_estimate
from .recurrence import (
    ConjectureReport,
    SequenceTable,
    TableOverflowError,
    build_table,
    check_conjecture,
    determinants,
)
from .roots import (
    MomentConditionError,
    RootLocationError,
    RootProfile,
    find_alpha,
    find_beta,
    refine_alpha,
    root_profile,
    vanishing_order,
)
from .series import PowerSeries, SeriesError, deflate_G, pgf_minus_s2_series, pgf_series, series_divide
from .survival import (
    LimitEstimate,
    SurvivalSolution,
    initial_values_closed_form,
    initial_values_limit,
    phi_table,
    pi_values,
    regime,
    solve,
    xi_series,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticCoefficients",
    "ClaimDistribution",
    "ConjectureReport",
    "DistributionError",
    "DPConfig",
    "DPResult",
    "LimitEstimate",
    "MCConfig",
    "MCResult",
    "MomentConditionError",
    "MomentReport",
    "PowerSeries",
    "RootLocationError",
    "RootProfile",
    "SequenceTable",
    "SeriesError",
    "SurvivalSolution",
    "TableOverflowError",
    "build_table",
    "check_conjecture",
    "compute_coefficients",
    "deflate_G",
    "determinant_ratio_limit",
    "determinants",
    "find_alpha",
    "find_beta",
    "finite_horizon_dp",
    "geometric_margin_factor",
    "geometric_partial_fraction",
    "initial_values_closed_form",
    "initial_values_limit",
    "margin_factor_from_coefficients",
    "mc_estimate",
    "pgf_minus_s2_series",
    "pgf_series",
    "phi_table",
    "pi_values",
    "predict_Dn",
    "predict_xn",
    "refine_alpha",
    "regime",
    "root_profile",
    "series_divide",
    "solve",
    "vanishing_order",
    "verify_sign_monotonicity",
    "xi_series",
    "xn_residuals",
]
