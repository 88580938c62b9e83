"""Coverage and rate analysis of K-tier Poisson cellular networks.

Closed-form (piecewise-linear-approximation) coverage probability and
average achievable rate under Nakagami-m fading, with two independent
oracles: adaptive quadrature of the exact integrals and a seeded Monte
Carlo simulation of the Poisson network.
"""

from .analysis import (
    CoverageResult,
    Method,
    RateResult,
    average_rate,
    conditional_ccdf,
    coverage_probability,
    coverage_rayleigh,
    coverage_reference,
    rate_rayleigh,
    rate_reference,
)
from .model import (
    DerivedConstants,
    NetworkParams,
    TierParams,
    derived_constants,
    interference_constant,
    rate_constant,
    tier_script_I,
    validate,
)
from .mcsim import Estimate, SimConfig, mc_conditional_rate, mc_coverage
from .pla import (
    PlaCoefficients,
    QuadratureError,
    approx_gamma_kernel_integral,
    exact_gamma_kernel_integral,
    pla_coefficients,
)
from .specfun import (
    BellArguments,
    beta_function,
    d_sequence,
    hyp2f1_rate,
    lower_incomplete_gamma,
    partial_bell,
)

__version__ = "0.1.0"
