"""Coverage probability and average achievable rate of the typical user.

Closed forms (PLA-based), the Rayleigh specialisations, and quadrature
references that bypass the piecewise-linear step.  Rates are in nats per
channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy import integrate

from . import model, pla
from .model import NetworkParams
from .pla import QuadratureError
from .specfun import lower_incomplete_gamma  # noqa: F401  (re-export convenience)

__all__ = [
    "Method",
    "CoverageResult",
    "RateResult",
    "coverage_probability",
    "coverage_rayleigh",
    "coverage_reference",
    "conditional_ccdf",
    "average_rate",
    "rate_rayleigh",
    "rate_reference",
]

# A closed-form probability outside [0,1] by more than this is a formula
# bug, not floating-point noise.
_CLAMP_TOL = 1e-9


class Method(Enum):
    CLOSED_FORM = "closed_form"
    RAYLEIGH_CLOSED_FORM = "rayleigh_closed_form"
    QUADRATURE_REFERENCE = "quadrature_reference"


@dataclass(frozen=True)
class CoverageResult:
    value: float
    method: Method


@dataclass(frozen=True)
class RateResult:
    value: float
    method: Method


def _clamp_probability(p: float, context: str) -> float:
    if p < -_CLAMP_TOL or p > 1.0 + _CLAMP_TOL:
        raise ArithmeticError(f"{context} produced probability {p}, outside [0,1]")
    return min(max(p, 0.0), 1.0)


def _tier_weights(params: NetworkParams, script_i) -> list[float]:
    """pi lambda_i P_i^(2/a) beta_i^(-2/a) I_i for each tier."""
    e = 2.0 / params.alpha
    return [
        math.pi * t.density * t.power**e * t.threshold**-e * si
        for t, si in zip(params.tiers, script_i)
    ]


def coverage_probability(params: NetworkParams, kernel=None) -> CoverageResult:
    """P_c = sum_i pi lambda_i P_i^(2/a) beta_i^(-2/a) I_i (PLA closed form)."""
    model.require_valid(params)
    if kernel is None:
        kernel = pla.approx_gamma_kernel_integral
        method = Method.CLOSED_FORM
    else:
        method = Method.QUADRATURE_REFERENCE
    script_i = [tier_script_i_cached(params, i, kernel) for i in range(params.n_tiers)]
    p = sum(_tier_weights(params, script_i))
    return CoverageResult(value=_clamp_probability(p, "coverage"), method=method)


def coverage_reference(params: NetworkParams) -> CoverageResult:
    """Same tier sums as the closed form, with exact quadrature kernels.

    This (not the PLA form) is the yardstick for the approximation-loss
    claim; quadrature failures surface as QuadratureError.
    """
    return coverage_probability(params, kernel=pla.exact_gamma_kernel_integral)


def tier_script_i_cached(params: NetworkParams, tier_index: int, kernel) -> float:
    """I_i depends on the tier only through its Nakagami shape; reuse equals."""
    m = params.tiers[tier_index].nakagami_m
    for j in range(tier_index):
        if params.tiers[j].nakagami_m == m:
            return tier_script_i_cached(params, j, kernel)
    return model.tier_script_I(params, tier_index, kernel=kernel)


def coverage_rayleigh(params: NetworkParams) -> CoverageResult:
    """Explicit exponential closed form for all-Rayleigh networks (M_i = 1).

    Algebraically identical to `coverage_probability` with the incomplete
    gammas expanded; V is the Rayleigh interference constant and U the
    noise power.
    """
    model.require_valid(params)
    if any(t.nakagami_m != 1 for t in params.tiers):
        raise ValueError("coverage_rayleigh requires M_i = 1 for every tier")

    a = params.alpha
    e = 2.0 / a
    v = (
        (2.0 * math.pi / a)
        * math.gamma(e)
        * math.gamma(1.0 - e)
        * sum(t.density * t.power**e for t in params.tiers)
    )
    u = params.noise
    co = pla.pla_coefficients(a)
    w = v / u**e
    e1 = math.exp(-w * co.x1)
    e2 = math.exp(-w * co.x2)
    bracket = (
        (1.0 - e1)
        + co.c * (e1 - e2)
        + co.m * (e1 * (co.x1 + u**e / v) - e2 * (co.x2 + u**e / v))
    )
    p = sum(
        math.pi * t.density * t.power**e * t.threshold**-e / v for t in params.tiers
    ) * bracket
    return CoverageResult(value=_clamp_probability(p, "rayleigh coverage"), method=Method.RAYLEIGH_CLOSED_FORM)


def conditional_ccdf(params: NetworkParams, y: float, kernel=None) -> float:
    """P(X > y | coverage): raised-threshold coverage over baseline coverage.

    Equals 1 for y <= min_i beta_i, is non-increasing, and -> 0 as y -> inf.
    """
    model.require_valid(params)
    if y < 0:
        raise ValueError(f"conditional_ccdf requires y >= 0, got {y}")
    if kernel is None:
        kernel = pla.approx_gamma_kernel_integral
    e = 2.0 / params.alpha
    script_i = [tier_script_i_cached(params, i, kernel) for i in range(params.n_tiers)]
    num = sum(
        t.density * t.power**e * max(y, t.threshold) ** -e * si
        for t, si in zip(params.tiers, script_i)
    )
    den = sum(
        t.density * t.power**e * t.threshold**-e * si
        for t, si in zip(params.tiers, script_i)
    )
    return num / den


def _rate_from_constants(params: NetworkParams, kernel) -> float:
    e = 2.0 / params.alpha
    script_i = [tier_script_i_cached(params, i, kernel) for i in range(params.n_tiers)]
    weights = [
        t.density * t.power**e * t.threshold**-e * si
        for t, si in zip(params.tiers, script_i)
    ]
    constants = [model.rate_constant(params, i) for i in range(params.n_tiers)]
    return sum(w * c for w, c in zip(weights, constants)) / sum(weights)


def average_rate(params: NetworkParams) -> RateResult:
    """R = weighted mean of the per-tier rate constants, weights ~ coverage mass."""
    model.require_valid(params)
    return RateResult(
        value=_rate_from_constants(params, pla.approx_gamma_kernel_integral),
        method=Method.CLOSED_FORM,
    )


def rate_rayleigh(params: NetworkParams) -> RateResult:
    """Rayleigh rate: I_i is tier-independent and cancels; no noise dependence."""
    model.require_valid(params)
    if any(t.nakagami_m != 1 for t in params.tiers):
        raise ValueError("rate_rayleigh requires M_i = 1 for every tier")
    e = 2.0 / params.alpha
    weights = [t.density * t.power**e * t.threshold**-e for t in params.tiers]
    constants = [model.rate_constant(params, i) for i in range(params.n_tiers)]
    value = sum(w * c for w, c in zip(weights, constants)) / sum(weights)
    return RateResult(value=value, method=Method.RAYLEIGH_CLOSED_FORM)


def rate_reference(params: NetworkParams, rel_tol: float = 1e-8) -> RateResult:
    """Quadrature of int_0^inf P(X > y | C) / (1 + y) dy.

    Integrated piecewise between the tier thresholds (the CCDF has kinks
    there) plus an analytic-free tail integral; agrees with `average_rate`
    to quadrature accuracy since the closed form integrates the same CCDF
    exactly.
    """
    model.require_valid(params)
    kernel = pla.approx_gamma_kernel_integral
    e = 2.0 / params.alpha
    script_i = [tier_script_i_cached(params, i, kernel) for i in range(params.n_tiers)]
    coef = [
        t.density * t.power**e * si for t, si in zip(params.tiers, script_i)
    ]
    den = sum(c * t.threshold**-e for c, t in zip(coef, params.tiers))

    def ccdf(y: float) -> float:
        return sum(
            c * max(y, t.threshold) ** -e for c, t in zip(coef, params.tiers)
        ) / den

    thresholds = sorted({t.threshold for t in params.tiers})

    total = 0.0
    # Below min beta the CCDF is exactly 1.
    total += math.log1p(thresholds[0])
    for lo, hi in zip(thresholds, thresholds[1:]):
        part, err = integrate.quad(lambda y: ccdf(y) / (1.0 + y), lo, hi,
                                   epsabs=0.0, epsrel=rel_tol * 0.01, limit=200)
        _check_quad(part, err, rel_tol)
        total += part
    tail, err = integrate.quad(lambda y: ccdf(y) / (1.0 + y), thresholds[-1],
                               math.inf, epsabs=0.0, epsrel=rel_tol * 0.01, limit=200)
    _check_quad(tail, err, rel_tol)
    total += tail
    return RateResult(value=total, method=Method.QUADRATURE_REFERENCE)


def _check_quad(value: float, abserr: float, rel_tol: float) -> None:
    if value != 0.0 and abserr > rel_tol * abs(value):
        raise QuadratureError(
            f"rate quadrature did not converge: value={value}, abserr={abserr}"
        )
