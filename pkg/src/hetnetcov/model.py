"""Network configuration and the derived constants of the closed forms.

A K-tier network is a path-loss exponent, a noise power, and per-tier
(density, power, SINR threshold, Nakagami shape) tuples.  From these the
closed-form coverage/rate expressions need three derived quantities:

* the interference constant A (tier-summed Beta-function coefficient of
  the aggregate-interference Laplace transform),
* the per-tier coverage kernel I_i (a triple alternating sum of kernel
  integrals; depends on the tier only through its Nakagami shape),
* the per-tier rate constant A_i = ln(1+beta_i) + (alpha/2) 2F1(...).

Thresholds and powers are linear-scale throughout; dB conversion is the
CLI's job.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from . import pla
from .specfun import beta_function, d_sequence, hyp2f1_rate, partial_bell

__all__ = [
    "TierParams",
    "NetworkParams",
    "DerivedConstants",
    "MAX_NAKAGAMI_M",
    "CancellationWarning",
    "validate",
    "require_valid",
    "interference_constant",
    "tier_script_I",
    "rate_constant",
    "derived_constants",
]

# Beyond this shape the alternating sum in tier_script_I loses too many
# digits in float64 to be defensible.
MAX_NAKAGAMI_M = 16


class CancellationWarning(UserWarning):
    """Alternating-sum intermediates dwarf the result; significance lost."""


@dataclass(frozen=True)
class TierParams:
    """One tier: BS density, transmit power, SINR threshold, Nakagami shape."""

    density: float
    power: float
    threshold: float  # linear scale, must exceed 1
    nakagami_m: int = 1


@dataclass(frozen=True)
class NetworkParams:
    """Path-loss exponent, noise power, and the ordered tier list."""

    alpha: float
    noise: float  # sigma^2, linear scale
    tiers: tuple[TierParams, ...]

    def __post_init__(self):
        object.__setattr__(self, "tiers", tuple(self.tiers))

    @property
    def n_tiers(self) -> int:
        return len(self.tiers)


@dataclass(frozen=True)
class DerivedConstants:
    """Everything the closed forms need, precomputed once per network."""

    a_constant: float
    script_i: tuple[float, ...]
    rate_constants: tuple[float, ...]
    d_values: tuple[float, ...]


def validate(params: NetworkParams) -> list[str]:
    """Return every violated standing assumption (empty list means valid)."""
    errors: list[str] = []
    if not params.alpha > 2:
        errors.append(f"alpha must exceed 2 (got {params.alpha})")
    if not params.noise > 0:
        errors.append(f"noise power must be positive (got {params.noise})")
    if params.n_tiers < 1:
        errors.append("at least one tier is required")
    for i, tier in enumerate(params.tiers):
        if not tier.density > 0:
            errors.append(f"tier {i}: density must be positive (got {tier.density})")
        if not tier.power > 0:
            errors.append(f"tier {i}: power must be positive (got {tier.power})")
        if not tier.threshold > 1:
            errors.append(
                f"tier {i}: SINR threshold must exceed 1 in linear scale "
                f"(got {tier.threshold}); the coverage union bound is exact "
                "only under beta_i > 1"
            )
        if not (isinstance(tier.nakagami_m, int) and tier.nakagami_m >= 1):
            errors.append(f"tier {i}: nakagami_m must be an integer >= 1 (got {tier.nakagami_m})")
        elif tier.nakagami_m > MAX_NAKAGAMI_M:
            errors.append(
                f"tier {i}: nakagami_m {tier.nakagami_m} exceeds the supported "
                f"maximum {MAX_NAKAGAMI_M} (double precision limit of the sum)"
            )
    return errors


def require_valid(params: NetworkParams) -> None:
    errors = validate(params)
    if errors:
        raise ValueError("invalid network parameters: " + "; ".join(errors))


def interference_constant(params: NetworkParams) -> float:
    """A = sum_m lambda_m P_m^(2/a) sum_p C(M_m,p) (2pi/a) B(M_m-p+2/a, p-2/a)."""
    require_valid(params)
    a = params.alpha
    total = 0.0
    for tier in params.tiers:
        inner = 0.0
        for p in range(1, tier.nakagami_m + 1):
            inner += (
                math.comb(tier.nakagami_m, p)
                * (2.0 * math.pi / a)
                * beta_function(tier.nakagami_m - p + 2.0 / a, p - 2.0 / a)
            )
        total += tier.density * tier.power ** (2.0 / a) * inner
    return total


def tier_script_I(
    params: NetworkParams,
    tier_index: int,
    kernel=pla.approx_gamma_kernel_integral,
) -> float:
    """Per-tier coverage kernel I_i.

    Triple sum over (k, l, r) of alternating terms, each carrying a kernel
    integral with U = sigma^2, V = A, and t-exponent r + (alpha/2)(k-l).
    `kernel` defaults to the closed-form approximation; passing
    `pla.exact_gamma_kernel_integral` yields the quadrature reference.

    Depends on the tier only through its Nakagami shape.
    """
    require_valid(params)
    if not (0 <= tier_index < params.n_tiers):
        raise IndexError(f"tier_index {tier_index} out of range for K={params.n_tiers}")

    a = params.alpha
    sigma2 = params.noise
    m_shape = params.tiers[tier_index].nakagami_m
    a_const = interference_constant(params)

    d_vals = [d_sequence(a, t) for t in range(1, m_shape + 1)]

    total = 0.0
    max_term = 0.0
    for k in range(m_shape):
        for l in range(k + 1):
            outer = math.comb(k, l) * sigma2 ** (k - l) * (-1.0) ** l / math.factorial(k)
            for r in range(l + 1):
                bell = partial_bell(l, r, d_vals[: l - r + 1])
                if bell == 0.0:
                    continue
                power = r + (a / 2.0) * (k - l)
                term = outer * (-a_const) ** r * bell * kernel(sigma2, a_const, power, a)
                total += term
                max_term = max(max_term, abs(term))

    if total != 0.0 and max_term > 1e6 * abs(total):
        warnings.warn(
            f"tier_script_I: intermediate terms up to {max_term:.3e} against a "
            f"result of {total:.3e}; significant cancellation",
            CancellationWarning,
            stacklevel=2,
        )
    return total


def rate_constant(params: NetworkParams, tier_index: int) -> float:
    """A_i = ln(1 + beta_i) + (alpha/2) 2F1(1, 2/a; 1+2/a; -1/beta_i)."""
    require_valid(params)
    beta = params.tiers[tier_index].threshold
    return math.log1p(beta) + (params.alpha / 2.0) * hyp2f1_rate(params.alpha, beta)


def derived_constants(params: NetworkParams) -> DerivedConstants:
    require_valid(params)
    max_m = max(t.nakagami_m for t in params.tiers)
    return DerivedConstants(
        a_constant=interference_constant(params),
        script_i=tuple(tier_script_I(params, i) for i in range(params.n_tiers)),
        rate_constants=tuple(rate_constant(params, i) for i in range(params.n_tiers)),
        d_values=tuple(d_sequence(params.alpha, t) for t in range(1, max_m + 1)),
    )
