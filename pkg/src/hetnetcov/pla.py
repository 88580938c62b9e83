"""Piecewise-linear surrogate for exp(-x^(alpha/2)) and the kernel integral.

The canonical integral

    int_0^inf exp(-V t - U t^(alpha/2)) t^p dt        (alpha > 2, U, V > 0)

shows up in every term of the coverage sum.  Replacing exp(-x^(alpha/2))
by a three-piece linear surrogate (1 below x1, m x + c between the knots,
0 above x2) turns each term into a short combination of lower incomplete
gamma functions.  `exact_gamma_kernel_integral` is the adaptive-quadrature
reference used to measure the approximation loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .specfun import lower_incomplete_gamma

__all__ = [
    "PlaCoefficients",
    "QuadratureError",
    "pla_coefficients",
    "pla_surrogate",
    "approx_gamma_kernel_integral",
    "exact_gamma_kernel_integral",
]

# exp(-746) underflows in float64; nothing representable lies beyond this.
_EXP_UNDERFLOW = 745.0


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class PlaCoefficients:
    """Knots and line parameters of the surrogate for exp(-x^(alpha/2))."""

    alpha: float
    m: float   # slope, negative
    c: float   # intercept
    x0: float  # inflection point, where the line is tangent
    x1: float  # left knot: m x1 + c = 1
    x2: float  # right knot: m x2 + c = 0


def pla_coefficients(alpha: float) -> PlaCoefficients:
    """Line through the inflection point of exp(-x^(alpha/2)), clipped to [0, 1].

    x0 = (1 - 2/alpha)^(2/alpha) is the inflection point, m the derivative
    there, c the matching intercept; x1, x2 solve m x + c = 1 and 0.
    """
    if not (alpha > 2):
        raise ValueError(f"pla_coefficients requires alpha > 2, got {alpha}")
    s = 1.0 - 2.0 / alpha  # in (0, 1)
    x0 = s ** (2.0 / alpha)
    m = -(alpha / 2.0) * s ** s * math.exp(-s)
    c = (alpha / 2.0) * math.exp(-s)
    x1 = (1.0 - c) / m
    x2 = -c / m
    return PlaCoefficients(alpha=alpha, m=m, c=c, x0=x0, x1=x1, x2=x2)


def pla_surrogate(x: float, coeff: PlaCoefficients) -> float:
    """The three-piece approximation itself (used by tests and plots)."""
    if x <= coeff.x1:
        return 1.0
    if x >= coeff.x2:
        return 0.0
    return coeff.m * x + coeff.c


def approx_gamma_kernel_integral(u: float, v: float, power: float, alpha: float) -> float:
    """Closed-form approximation of int_0^inf e^(-v t - u t^(alpha/2)) t^power dt.

    `power` is the (real, >= 0) exponent of t; the classical statement with
    integrand t^(n/2) corresponds to power = n/2.
    """
    _check_kernel_args(u, v, power, alpha)
    coeff = pla_coefficients(alpha)
    w = v / u ** (2.0 / alpha)  # scaled knot argument

    g1_x1 = lower_incomplete_gamma(power + 1.0, w * coeff.x1)
    g1_x2 = lower_incomplete_gamma(power + 1.0, w * coeff.x2)
    g2_x1 = lower_incomplete_gamma(power + 2.0, w * coeff.x1)
    g2_x2 = lower_incomplete_gamma(power + 2.0, w * coeff.x2)

    bracket = (
        g1_x1
        + coeff.c * (g1_x2 - g1_x1)
        + (u ** (2.0 / alpha) / v) * coeff.m * (g2_x2 - g2_x1)
    )
    return bracket / v ** (power + 1.0)


def exact_gamma_kernel_integral(
    u: float, v: float, power: float, alpha: float, rel_tol: float = 1e-10
) -> float:
    """Adaptive quadrature of int_0^inf e^(-v t - u t^(alpha/2)) t^power dt.

    The upper limit is truncated where the exponent reaches the float64
    underflow bound, so no representable tail mass is discarded.  Raises
    QuadratureError if the estimated error exceeds `rel_tol` relative.
    """
    _check_kernel_args(u, v, power, alpha)

    half_alpha = alpha / 2.0

    def integrand(t: float) -> float:
        if t <= 0.0:
            return 1.0 if power == 0 else 0.0
        e = -v * t - u * t ** half_alpha + power * math.log(t)
        return math.exp(e) if e > -_EXP_UNDERFLOW else 0.0

    # Solve v t + u t^(alpha/2) = underflow bound by bisection.
    lo, hi = 0.0, 1.0
    while v * hi + u * hi ** half_alpha < _EXP_UNDERFLOW:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if v * mid + u * mid ** half_alpha < _EXP_UNDERFLOW:
            lo = mid
        else:
            hi = mid
    t_max = hi

    # Interior maximum of the full integrand, handed to quad as a breakpoint.
    points = []
    if power > 0:
        t_peak = power / v  # peak of t^p e^(-vt); good enough as a hint
        if 0.0 < t_peak < t_max:
            points.append(t_peak)

    result, abserr = integrate.quad(
        integrand, 0.0, t_max, points=points or None, limit=500,
        epsabs=0.0, epsrel=rel_tol * 0.1,
    )
    if result <= 0.0 or abserr > rel_tol * abs(result):
        raise QuadratureError(
            f"kernel quadrature (u={u}, v={v}, power={power}, alpha={alpha}) "
            f"did not converge: result={result}, abserr={abserr}"
        )
    return result


def _check_kernel_args(u: float, v: float, power: float, alpha: float) -> None:
    if not (u > 0):
        raise ValueError(f"kernel integral requires U > 0, got {u}")
    if not (v > 0):
        raise ValueError(f"kernel integral requires V > 0, got {v}")
    if power < 0:
        raise ValueError(f"kernel integral requires power >= 0, got {power}")
    if not (alpha > 2):
        raise ValueError(f"kernel integral requires alpha > 2, got {alpha}")
