"""Scalar special-function kernels.

Everything the closed-form coverage/rate expressions need: the lower
incomplete gamma function, the Beta function, the particular Gauss
hypergeometric value 2F1(1, 2/a; 1+2/a; -1/b) appearing in the per-tier
rate constant, partial Bell polynomials, and the falling-product sequence
D_t = prod_{q<t} (2/alpha - q).

All functions are pure and thread-safe; memoisation is per-call only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "BellArguments",
    "lower_incomplete_gamma",
    "beta_function",
    "hyp2f1_rate",
    "partial_bell",
    "d_sequence",
]

_EPS = 1e-16
_MAX_ITER = 100_000


@dataclass(frozen=True)
class BellArguments:
    """Argument vector (x_1 ... x_{l-r+1}) for the partial Bell polynomial B_{l,r}."""

    values: tuple[float, ...]
    l: int
    r: int

    def __post_init__(self):
        if self.r < 0 or self.r > self.l:
            raise ValueError(f"need 0 <= r <= l, got l={self.l}, r={self.r}")
        expected = self.l - self.r + 1
        if len(self.values) != expected:
            raise ValueError(
                f"B_{{{self.l},{self.r}}} takes exactly {expected} arguments, "
                f"got {len(self.values)}"
            )


def lower_incomplete_gamma(s: float, x: float) -> float:
    """gamma(s, x) = int_0^x t^(s-1) e^(-t) dt for s > 0, x >= 0.

    Power series for x < s + 1, Lentz continued fraction otherwise;
    both branches are good to ~1e-14 relative.
    """
    if not (s > 0):
        raise ValueError(f"lower_incomplete_gamma requires s > 0, got s={s}")
    if x < 0:
        raise ValueError(f"lower_incomplete_gamma requires x >= 0, got x={x}")
    if x == 0.0:
        return 0.0

    lg = math.lgamma(s)
    # exp(-x + s ln x) can underflow to 0 for huge x; gamma then saturates.
    log_prefac = -x + s * math.log(x)

    if x < s + 1.0:
        # gamma(s,x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n))
        ap = s
        term = 1.0 / s
        total = term
        for _ in range(_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                return total * math.exp(log_prefac)
        raise RuntimeError(f"series for gamma({s},{x}) did not converge")

    # Continued fraction for the upper Gamma(s,x), modified Lentz.
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            q = math.exp(log_prefac - lg) * h  # regularized upper tail
            return math.exp(lg) * (1.0 - q)
    raise RuntimeError(f"continued fraction for gamma({s},{x}) did not converge")


def beta_function(a: float, b: float) -> float:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), via log-gamma."""
    if not (a > 0 and b > 0):
        raise ValueError(f"beta_function requires positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def hyp2f1_rate(alpha: float, beta_threshold: float) -> float:
    """2F1(1, 2/alpha; 1 + 2/alpha; -1/beta) for alpha > 2, beta > 0.

    With b = 2/alpha and c = b + 1 the series collapses to
    sum_k b/(b+k) (-1/beta)^k.  That alternating series slows down as
    beta -> 1, so for beta < 2 the Pfaff transformation
        2F1(1, b; 1+b; -1/beta) = (beta/(1+beta))^b 2F1(b, b; 1+b; 1/(1+beta))
    is used instead; its terms are positive and decay at least as 2^-k.
    """
    if not (alpha > 2):
        raise ValueError(f"hyp2f1_rate requires alpha > 2, got {alpha}")
    if not (beta_threshold > 0):
        raise ValueError(f"hyp2f1_rate requires beta > 0, got {beta_threshold}")

    b = 2.0 / alpha
    if beta_threshold >= 2.0:
        z = -1.0 / beta_threshold
        total = 0.0
        zk = 1.0
        for k in range(_MAX_ITER):
            term = b / (b + k) * zk
            total += term
            if abs(term) < 1e-15 * abs(total):
                return total
            zk *= z
        raise RuntimeError("2F1 series did not converge")

    w = 1.0 / (1.0 + beta_threshold)
    pochhammer = 1.0  # (b)_k w^k / k!
    total = 0.0
    for k in range(_MAX_ITER):
        term = b / (b + k) * pochhammer
        total += term
        if term < 1e-15 * total:
            scale = (beta_threshold / (1.0 + beta_threshold)) ** b
            return scale * total
        pochhammer *= (b + k) / (k + 1.0) * w
    raise RuntimeError("transformed 2F1 series did not converge")


def partial_bell(l: int, r: int, args: BellArguments | Sequence[float]) -> float:
    """Partial (incomplete) Bell polynomial B_{l,r}(x_1, ..., x_{l-r+1}).

    Evaluated through the standard recurrence
        B_{l,r} = sum_{j=1}^{l-r+1} C(l-1, j-1) x_j B_{l-j, r-1},
    memoised per call.  The brute-force partition enumeration lives in the
    test suite as an independent oracle.
    """
    if isinstance(args, BellArguments):
        if (args.l, args.r) != (l, r):
            raise ValueError(f"BellArguments built for ({args.l},{args.r}), asked ({l},{r})")
        x = args.values
    else:
        x = tuple(float(v) for v in args)
        if l == 0 and r == 0 and not x:
            return 1.0
        # run the shared validation
        BellArguments(values=x, l=l, r=r)

    cache: dict[tuple[int, int], float] = {}

    def bell(n: int, k: int) -> float:
        if n == 0 and k == 0:
            return 1.0
        if n == 0 or k == 0:
            return 0.0
        key = (n, k)
        if key in cache:
            return cache[key]
        total = 0.0
        for j in range(1, n - k + 2):
            total += math.comb(n - 1, j - 1) * x[j - 1] * bell(n - j, k - 1)
        cache[key] = total
        return total

    return bell(l, r)


def d_sequence(alpha: float, t: int) -> float:
    """D_t = prod_{q=0}^{t-1} (2/alpha - q); alpha > 2, t >= 1."""
    if not (alpha > 2):
        raise ValueError(f"d_sequence requires alpha > 2, got {alpha}")
    if t < 1:
        raise ValueError(f"d_sequence requires t >= 1, got {t}")
    v = 2.0 / alpha
    out = 1.0
    for q in range(t):
        out *= v - q
    return out
