"""Seeded Monte Carlo oracle for coverage and conditional rate.

Base stations of each tier form a Poisson point process observed in a
disk around the typical user at the origin.  Squared distances are sampled
as the arrival times of a rate lambda*pi process, which (a) reproduces the
disk PPP exactly (Poisson count, d = R sqrt(u) distance law) and (b) keeps
the near-field points identical when the radius is enlarged, so the
radius-doubling self-check measures truncation bias rather than resampling
noise.  Fading power is Gamma(M, 1), drawn as a sum of M unit exponentials
so every BS consumes a fixed number of stream values.

Interference from beyond the disk is folded in as its expectation over
the outside process (`tail_mean_interference`); its fluctuation is
negligible for the disk sizes used here and the compensation can be
switched off via SimConfig.

Determinism: every (geometry, tier) pair owns RNG streams derived from
(seed, geometry index, tier index), and reductions run in geometry order,
so results are identical for any thread count.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .. import model
from ..model import NetworkParams
from .backend import BACKEND_NAME, kernels

__all__ = [
    "SimConfig",
    "Realization",
    "Estimate",
    "BACKEND_NAME",
    "default_region_radius",
    "tail_mean_interference",
    "sample_geometry",
    "sample_fading",
    "snapshot_sinrs",
    "simulate_tier_max",
    "simulate_noise_margin",
    "mc_coverage",
    "mc_conditional_rate",
    "radius_doubling_drift",
]

_GEOMETRY_STREAM = 0
_FADING_STREAM = 1

# Expected number of BSs inside the default observation disk.
_DEFAULT_TARGET_COUNT = 2000.0


@dataclass(frozen=True)
class SimConfig:
    """Disk radius, trial counts, and the master seed."""

    n_geometry: int
    n_fading: int
    seed: int
    region_radius: float | None = None  # None: derived from the densities
    tail_compensation: bool = True

    def __post_init__(self):
        if self.n_geometry < 1 or self.n_fading < 1:
            raise ValueError("n_geometry and n_fading must be positive")
        if self.region_radius is not None and not (self.region_radius > 0):
            raise ValueError(f"region_radius must be positive, got {self.region_radius}")
        if self.n_geometry * self.n_fading < 1000:
            warnings.warn(
                f"only {self.n_geometry * self.n_fading} trials; estimates will be noisy",
                stacklevel=2,
            )


@dataclass(frozen=True)
class Realization:
    """Per-tier BS distances from the origin; angles are irrelevant at the origin."""

    distances: tuple[np.ndarray, ...]
    region_radius: float


@dataclass(frozen=True)
class Estimate:
    mean: float
    std_error: float
    n_samples: int


def default_region_radius(params: NetworkParams, target_count: float = _DEFAULT_TARGET_COUNT) -> float:
    """Disk radius holding ~`target_count` BSs in expectation."""
    lam_total = sum(t.density for t in params.tiers)
    return math.sqrt(target_count / (math.pi * lam_total))


def _resolve_radius(params: NetworkParams, sim: SimConfig) -> float:
    return sim.region_radius if sim.region_radius is not None else default_region_radius(params)


def tail_mean_interference(params: NetworkParams, radius: float) -> float:
    """Mean interference from BSs outside the disk: sum_m lam_m P_m M_m 2pi R^(2-a)/(a-2)."""
    a = params.alpha
    return sum(
        t.density * t.power * t.nakagami_m for t in params.tiers
    ) * 2.0 * math.pi * radius ** (2.0 - a) / (a - 2.0)


def _stream(seed: int, geometry_index: int, tier_index: int, purpose: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((seed, geometry_index, tier_index, purpose)))
    )


def sample_geometry(params: NetworkParams, sim: SimConfig, stream_index: int) -> Realization:
    """One PPP realization: sorted per-tier BS distances inside the disk."""
    model.require_valid(params)
    radius = _resolve_radius(params, sim)
    r2_max = radius * radius
    per_tier = []
    for tier_index, tier in enumerate(params.tiers):
        rng = _stream(sim.seed, stream_index, tier_index, _GEOMETRY_STREAM)
        rate = tier.density * math.pi
        expected = rate * r2_max
        chunk = max(16, int(expected + 6.0 * math.sqrt(expected + 1.0)))
        gaps = -np.log(rng.random(chunk))
        arrivals = np.cumsum(gaps) / rate
        while arrivals[-1] < r2_max:
            gaps = -np.log(rng.random(max(16, chunk // 4)))
            arrivals = np.concatenate([arrivals, arrivals[-1] + np.cumsum(gaps) / rate])
        per_tier.append(np.sqrt(arrivals[arrivals < r2_max]))
    return Realization(distances=tuple(per_tier), region_radius=radius)


def sample_fading(
    params: NetworkParams, sim: SimConfig, stream_index: int, counts: Sequence[int]
) -> list[np.ndarray]:
    """Per-tier (n_bs, n_fading) Gamma(M_i, 1) fading power draws.

    Drawn BS-major from a fixed stream, so the draws of the first n BSs do
    not depend on how many BSs follow them (needed by the radius-doubling
    common-random-numbers check).
    """
    out = []
    for tier_index, (tier, n_bs) in enumerate(zip(params.tiers, counts)):
        rng = _stream(sim.seed, stream_index, tier_index, _FADING_STREAM)
        u = rng.random((n_bs, sim.n_fading, tier.nakagami_m))
        out.append(-np.log(u).sum(axis=2))
    return out


def snapshot_sinrs(
    params: NetworkParams, realization: Realization, fading_draws: Sequence[np.ndarray]
) -> list[tuple[int, float]]:
    """SINR of every BS for a single fading snapshot (one draw per BS).

    Plain restatement of the SINR definition; the denominator of BS b is
    the sum over every other BS plus noise, with no tail compensation.
    Used directly by tests; the batched kernels are checked against it.
    """
    model.require_valid(params)
    received = []
    for tier_index, (tier, d, h) in enumerate(
        zip(params.tiers, realization.distances, fading_draws)
    ):
        h = np.asarray(h, dtype=float).reshape(-1)
        if h.shape[0] != d.shape[0]:
            raise ValueError(f"tier {tier_index}: {d.shape[0]} BSs but {h.shape[0]} fading draws")
        for dist, fade in zip(d, h):
            received.append((tier_index, tier.power * fade * dist ** -params.alpha))
    total = sum(r for _, r in received)
    return [
        (tier_index, r / (total - r + params.noise)) for tier_index, r in received
    ]


def _geometry_weights(params: NetworkParams, realization: Realization):
    """Concatenated mean received powers and tier slice offsets."""
    w = [
        tier.power * d ** -params.alpha
        for tier, d in zip(params.tiers, realization.distances)
    ]
    counts = [len(x) for x in w]
    offsets = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return np.ascontiguousarray(np.concatenate(w)), offsets, counts


def _run_geometries(params: NetworkParams, sim: SimConfig, per_geometry, out: np.ndarray, threads: int):
    """Fill out[g] = per_geometry(g) for every geometry, optionally threaded."""
    def work(g: int) -> None:
        out[g] = per_geometry(g)

    if threads <= 1:
        for g in range(sim.n_geometry):
            work(g)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(sim.n_geometry)))


def simulate_tier_max(params: NetworkParams, sim: SimConfig, threads: int = 1) -> np.ndarray:
    """(n_geometry, K, n_fading) per-trial per-tier maximum SINR.

    Thresholds never enter: the same array serves every threshold sweep
    point at a fixed noise power.
    """
    model.require_valid(params)
    radius = _resolve_radius(params, sim)
    extra = tail_mean_interference(params, radius) if sim.tail_compensation else 0.0
    denom_const = params.noise + extra

    out = np.empty((sim.n_geometry, params.n_tiers, sim.n_fading))

    def one(g: int) -> np.ndarray:
        realization = sample_geometry(params, sim, g)
        w, offsets, counts = _geometry_weights(params, realization)
        h = np.ascontiguousarray(np.vstack(sample_fading(params, sim, g, counts)))
        res = np.empty((params.n_tiers, sim.n_fading))
        kernels.tier_max_sinr(w, offsets, h, denom_const, res)
        return res

    _run_geometries(params, sim, one, out, threads)
    return out


def simulate_noise_margin(params: NetworkParams, sim: SimConfig, threads: int = 1) -> np.ndarray:
    """(n_geometry, n_fading) per-trial noise tolerance.

    Entry (g, f) is the largest sigma^2 under which trial (g, f) would
    still be covered at the configured thresholds; a noise sweep is then a
    family of comparisons against one simulation pass.
    """
    model.require_valid(params)
    radius = _resolve_radius(params, sim)
    extra = tail_mean_interference(params, radius) if sim.tail_compensation else 0.0
    beta = np.array([t.threshold for t in params.tiers])

    out = np.empty((sim.n_geometry, sim.n_fading))

    def one(g: int) -> np.ndarray:
        realization = sample_geometry(params, sim, g)
        w, offsets, counts = _geometry_weights(params, realization)
        h = np.ascontiguousarray(np.vstack(sample_fading(params, sim, g, counts)))
        res = np.empty(sim.n_fading)
        kernels.noise_margin(w, offsets, h, beta, extra, res)
        return res

    _run_geometries(params, sim, one, out, threads)
    return out


def coverage_from_tier_max(tier_max: np.ndarray, thresholds: Sequence[float]) -> Estimate:
    """Coverage estimate from a `simulate_tier_max` array at given thresholds."""
    beta = np.asarray(thresholds)
    covered = (tier_max > beta[None, :, None]).any(axis=1)
    return _cluster_mean(covered)


def rate_from_tier_max(tier_max: np.ndarray, thresholds: Sequence[float]) -> tuple[Estimate, Estimate]:
    """(conditional rate, coverage) estimates from a `simulate_tier_max` array."""
    beta = np.asarray(thresholds)
    covered = (tier_max > beta[None, :, None]).any(axis=1)
    if not covered.any():
        raise RuntimeError("no covered trials; cannot condition the rate estimate")
    log_rate = np.log1p(tier_max.max(axis=1))
    a = (covered * log_rate).sum(axis=1)  # per-geometry sums
    b = covered.sum(axis=1).astype(float)
    n_geo = a.shape[0]
    ratio = a.sum() / b.sum()
    resid = a - ratio * b
    if n_geo > 1:
        se = float(np.std(resid, ddof=1) / math.sqrt(n_geo) / b.mean())
    else:
        se = math.inf
    rate = Estimate(mean=float(ratio), std_error=se, n_samples=int(covered.sum()))
    return rate, _cluster_mean(covered)


def _cluster_mean(per_trial: np.ndarray) -> Estimate:
    """Mean and geometry-clustered standard error of a (G, n_fading) array."""
    geo_means = per_trial.mean(axis=1)
    n_geo = geo_means.shape[0]
    se = float(np.std(geo_means, ddof=1) / math.sqrt(n_geo)) if n_geo > 1 else math.inf
    return Estimate(mean=float(geo_means.mean()), std_error=se, n_samples=per_trial.size)


def mc_coverage(params: NetworkParams, sim: SimConfig, threads: int = 1) -> Estimate:
    """Fraction of trials in which some BS beats its tier threshold."""
    tier_max = simulate_tier_max(params, sim, threads=threads)
    return coverage_from_tier_max(tier_max, [t.threshold for t in params.tiers])


def mc_conditional_rate(
    params: NetworkParams, sim: SimConfig, threads: int = 1
) -> tuple[Estimate, Estimate]:
    """Mean of ln(1 + max SINR) over covered trials, plus the coverage fraction."""
    tier_max = simulate_tier_max(params, sim, threads=threads)
    return rate_from_tier_max(tier_max, [t.threshold for t in params.tiers])


def radius_doubling_drift(params: NetworkParams, sim: SimConfig, threads: int = 1) -> float:
    """Absolute coverage change when the observation disk radius doubles.

    Shares the underlying random streams between the two radii (the inner
    points and their fading are identical), so the returned figure is the
    truncation effect itself, not resampling noise.
    """
    radius = _resolve_radius(params, sim)
    small = mc_coverage(params, replace(sim, region_radius=radius), threads=threads)
    large = mc_coverage(params, replace(sim, region_radius=2.0 * radius), threads=threads)
    return abs(large.mean - small.mean)
