from .engine import (
    BACKEND_NAME,
    Estimate,
    Realization,
    SimConfig,
    coverage_from_tier_max,
    default_region_radius,
    mc_conditional_rate,
    mc_coverage,
    radius_doubling_drift,
    rate_from_tier_max,
    sample_fading,
    sample_geometry,
    simulate_noise_margin,
    simulate_tier_max,
    snapshot_sinrs,
    tail_mean_interference,
)

__all__ = [
    "BACKEND_NAME",
    "Estimate",
    "Realization",
    "SimConfig",
    "coverage_from_tier_max",
    "default_region_radius",
    "mc_conditional_rate",
    "mc_coverage",
    "radius_doubling_drift",
    "rate_from_tier_max",
    "sample_fading",
    "sample_geometry",
    "simulate_noise_margin",
    "simulate_tier_max",
    "snapshot_sinrs",
    "tail_mean_interference",
]
