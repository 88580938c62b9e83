"""Tests for the Monte Carlo engine.

Distributional checks (Poisson counts, the disk distance law), a
brute-force SINR oracle for the batched kernels, determinism across
thread counts, and the common-random-numbers prefix property behind the
radius-doubling self-check.
"""

import math
import warnings

import numpy as np
import pytest

from hetnetcov.mcsim import (
    BACKEND_NAME,
    Estimate,
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
from hetnetcov.mcsim import _kernels_py
from hetnetcov.mcsim.backend import kernels
from hetnetcov.model import NetworkParams, TierParams


def make_network(alpha=3.0, noise=1e-4, densities=(1.0, 5.0), powers=(25.0, 1.0),
                 thresholds=(1.2589, 1.2589), shapes=(1, 1)):
    tiers = tuple(
        TierParams(density=d, power=p, threshold=b, nakagami_m=m)
        for d, p, b, m in zip(densities, powers, thresholds, shapes)
    )
    return NetworkParams(alpha=alpha, noise=noise, tiers=tiers)


def sim_config(n_geometry=200, n_fading=20, seed=7, **kw):
    return SimConfig(n_geometry=n_geometry, n_fading=n_fading, seed=seed, **kw)


class TestGeometry:
    def test_poisson_count_moments(self):
        # Single tier, lambda pi R^2 = 100: sample counts should have mean
        # ~100 and variance/mean ratio ~1.
        net = make_network(densities=(1.0,), powers=(1.0,), thresholds=(2.0,),
                           shapes=(1,))
        radius = math.sqrt(100.0 / math.pi)
        sim = sim_config(n_geometry=10000, n_fading=1, region_radius=radius)
        counts = np.array([
            len(sample_geometry(net, sim, g).distances[0]) for g in range(10000)
        ])
        assert counts.mean() == pytest.approx(100.0, rel=0.01)
        assert counts.var() / counts.mean() == pytest.approx(1.0, abs=0.05)

    def test_disk_distance_law(self):
        # P(d <= R/2) = 1/4 for points uniform on the disk.
        net = make_network(densities=(2.0,), powers=(1.0,), thresholds=(2.0,),
                           shapes=(1,))
        sim = sim_config(n_geometry=2000, n_fading=1, region_radius=5.0)
        inner = total = 0
        for g in range(2000):
            d = sample_geometry(net, sim, g).distances[0]
            inner += int((d <= 2.5).sum())
            total += len(d)
        assert inner / total == pytest.approx(0.25, abs=0.01)

    def test_distances_sorted_and_bounded(self):
        net = make_network()
        sim = sim_config(region_radius=4.0)
        rz = sample_geometry(net, sim, 0)
        for d in rz.distances:
            assert np.all(np.diff(d) >= 0)
            assert d[-1] < 4.0

    def test_radius_prefix_property(self):
        # Enlarging the disk must keep the inner points bit-identical
        # (common random numbers for the truncation check).
        net = make_network()
        small = sample_geometry(net, sim_config(region_radius=3.0), 5)
        large = sample_geometry(net, sim_config(region_radius=6.0), 5)
        for ds, dl in zip(small.distances, large.distances):
            np.testing.assert_array_equal(ds, dl[: len(ds)])

    def test_fading_prefix_property(self):
        net = make_network(shapes=(2, 1))
        sim = sim_config()
        h_small = sample_fading(net, sim, 3, counts=[4, 7])
        h_large = sample_fading(net, sim, 3, counts=[9, 12])
        for hs, hl in zip(h_small, h_large):
            np.testing.assert_array_equal(hs, hl[: hs.shape[0]])

    def test_fading_moments(self):
        # Gamma(M, 1): mean M, variance M.
        net = make_network(shapes=(3, 1))
        sim = sim_config(n_geometry=1, n_fading=20000)
        h = sample_fading(net, sim, 0, counts=[5, 5])[0]
        assert h.mean() == pytest.approx(3.0, rel=0.02)
        assert h.var() == pytest.approx(3.0, rel=0.05)


class TestKernels:
    def _case(self, shapes=(2, 1)):
        net = make_network(shapes=shapes)
        sim = sim_config(n_fading=11, region_radius=3.0)
        rz = sample_geometry(net, sim, 0)
        counts = [len(d) for d in rz.distances]
        h = sample_fading(net, sim, 0, counts)
        return net, sim, rz, counts, h

    def test_tier_max_matches_snapshot_oracle(self):
        net, sim, rz, counts, h = self._case()
        w = np.concatenate([
            t.power * d ** -net.alpha for t, d in zip(net.tiers, rz.distances)
        ])
        offsets = np.zeros(3, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        hcat = np.ascontiguousarray(np.vstack(h))
        out = np.empty((2, sim.n_fading))
        kernels.tier_max_sinr(np.ascontiguousarray(w), offsets, hcat, net.noise, out)
        for f in range(sim.n_fading):
            sinrs = snapshot_sinrs(net, rz, [x[:, f] for x in h])
            for tier in range(2):
                best = max(s for t, s in sinrs if t == tier)
                assert out[tier, f] == pytest.approx(best, rel=1e-12)

    def test_noise_margin_matches_definition(self):
        net, sim, rz, counts, h = self._case()
        w = np.concatenate([
            t.power * d ** -net.alpha for t, d in zip(net.tiers, rz.distances)
        ])
        offsets = np.zeros(3, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        hcat = np.ascontiguousarray(np.vstack(h))
        beta = np.array([t.threshold for t in net.tiers])
        out = np.empty(sim.n_fading)
        kernels.noise_margin(np.ascontiguousarray(w), offsets, hcat, beta, 0.0, out)
        signals = np.ascontiguousarray(w)[:, None] * hcat
        total = signals.sum(axis=0)
        expected = np.full(sim.n_fading, -np.inf)
        for k, (lo, hi) in enumerate(zip(offsets, offsets[1:])):
            cand = signals[lo:hi] * (1.0 + 1.0 / beta[k]) - total[None, :]
            if hi > lo:
                expected = np.maximum(expected, cand.max(axis=0))
        np.testing.assert_allclose(out, expected, rtol=1e-12)

    def test_backends_agree(self):
        net, sim, rz, counts, h = self._case()
        w = np.ascontiguousarray(np.concatenate([
            t.power * d ** -net.alpha for t, d in zip(net.tiers, rz.distances)
        ]))
        offsets = np.zeros(3, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        hcat = np.ascontiguousarray(np.vstack(h))
        a = np.empty((2, sim.n_fading))
        b = np.empty((2, sim.n_fading))
        kernels.tier_max_sinr(w, offsets, hcat, net.noise, a)
        _kernels_py.tier_max_sinr(w, offsets, hcat, net.noise, b)
        # ULP-level slack: the compiled kernel sums sequentially, numpy
        # pairwise, so the totals can differ in the last bit.
        np.testing.assert_allclose(a, b, rtol=1e-14)
        beta = np.array([t.threshold for t in net.tiers])
        ma = np.empty(sim.n_fading)
        mb = np.empty(sim.n_fading)
        kernels.noise_margin(w, offsets, hcat, beta, 0.5, ma)
        _kernels_py.noise_margin(w, offsets, hcat, beta, 0.5, mb)
        np.testing.assert_allclose(ma, mb, rtol=1e-15)

    def test_backend_name_reported(self):
        assert BACKEND_NAME in ("cython", "numpy")


class TestUnionSemantics:
    def test_covered_by_either_tier(self):
        # tier 0: max SINR 2.0 against threshold 100 (miss); tier 1: max
        # SINR 1.5 against threshold 1.1 (hit) => the trial is covered.
        tier_max = np.array([[[2.0], [1.5]]])  # (geometry, tier, fading)
        est = coverage_from_tier_max(tier_max, [100.0, 1.1])
        assert est.mean == 1.0
        est = coverage_from_tier_max(tier_max, [100.0, 100.0])
        assert est.mean == 0.0

    def test_rate_uses_overall_max(self):
        tier_max = np.array([[[2.0], [1.5]]])
        rate, cov = rate_from_tier_max(tier_max, [100.0, 1.1])
        assert cov.mean == 1.0
        assert rate.mean == pytest.approx(math.log1p(2.0))

    def test_no_covered_trials_raises(self):
        tier_max = np.array([[[2.0], [1.5]]])
        with pytest.raises(RuntimeError, match="no covered trials"):
            rate_from_tier_max(tier_max, [1e6, 1e6])


class TestEstimates:
    def test_thread_count_determinism(self):
        net = make_network(shapes=(2, 1))
        sim = sim_config(n_geometry=60, n_fading=20)
        single = simulate_tier_max(net, sim, threads=1)
        multi = simulate_tier_max(net, sim, threads=3)
        np.testing.assert_array_equal(single, multi)

    def test_same_seed_reproducible(self):
        net = make_network()
        sim = sim_config(n_geometry=50, n_fading=20)
        a = mc_coverage(net, sim)
        b = mc_coverage(net, sim)
        assert a == b

    def test_extreme_threshold_kills_coverage(self):
        net = make_network(thresholds=(1e12, 1e12))
        est = mc_coverage(net, sim_config(n_geometry=100, n_fading=10))
        assert est.mean == 0.0

    def test_noise_margin_consistent_with_tier_max(self):
        # Comparing the margin against sigma^2 must reproduce the covered
        # indicator of the direct pass (identical streams, same algebra).
        net = make_network(shapes=(2, 1), noise=1e-2)
        sim = sim_config(n_geometry=100, n_fading=10)
        margins = simulate_noise_margin(net, sim)
        tier_max = simulate_tier_max(net, sim)
        beta = [t.threshold for t in net.tiers]
        covered = (tier_max > np.asarray(beta)[None, :, None]).any(axis=1)
        np.testing.assert_array_equal(margins > net.noise, covered)

    def test_rate_monotone_in_threshold(self):
        net_lo = make_network(thresholds=(1.2589, 1.2589))
        net_hi = make_network(thresholds=(4.0, 4.0))
        sim = sim_config(n_geometry=400, n_fading=20)
        r_lo, _ = mc_conditional_rate(net_lo, sim)
        r_hi, _ = mc_conditional_rate(net_hi, sim)
        assert r_hi.mean > r_lo.mean

    def test_small_trial_warning(self):
        with pytest.warns(UserWarning, match="noisy"):
            SimConfig(n_geometry=10, n_fading=10, seed=1)

    def test_estimate_fields(self):
        est = mc_coverage(make_network(), sim_config(n_geometry=100, n_fading=10))
        assert isinstance(est, Estimate)
        assert 0.0 < est.mean < 1.0
        assert est.std_error > 0.0
        assert est.n_samples == 1000


class TestTruncation:
    def test_tail_mean_value(self):
        # sum lam P M * 2 pi R^(2-a) / (a - 2) by hand for the two-tier case.
        net = make_network(shapes=(2, 1))
        expected = (1.0 * 25.0 * 2 + 5.0 * 1.0 * 1) * 2.0 * math.pi * 4.0 ** -1.0 / 1.0
        assert tail_mean_interference(net, 4.0) == pytest.approx(expected, rel=1e-12)

    def test_default_radius_targets_count(self):
        net = make_network()
        r = default_region_radius(net)
        assert math.pi * r * r * 6.0 == pytest.approx(2000.0, rel=1e-12)

    def test_radius_doubling_drift_small(self):
        net = make_network()
        sim = sim_config(n_geometry=500, n_fading=10)
        assert radius_doubling_drift(net, sim) < 1e-3
