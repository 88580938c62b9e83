"""Benchmark the compiled SINR kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--geometries N] [--fading N]

Times one full pass of `tier_max_sinr` and `noise_margin` over freshly
sampled geometries for both backends and prints the per-geometry cost and
the speedup.  Run after `pip install -e . --no-build-isolation`; if the
extension failed to build, both rows report the numpy backend.
"""

import argparse
import time

import numpy as np

from hetnetcov.mcsim import SimConfig, sample_fading, sample_geometry
from hetnetcov.mcsim import _kernels_py
from hetnetcov.mcsim.backend import BACKEND_NAME, kernels
from hetnetcov.model import NetworkParams, TierParams


def make_cases(n_geometry, n_fading, seed=123):
    net = NetworkParams(
        alpha=3.0,
        noise=1e-4,
        tiers=(
            TierParams(1.0, 25.0, 3.16, nakagami_m=2),
            TierParams(5.0, 1.0, 1.26, nakagami_m=3),
        ),
    )
    sim = SimConfig(n_geometry=n_geometry, n_fading=n_fading, seed=seed)
    cases = []
    for g in range(n_geometry):
        rz = sample_geometry(net, sim, g)
        counts = [len(d) for d in rz.distances]
        w = np.ascontiguousarray(np.concatenate([
            t.power * d ** -net.alpha for t, d in zip(net.tiers, rz.distances)
        ]))
        offsets = np.zeros(len(counts) + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        h = np.ascontiguousarray(np.vstack(sample_fading(net, sim, g, counts)))
        cases.append((w, offsets, h))
    beta = np.array([t.threshold for t in net.tiers])
    return net, cases, beta


def time_backend(mod, net, cases, beta, n_fading):
    out_t = np.empty((net.n_tiers, n_fading))
    out_m = np.empty(n_fading)
    t0 = time.perf_counter()
    for w, offsets, h in cases:
        mod.tier_max_sinr(w, offsets, h, net.noise, out_t)
    t1 = time.perf_counter()
    for w, offsets, h in cases:
        mod.noise_margin(w, offsets, h, beta, 0.0, out_m)
    t2 = time.perf_counter()
    return t1 - t0, t2 - t1


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--geometries", type=int, default=200)
    parser.add_argument("--fading", type=int, default=100)
    args = parser.parse_args()

    net, cases, beta = make_cases(args.geometries, args.fading)
    n_bs = sum(c[0].shape[0] for c in cases) / len(cases)
    print(f"selected backend: {BACKEND_NAME}")
    print(f"{args.geometries} geometries, ~{n_bs:.0f} BSs each, "
          f"{args.fading} fading draws\n")

    backends = [("numpy", _kernels_py)]
    if kernels.BACKEND != "numpy":
        backends.append((kernels.BACKEND, kernels))

    timings = {}
    for name, mod in backends:
        time_backend(mod, net, cases, beta, args.fading)  # warm up
        timings[name] = time_backend(mod, net, cases, beta, args.fading)

    print(f"{'backend':<10} {'tier_max_sinr':>15} {'noise_margin':>15}")
    for name, (tm, nm) in timings.items():
        print(f"{name:<10} {1e3 * tm / len(cases):>12.3f} ms "
              f"{1e3 * nm / len(cases):>12.3f} ms")
    if len(timings) == 2:
        base = timings["numpy"]
        fast = timings[kernels.BACKEND]
        print(f"\nspeedup: tier_max_sinr {base[0] / fast[0]:.1f}x, "
              f"noise_margin {base[1] / fast[1]:.1f}x")


if __name__ == "__main__":
    main()
