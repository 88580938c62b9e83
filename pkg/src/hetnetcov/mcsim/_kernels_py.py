"""Pure-numpy SINR kernels: the fallback when the Cython extension is absent.

Semantics match `_kernels.pyx`; each function processes one geometry
(fixed BS layout, a matrix of fading draws).
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def tier_max_sinr(w, offsets, h, noise, out):
    """Per-fading-draw, per-tier maximum SINR.

    w        : (n_bs,) mean received power P_i d^-alpha per BS
    offsets  : (K+1,) tier slice boundaries into the BS axis
    h        : (n_bs, n_fading) fading power draws
    noise    : constant added to every denominator (sigma^2 + tail mean)
    out      : (K, n_fading) result, 0.0 where a tier has no BS
    """
    received = w[:, None] * h
    total = received.sum(axis=0) + noise
    out[:] = 0.0
    for k in range(len(offsets) - 1):
        blk = received[offsets[k]:offsets[k + 1]]
        if blk.shape[0]:
            np.max(blk / (total - blk), axis=0, out=out[k])


def noise_margin(w, offsets, h, beta, extra_interference, out):
    """Largest noise power each trial could tolerate and still be covered.

    For BS b in tier i the coverage condition SINR_b > beta_i reads
    sigma^2 < S_b / beta_i - I_b; the per-trial maximum of the right-hand
    side over all BSs (with `extra_interference` folded into I_b) is
    written to `out` (n_fading,).  Coverage at noise sigma^2 is then just
    mean(out > sigma^2).
    """
    received = w[:, None] * h
    total = received.sum(axis=0) + extra_interference
    out[:] = -np.inf
    for k in range(len(offsets) - 1):
        blk = received[offsets[k]:offsets[k + 1]]
        if blk.shape[0]:
            margin = blk * (1.0 + 1.0 / beta[k]) - total
            np.maximum(out, margin.max(axis=0), out=out)
