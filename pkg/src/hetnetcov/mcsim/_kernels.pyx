# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Cython SINR kernels; drop-in replacements for `_kernels_py`."""

import numpy as np

cimport cython
from libc.math cimport INFINITY

BACKEND = "cython"


def tier_max_sinr(const double[::1] w, const long long[::1] offsets,
                  const double[:, ::1] h, double noise, double[:, ::1] out):
    cdef Py_ssize_t n_bs = h.shape[0]
    cdef Py_ssize_t nf = h.shape[1]
    cdef Py_ssize_t n_tiers = offsets.shape[0] - 1
    cdef Py_ssize_t b, f, k
    cdef double rec, sinr
    cdef double[::1] total = np.zeros(nf)

    with nogil:
        for b in range(n_bs):
            for f in range(nf):
                total[f] += w[b] * h[b, f]
        for k in range(n_tiers):
            for f in range(nf):
                out[k, f] = 0.0
            for b in range(offsets[k], offsets[k + 1]):
                for f in range(nf):
                    rec = w[b] * h[b, f]
                    sinr = rec / (total[f] - rec + noise)
                    if sinr > out[k, f]:
                        out[k, f] = sinr


def noise_margin(const double[::1] w, const long long[::1] offsets,
                 const double[:, ::1] h, const double[::1] beta,
                 double extra_interference, double[::1] out):
    cdef Py_ssize_t n_bs = h.shape[0]
    cdef Py_ssize_t nf = h.shape[1]
    cdef Py_ssize_t n_tiers = offsets.shape[0] - 1
    cdef Py_ssize_t b, f, k
    cdef double rec, margin, scale
    cdef double[::1] total = np.zeros(nf)

    with nogil:
        for f in range(nf):
            total[f] = extra_interference
        for b in range(n_bs):
            for f in range(nf):
                total[f] += w[b] * h[b, f]
        for f in range(nf):
            out[f] = -INFINITY
        for k in range(n_tiers):
            scale = 1.0 + 1.0 / beta[k]
            for b in range(offsets[k], offsets[k + 1]):
                for f in range(nf):
                    margin = w[b] * h[b, f] * scale - total[f]
                    if margin > out[f]:
                        out[f] = margin
