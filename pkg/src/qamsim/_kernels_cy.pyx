# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Same contracts as qamsim._kernels_py; see that module for the backend
agreement guarantees. Kernels never draw randomness themselves, callers
pass pre-drawn uniforms/normals.
"""

from libc.math cimport sqrt, fabs

import numpy as np


def draw_outcomes(double[::1] probs, double[::1] uniforms):
    """Cumulative-sum inversion sampling; clamps to the last slot."""
    cdef Py_ssize_t n = uniforms.shape[0]
    cdef Py_ssize_t k = probs.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] o = out
    cdef Py_ssize_t i, j
    cdef double u, acc
    for i in range(n):
        u = uniforms[i]
        acc = 0.0
        o[i] = k - 1
        for j in range(k):
            # Running sum matches np.cumsum exactly (sequential adds), so
            # outcomes are bit-identical to the numpy backend.
            acc += probs[j]
            if u < acc:
                o[i] = j
                break
    return out


def chain_survivors(double[::1] pass_probs, double[:, ::1] uniforms):
    """Count particles passing every filter of a sequential chain."""
    cdef Py_ssize_t n = uniforms.shape[0]
    cdef Py_ssize_t k = pass_probs.shape[0]
    cdef Py_ssize_t i, j
    cdef long long count = 0
    cdef bint alive
    for i in range(n):
        alive = True
        for j in range(k):
            if uniforms[i, j] >= pass_probs[j]:
                alive = False
                break
        if alive:
            count += 1
    return int(count)


def abs_overlaps_real(double[:, ::1] w, double[:, ::1] v):
    """Per-row |(w_i, v_i)| / (||w_i|| ||v_i||)."""
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t dim = w.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    cdef double dot, sw, sv, wi, vi
    for i in range(n):
        dot = 0.0
        sw = 0.0
        sv = 0.0
        for j in range(dim):
            wi = w[i, j]
            vi = v[i, j]
            dot += wi * vi
            sw += wi * wi
            sv += vi * vi
        o[i] = fabs(dot) / (sqrt(sw) * sqrt(sv))
    return out


def abs_overlaps_complex(double complex[:, ::1] w, double complex[:, ::1] v):
    """Per-row |inner(w_i, v_i)| / (||w_i|| ||v_i||), conjugating v."""
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t dim = w.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    cdef double re, im, sw, sv, wr, wi_, vr, vi_
    for i in range(n):
        re = 0.0
        im = 0.0
        sw = 0.0
        sv = 0.0
        for j in range(dim):
            wr = w[i, j].real
            wi_ = w[i, j].imag
            vr = v[i, j].real
            vi_ = v[i, j].imag
            # w * conj(v)
            re += wr * vr + wi_ * vi_
            im += wi_ * vr - wr * vi_
            sw += wr * wr + wi_ * wi_
            sv += vr * vr + vi_ * vi_
        o[i] = sqrt(re * re + im * im) / (sqrt(sw) * sqrt(sv))
    return out


def mgs_orthonormalize(double complex[:, ::1] vectors, double rel_tol, double zero_tol):
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Returns (q, kept) exactly as the numpy backend does; the drop rule is
    identical, only summation order in the dot products differs.
    """
    cdef Py_ssize_t n = vectors.shape[0]
    cdef Py_ssize_t dim = vectors.shape[1]
    q_arr = np.empty((n, dim), dtype=np.complex128)
    kept_arr = np.empty(n, dtype=np.int64)
    cdef double complex[:, ::1] q = q_arr
    cdef long long[::1] kept = kept_arr
    x_arr = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] x = x_arr
    cdef Py_ssize_t i, j, d, r = 0
    cdef int rpass
    cdef double xnorm0, xnorm, s
    cdef double complex c
    for i in range(n):
        s = 0.0
        for d in range(dim):
            x[d] = vectors[i, d]
            s += x[d].real * x[d].real + x[d].imag * x[d].imag
        xnorm0 = sqrt(s)
        if xnorm0 <= zero_tol:
            continue
        for rpass in range(2):
            for j in range(r):
                # c = <q_j | x>
                c = 0.0
                for d in range(dim):
                    c += q[j, d].conjugate() * x[d]
                for d in range(dim):
                    x[d] = x[d] - c * q[j, d]
        s = 0.0
        for d in range(dim):
            s += x[d].real * x[d].real + x[d].imag * x[d].imag
        xnorm = sqrt(s)
        if xnorm <= zero_tol or xnorm < rel_tol * xnorm0:
            continue
        for d in range(dim):
            q[r, d] = x[d] / xnorm
        kept[r] = i
        r += 1
    return q_arr[:r].copy(), kept_arr[:r].copy()
