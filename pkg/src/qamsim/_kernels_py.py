"""Numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension
(``qamsim._kernels_cy``) is unavailable or disabled via QAM_PURE_PYTHON=1.
Both backends implement the same contracts:

- ``draw_outcomes`` and ``chain_survivors`` are bit-identical across
  backends for the same inputs (the comparisons are exact).
- ``abs_overlaps_*`` and ``mgs_orthonormalize`` agree to floating-point
  rounding (summation order differs between numpy reductions and C loops).

Randomness never enters a kernel: callers pre-draw uniforms/normals from
their numpy Generator so that random-stream consumption is identical no
matter which backend runs.
"""

from __future__ import annotations

import numpy as np


def draw_outcomes(probs: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Sample outcome indices by cumulative-sum inversion.

    For each uniform u, returns the first index i with u < cumsum(probs)[i],
    clamped to the last slot (covers u falling into rounding slack at the
    top of the distribution).
    """
    cum = np.cumsum(np.asarray(probs, dtype=np.float64))
    idx = np.searchsorted(cum, np.asarray(uniforms, dtype=np.float64), side="right")
    return np.minimum(idx, cum.size - 1).astype(np.int64)


def chain_survivors(pass_probs: np.ndarray, uniforms: np.ndarray) -> int:
    """Count particles surviving a sequential filter chain.

    ``uniforms`` has one row per particle and one column per filter;
    particle i survives iff uniforms[i, k] < pass_probs[k] for every k.
    """
    u = np.asarray(uniforms, dtype=np.float64)
    q = np.asarray(pass_probs, dtype=np.float64)
    return int((u < q).all(axis=1).sum())


def abs_overlaps_real(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Per-row |(w_i, v_i)| / (||w_i|| ||v_i||) for real row batches."""
    dots = np.einsum("ij,ij->i", w, v)
    nw = np.sqrt(np.einsum("ij,ij->i", w, w))
    nv = np.sqrt(np.einsum("ij,ij->i", v, v))
    return np.abs(dots) / (nw * nv)


def abs_overlaps_complex(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Per-row |inner(w_i, v_i)| / (||w_i|| ||v_i||) for complex row batches."""
    dots = np.einsum("ij,ij->i", w, v.conj())
    nw = np.sqrt(np.einsum("ij,ij->i", w, w.conj()).real)
    nv = np.sqrt(np.einsum("ij,ij->i", v, v.conj()).real)
    return np.abs(dots) / (nw * nv)


def mgs_orthonormalize(
    vectors: np.ndarray, rel_tol: float, zero_tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Rows of ``vectors`` are processed in order. A row whose norm is at most
    ``zero_tol``, or whose residual after orthogonalization is below
    ``rel_tol`` times its original norm, is dropped as linearly dependent.

    Returns (q, kept): ``q`` has orthonormal rows spanning the retained
    inputs, ``kept`` holds the input indices that survived.
    """
    mat = np.ascontiguousarray(vectors, dtype=np.complex128)
    n, dim = mat.shape
    q = np.empty((n, dim), dtype=np.complex128)
    kept = []
    r = 0
    for i in range(n):
        x = mat[i].copy()
        xnorm0 = np.linalg.norm(x)
        if xnorm0 <= zero_tol:
            continue
        for _ in range(2):
            for j in range(r):
                x -= np.vdot(q[j], x) * q[j]
        xnorm = np.linalg.norm(x)
        if xnorm <= zero_tol or xnorm < rel_tol * xnorm0:
            continue
        q[r] = x / xnorm
        kept.append(i)
        r += 1
    return q[:r].copy(), np.asarray(kept, dtype=np.int64)
