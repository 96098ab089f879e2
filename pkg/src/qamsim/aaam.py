"""Auto-associative error correction by orthogonal projection.

Stored images span a subspace; a noisy input is corrected by projecting it
onto that span and renormalizing. The subspace carries an orthonormal basis
built by modified Gram-Schmidt (with one re-orthogonalization pass), so the
projector is simply the sum of the rank-1 projectors of the basis rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import AllDegenerateError, BasisError, DimensionError, OutOfSpanError
from .hilbert import (
    NORM_TOL,
    ORTHO_TOL,
    SPAN_TOL,
    ZERO_TOL,
    as_state,
    normalize,
    transition_probability,
)

#: Default relative tolerance below which an image's orthogonal residual is
#: considered linearly dependent and dropped.
DEPENDENCE_TOL = 1e-10


@dataclass(frozen=True)
class Subspace:
    """Orthonormal basis for the linear span of the stored images.

    ``basis`` has ``rank`` orthonormal rows in ``ambient_dim`` dimensions;
    ``source_count`` records how many images were ingested (dependent or
    degenerate ones are dropped, so rank <= source_count).
    """

    basis: np.ndarray
    rank: int
    source_count: int
    ambient_dim: int

    def __post_init__(self) -> None:
        b = self.basis
        if b.ndim != 2 or b.shape != (self.rank, self.ambient_dim):
            raise BasisError("subspace basis shape does not match rank/ambient_dim")
        if not (0 < self.rank <= min(self.source_count, self.ambient_dim)):
            raise BasisError("rank must satisfy 0 < rank <= min(source_count, ambient_dim)")
        gram = b @ b.conj().T
        if np.any(np.abs(np.sqrt(gram.diagonal().real) - 1.0) > NORM_TOL):
            raise BasisError("subspace basis rows must be unit norm")
        off = np.abs(gram - np.diag(gram.diagonal()))
        if off.size and float(off.max()) > ORTHO_TOL:
            raise BasisError("subspace basis rows must be pairwise orthogonal")
        b.setflags(write=False)


@dataclass(frozen=True)
class CorrectionReport:
    """Result of correcting one input.

    ``in_span_fraction`` is the squared norm of the projection of the
    normalized input (how much of it the memory explains) and
    ``residual_norm`` the length of the out-of-span remainder; for unit
    input the two satisfy in_span_fraction + residual_norm**2 == 1.
    """

    corrected: np.ndarray
    in_span_fraction: float
    residual_norm: float


def build_span(images, tol: float = DEPENDENCE_TOL) -> Subspace:
    """Orthonormalize stored images into a memory subspace.

    Images are processed in order by modified Gram-Schmidt with one
    re-orthogonalization pass. An image whose residual ends up below
    ``tol`` times its own norm contributes nothing new and is dropped;
    if every image is dropped, AllDegenerateError is raised.
    """
    rows = [as_state(img) for img in images]
    if not rows:
        raise ValueError("need at least one image")
    dim = rows[0].shape[0]
    for r in rows[1:]:
        if r.shape[0] != dim:
            raise DimensionError("all images must share one dimension")
    mat = np.ascontiguousarray(np.stack(rows))
    q, kept = kernels.mgs_orthonormalize(mat, float(tol), ZERO_TOL)
    if kept.size == 0:
        raise AllDegenerateError("every image is numerically zero or linearly dependent")
    return Subspace(basis=q, rank=int(kept.size), source_count=len(rows), ambient_dim=dim)


def project_onto_span(sub: Subspace, x) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the memory subspace."""
    xv = as_state(x)
    if xv.shape[0] != sub.ambient_dim:
        raise DimensionError(f"input dim {xv.shape[0]} does not match subspace dim {sub.ambient_dim}")
    coeff = sub.basis.conj() @ xv
    return coeff @ sub.basis


def correct(sub: Subspace, x) -> CorrectionReport:
    """Correct a noisy input by projecting it onto the stored span.

    The input is normalized, projected, and the projection renormalized to
    a unit ray (downstream recognition expects unit states). Raises
    OutOfSpanError when the projection is so small (norm <= SPAN_TOL) that
    its direction is numerically meaningless.
    """
    xu = normalize(as_state(x))
    xhat = project_onto_span(sub, xu)
    w = float(np.linalg.norm(xhat))
    if w <= SPAN_TOL:
        raise OutOfSpanError("input has essentially no component inside the stored span")
    residual = float(np.linalg.norm(xu - xhat))
    return CorrectionReport(corrected=xhat / w, in_span_fraction=w * w, residual_norm=residual)


def recall_error(reference, candidate) -> float:
    """Recall quality as 1 minus the squared overlap; 0 iff the same ray."""
    return float(min(max(1.0 - transition_probability(reference, candidate), 0.0), 1.0))
