"""Dense finite-dimensional Hilbert-space arithmetic.

States are 1-D complex128 numpy arrays. Physical states are rays: ``v`` and
``lam * v`` describe the same state for any nonzero complex ``lam``, so the
operations here either normalize internally or are insensitive to global
scale and phase.

The inner product convention is fixed once for the whole package:

    inner_product(a, b) = sum_i a[i] * conj(b[i])

i.e. the *second* argument is conjugated. The form is linear in ``a`` and
conjugate-linear in ``b``. Mixing conventions is the classic source of sign
errors, so every downstream module routes through this function.

REAL-field data is a constrained view of the complex representation: the
imaginary parts are required to be exactly zero, there is no separate code
path for the arithmetic.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import (
    DimensionError,
    FieldError,
    NormalizationError,
    ZeroVectorError,
)

#: Admission tolerance for unit-norm states.
NORM_TOL = 1e-9
#: Below this norm a vector is treated as zero (no direction).
ZERO_TOL = 1e-12
#: Admission tolerance for pairwise orthogonality of basis/pattern systems.
ORTHO_TOL = 1e-8
#: Minimum in-span amplitude for a meaningful subspace correction.
SPAN_TOL = 1e-6


class Field(enum.Enum):
    """Scalar field of a state: REAL is COMPLEX with imaginary parts pinned to 0."""

    REAL = "REAL"
    COMPLEX = "COMPLEX"


def as_state(values) -> np.ndarray:
    """Coerce ``values`` to a 1-D complex128 state vector.

    Raises DimensionError for non-1-D input and ValueError for empty or
    non-finite amplitudes.
    """
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise DimensionError(f"state must be 1-D, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("state must have dimension >= 1")
    if not (np.isfinite(arr.real).all() and np.isfinite(arr.imag).all()):
        raise ValueError("state amplitudes must be finite")
    return arr


def as_generator(rng) -> np.random.Generator:
    """Accept a numpy Generator, an integer seed, or None (fresh entropy)."""
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        return np.random.default_rng()
    if isinstance(rng, (int, np.integer)):
        return np.random.Generator(np.random.PCG64(int(rng)))
    raise TypeError(f"expected numpy Generator or integer seed, got {type(rng).__name__}")


def check_field(vec, field: Field) -> None:
    """Raise FieldError if ``vec`` violates the REAL-field constraint."""
    if field is Field.REAL and np.any(np.asarray(vec, dtype=np.complex128).imag != 0.0):
        raise FieldError("REAL field requires all imaginary parts to be exactly zero")


def require_unit(vec, what: str = "state") -> np.ndarray:
    """Return ``vec`` as a state after checking its norm is 1 within NORM_TOL."""
    arr = as_state(vec)
    n = float(np.linalg.norm(arr))
    if abs(n - 1.0) > NORM_TOL:
        raise NormalizationError(f"{what} must be unit norm, got norm {n!r}")
    return arr


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    if av.ndim != 1 or bv.ndim != 1:
        raise DimensionError("operands must be 1-D state vectors")
    if av.shape[0] != bv.shape[0]:
        raise DimensionError(f"dimension mismatch: {av.shape[0]} vs {bv.shape[0]}")
    return av, bv


def inner_product(a, b) -> complex:
    """Hermitian scalar product, conjugating the second argument.

    ``inner_product(a, b) == sum_i a[i] * conj(b[i])``. For REAL-field data
    this reduces to the ordinary bilinear dot product.
    """
    av, bv = _pair(a, b)
    # np.vdot conjugates its first argument, hence the swap.
    return complex(np.vdot(bv, av))


def norm(a) -> float:
    """Euclidean norm, sqrt of inner_product(a, a) (which is real)."""
    return float(np.linalg.norm(np.asarray(a, dtype=np.complex128)))


def normalize(a) -> np.ndarray:
    """Scale ``a`` to unit norm. Raises ZeroVectorError below ZERO_TOL."""
    av = np.asarray(a, dtype=np.complex128)
    n = float(np.linalg.norm(av))
    if n <= ZERO_TOL:
        raise ZeroVectorError("cannot normalize a (numerically) zero vector")
    return av / n


def transition_probability(phi, psi) -> float:
    """Probability that ``phi`` registers on the detector for ``psi``.

    Equals ``|inner_product(phi, psi)|^2`` for unit vectors; for general
    nonzero vectors both squared norms divide out, which makes the value a
    function of the rays only. The result is clamped to [0, 1].
    """
    av, bv = _pair(phi, psi)
    na2 = float(np.vdot(av, av).real)
    nb2 = float(np.vdot(bv, bv).real)
    if na2 <= ZERO_TOL**2 or nb2 <= ZERO_TOL**2:
        raise ZeroVectorError("transition probability undefined for zero vectors")
    ov = complex(np.vdot(bv, av))
    p = (ov.real * ov.real + ov.imag * ov.imag) / (na2 * nb2)
    return float(min(max(p, 0.0), 1.0))


def apply_projector(psi, phi) -> np.ndarray:
    """Project ``phi`` onto the ray of the unit vector ``psi``.

    Returns ``psi * inner_product(phi, psi)``, the component of ``phi``
    along ``psi``. Idempotent when ``psi`` is unit norm (callers own that
    contract; it is not re-checked here).
    """
    pv, fv = _pair(psi, phi)
    return pv * complex(np.vdot(pv, fv))


def ray_equal(a, b, tol: float = 1e-9) -> bool:
    """True iff ``a`` and ``b`` describe the same ray within ``tol``."""
    return transition_probability(normalize(a), normalize(b)) >= 1.0 - tol


def canonical_ray(v) -> np.ndarray:
    """Canonical representative of the ray of ``v`` for serialization.

    Multiplies by the phase that makes the first amplitude of modulus
    above ZERO_TOL real and positive. Idempotent, and bit-stable: a vector
    already in canonical form is returned unchanged (multiplied by exactly
    1.0). Preserves exact-zero imaginary parts of REAL-field data.
    """
    av = np.asarray(v, dtype=np.complex128)
    pivots = np.flatnonzero(np.abs(av) > ZERO_TOL)
    if pivots.size == 0:
        raise ZeroVectorError("zero vector has no canonical ray form")
    a = complex(av[pivots[0]])
    out = av * (a.conjugate() / abs(a))
    # The pivot is |a| by construction; write it exactly so the rounding
    # residue of the complex multiply cannot leave a stray imaginary part
    # (bit-stable output needs exact idempotence).
    out[pivots[0]] = abs(a)
    return out


def random_unit_vector(dim: int, field: Field = Field.COMPLEX, rng=None) -> np.ndarray:
    """Draw a state uniformly from the unit sphere.

    Each component is i.i.d. standard normal (real part, plus an imaginary
    part in COMPLEX mode), then the vector is normalized. Deterministic for
    a fixed generator state.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    g = as_generator(rng)
    while True:
        if field is Field.REAL:
            vec = np.asarray(g.standard_normal(dim), dtype=np.complex128)
        else:
            vec = g.standard_normal(dim) + 1j * g.standard_normal(dim)
        n = float(np.linalg.norm(vec))
        if n > ZERO_TOL:
            return vec / n


def random_unitary(dim: int, rng, field: Field = Field.COMPLEX, rotations: int | None = None) -> np.ndarray:
    """Random unitary built from plane (Givens-style) rotations and phases.

    Applies ``rotations`` random two-coordinate rotations (default 2*dim)
    and, in COMPLEX mode, a random diagonal phase. The result is exactly
    unitary up to floating-point rounding; REAL mode yields an orthogonal
    matrix with exact-zero imaginary parts.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    g = as_generator(rng)
    u = np.eye(dim, dtype=np.complex128)
    if dim > 1:
        n_rot = 2 * dim if rotations is None else rotations
        for _ in range(n_rot):
            i = int(g.integers(dim))
            j = int(g.integers(dim - 1))
            if j >= i:
                j += 1
            theta = g.uniform(0.0, 2.0 * np.pi)
            c, s = np.cos(theta), np.sin(theta)
            ri, rj = u[i].copy(), u[j].copy()
            u[i] = c * ri + s * rj
            u[j] = -s * ri + c * rj
    if field is Field.COMPLEX:
        phases = np.exp(1j * g.uniform(0.0, 2.0 * np.pi, dim))
        u = phases[:, None] * u
    return u
