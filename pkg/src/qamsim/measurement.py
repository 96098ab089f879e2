"""Projective measurement simulation.

Implements the three measurement devices used by the recognition and
error-correction models:

- an N-outcome measurement against an orthonormal (possibly partial) basis,
  with Born-rule outcome probabilities, sampling, and collapse;
- a two-outcome filter (pass / absorb) realizing a single rank-1 projector;
- sequential filter chains in the style of a Stern-Gerlach cascade, with an
  analytic survival probability and a per-particle sampled cross-check.

A partial basis (fewer outcome states than the dimension) is permitted; the
leftover probability mass is reported through an explicit RESIDUAL channel
whose post-measurement state is the normalized out-of-basis component.

All sampling consumes a caller-supplied numpy Generator (or integer seed),
one uniform draw per shot, so runs are reproducible. If shots are ever
partitioned across workers, each worker must use an independent sub-stream
seeded as ``master_seed XOR worker_index``; see qamsim.stats for the
reference implementation of that rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .errors import BasisError, DimensionError, ZeroVectorError
from .hilbert import (
    NORM_TOL,
    ORTHO_TOL,
    ZERO_TOL,
    apply_projector,
    as_generator,
    as_state,
    normalize,
    require_unit,
    transition_probability,
)

#: Sentinel outcome index for the "fell outside the basis" channel.
RESIDUAL = -1

#: Label used for the residual channel in histograms and CSV output.
RESIDUAL_LABEL = "RESIDUAL"


class MeasurementBasis:
    """Ordered set of mutually orthonormal outcome states.

    Between 1 and ``dim`` states are allowed. Orthonormality is checked on
    construction: row norms within NORM_TOL of 1, pairwise overlap moduli
    at most ORTHO_TOL. Violations raise BasisError. The stored array is
    read-only; a basis never changes after construction.
    """

    def __init__(self, states) -> None:
        arr = np.array(states, dtype=np.complex128, copy=True)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2:
            raise BasisError(f"basis states must form a 2-D array, got shape {arr.shape}")
        k, dim = arr.shape
        if k < 1:
            raise BasisError("a basis needs at least one outcome state")
        if k > dim:
            raise BasisError(f"{k} outcome states cannot be orthonormal in dimension {dim}")
        if not (np.isfinite(arr.real).all() and np.isfinite(arr.imag).all()):
            raise BasisError("basis amplitudes must be finite")
        gram = arr @ arr.conj().T
        norms = np.sqrt(gram.diagonal().real)
        if np.any(np.abs(norms - 1.0) > NORM_TOL):
            raise BasisError("every basis state must be unit norm within NORM_TOL")
        off = np.abs(gram - np.diag(gram.diagonal()))
        if off.size and float(off.max()) > ORTHO_TOL:
            raise BasisError(
                f"basis states are not pairwise orthogonal: max |overlap| = {float(off.max()):.3e}"
            )
        arr.setflags(write=False)
        self.states = arr

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def size(self) -> int:
        """Number of explicit outcome channels (excluding RESIDUAL)."""
        return self.states.shape[0]

    def __repr__(self) -> str:  # pragma: no cover
        return f"MeasurementBasis(size={self.size}, dim={self.dim})"


@dataclass(frozen=True)
class MeasurementRecord:
    """One measurement event: the registered channel, collapse state, and
    the Born probability of that channel."""

    outcome_index: int
    post_state: np.ndarray
    probability: float


class FilterOutcome(enum.Enum):
    PASS = "PASS"
    ABSORB = "ABSORB"


@dataclass(frozen=True)
class FilterRecord:
    """One pass through a two-outcome filter."""

    outcome: FilterOutcome
    post_state: np.ndarray
    probability: float


def _amplitudes(basis: MeasurementBasis, chi: np.ndarray) -> np.ndarray:
    # a_i = <psi_i | chi>
    return basis.states.conj() @ chi


def _check_state(basis: MeasurementBasis, chi) -> np.ndarray:
    arr = as_state(chi)
    if arr.shape[0] != basis.dim:
        raise DimensionError(f"state dim {arr.shape[0]} does not match basis dim {basis.dim}")
    return require_unit(arr, what="measured state")


def outcome_distribution(basis: MeasurementBasis, chi) -> np.ndarray:
    """Born-rule probability vector over the basis channels plus RESIDUAL.

    Entry i is |<psi_i|chi>|^2; the final entry is the leftover mass
    1 - sum_i Pr_i clamped to [0, 1]. The full vector sums to 1 within
    1e-9 for any unit input.
    """
    arr = _check_state(basis, chi)
    amps = _amplitudes(basis, arr)
    probs = amps.real**2 + amps.imag**2
    residual = min(max(1.0 - float(probs.sum()), 0.0), 1.0)
    return np.concatenate([probs, [residual]])


def measure(basis: MeasurementBasis, chi, rng) -> MeasurementRecord:
    """Sample one outcome and collapse.

    A single uniform draw is inverted against the cumulative distribution.
    The post state is the registered basis state, or for RESIDUAL the
    normalized component of ``chi`` outside the basis span.
    """
    g = as_generator(rng)
    arr = _check_state(basis, chi)
    amps = _amplitudes(basis, arr)
    probs = amps.real**2 + amps.imag**2
    residual = min(max(1.0 - float(probs.sum()), 0.0), 1.0)
    dist = np.concatenate([probs, [residual]])
    u = np.asarray([g.random()], dtype=np.float64)
    idx = int(kernels.draw_outcomes(dist, u)[0])
    if idx < basis.size:
        return MeasurementRecord(idx, basis.states[idx].copy(), float(dist[idx]))
    rest = arr - amps @ basis.states
    rest_norm = float(np.linalg.norm(rest))
    if rest_norm <= ZERO_TOL:
        # Only reachable if the distribution disagrees with the amplitudes.
        raise ZeroVectorError("residual outcome drawn but the residual component vanishes")
    return MeasurementRecord(RESIDUAL, rest / rest_norm, float(dist[-1]))


def filter(psi, chi, rng) -> FilterRecord:  # noqa: A001 - domain term
    """Two-outcome device for the ray of ``psi``.

    PASS happens with probability |<psi|chi>|^2 and leaves the system in
    ``psi``; ABSORB leaves it in the normalized complement component. The
    complement state for the absorbed branch is a simulation convenience
    (physically the particle is lost).
    """
    g = as_generator(rng)
    pv = require_unit(psi, what="filter state")
    cv = require_unit(chi, what="input state")
    if pv.shape[0] != cv.shape[0]:
        raise DimensionError(f"dimension mismatch: {pv.shape[0]} vs {cv.shape[0]}")
    p = transition_probability(cv, pv)
    if g.random() < p:
        return FilterRecord(FilterOutcome.PASS, pv.copy(), p)
    return FilterRecord(FilterOutcome.ABSORB, normalize(cv - apply_projector(pv, cv)), 1.0 - p)


def _chain_pass_probs(filters: Sequence, chi) -> np.ndarray:
    if len(filters) == 0:
        raise ValueError("filter chain must contain at least one filter")
    cv = require_unit(chi, what="input state")
    fs = [require_unit(f, what="filter state") for f in filters]
    for f in fs:
        if f.shape[0] != cv.shape[0]:
            raise DimensionError("all filters must match the input dimension")
    qs = [transition_probability(cv, fs[0])]
    for prev, cur in zip(fs, fs[1:]):
        qs.append(transition_probability(prev, cur))
    return np.asarray(qs, dtype=np.float64)


def filter_chain(filters: Sequence, chi) -> float:
    """Analytic survival probability of a sequential filter chain.

    Sequential collapse semantics: after passing filter k the particle is
    exactly in that filter's state, so the survival probability is
    |<f_1|chi>|^2 times the product of consecutive |<f_k|f_{k-1}>|^2.
    """
    return float(np.prod(_chain_pass_probs(filters, chi)))


def filter_chain_sampled(filters: Sequence, chi, n: int, rng) -> int:
    """Per-particle simulation of the chain; returns the survivor count.

    Each of the ``n`` particles consumes one pre-drawn uniform per filter
    (whether or not it survives that far), so the consumed random stream
    does not depend on the outcomes.
    """
    if n < 1:
        raise ValueError(f"particle count must be >= 1, got {n}")
    g = as_generator(rng)
    qs = _chain_pass_probs(filters, chi)
    uniforms = g.random((n, qs.size))
    return int(kernels.chain_survivors(qs, uniforms))


def sample_counts(basis: MeasurementBasis, chi, n: int, rng) -> np.ndarray:
    """Histogram of ``n`` independent measurements of ``chi``.

    Returns integer counts of length ``basis.size + 1`` (RESIDUAL last),
    summing to ``n``. Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    g = as_generator(rng)
    dist = outcome_distribution(basis, chi)
    idx = kernels.draw_outcomes(dist, g.random(n))
    return np.bincount(idx, minlength=dist.size).astype(np.int64)


def histogram_csv(labels: Sequence[str], counts: np.ndarray, probabilities: np.ndarray) -> str:
    """Render a sampling histogram as CSV.

    Columns: outcome_label, count, empirical_frequency, exact_probability.
    ``labels`` covers the explicit channels; the RESIDUAL row is appended
    automatically. Frequencies/probabilities are written with full float
    precision so that identical runs produce byte-identical output.
    """
    counts = np.asarray(counts)
    probabilities = np.asarray(probabilities, dtype=np.float64)
    if len(labels) + 1 != counts.size or counts.size != probabilities.size:
        raise ValueError("labels, counts and probabilities sizes are inconsistent")
    total = int(counts.sum())
    lines = ["outcome_label,count,empirical_frequency,exact_probability"]
    for label, c, p in zip(list(labels) + [RESIDUAL_LABEL], counts, probabilities):
        lines.append(f"{label},{int(c)},{int(c) / total!r},{float(p)!r}")
    return "\n".join(lines) + "\n"
