"""Max-channel pattern recognition over a bank of stored rays.

A PatternBank holds labeled unit-norm weight vectors; the index of the most
strongly activated channel encodes the recognized pattern. Three modes:

- deterministic: argmax of the squared normalized overlap with each stored
  pattern (scale-invariant, works for any bank);
- sampled: one projective measurement with the bank as the outcome basis,
  valid only when the stored patterns are mutually orthogonal;
- multi-copy: distribute m identical copies of the input across one
  two-outcome filter per pattern and pick the channel with the highest
  empirical pass rate; this handles non-orthogonal banks.

The classical formal-neuron activation (plain real dot product followed by
a hard threshold) is kept alongside as the non-quantum reference surface.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BankError,
    DimensionError,
    FieldError,
    InsufficientCopiesError,
    OrthogonalityError,
)
from .hilbert import (
    NORM_TOL,
    ORTHO_TOL,
    Field,
    as_generator,
    as_state,
    normalize,
    require_unit,
)
from .measurement import RESIDUAL, RESIDUAL_LABEL, MeasurementBasis, measure


class RecognitionMode(enum.Enum):
    DETERMINISTIC = "deterministic"
    SAMPLED = "sampled"
    MULTI_COPY = "multicopy"


@dataclass(frozen=True)
class RecognitionResult:
    """Outcome of a recognition query.

    ``score`` is the squared overlap for deterministic mode, the Born
    probability of the registered channel for sampled mode, and the winning
    empirical pass rate for multi-copy mode (which also fills
    ``pass_rates``, one estimate per channel).
    """

    label: str
    channel_index: int
    score: float
    mode: RecognitionMode
    pass_rates: np.ndarray | None = dc_field(default=None)


class PatternBank:
    """Immutable labeled set of unit-norm pattern rays.

    Labels must be unique, non-empty, and free of whitespace (the text file
    format is whitespace-delimited). ``orthogonal`` reports whether all
    pairwise overlaps are below ORTHO_TOL, which decides whether
    single-system sampled recognition is available.
    """

    def __init__(self, labels, states, field: Field = Field.COMPLEX) -> None:
        labels = [str(x) for x in labels]
        arr = np.array(states, dtype=np.complex128, copy=True)
        if arr.ndim != 2:
            raise BankError(f"pattern states must form a 2-D array, got shape {arr.shape}")
        k, dim = arr.shape
        if k < 1:
            raise BankError("a pattern bank needs at least one pattern")
        if len(labels) != k:
            raise BankError(f"{len(labels)} labels for {k} patterns")
        if len(set(labels)) != k:
            raise BankError("pattern labels must be unique")
        for label in labels:
            if not label or any(c.isspace() for c in label):
                raise BankError(f"invalid pattern label {label!r}")
        if not (np.isfinite(arr.real).all() and np.isfinite(arr.imag).all()):
            raise BankError("pattern amplitudes must be finite")
        if field is Field.REAL and np.any(arr.imag != 0.0):
            raise FieldError("REAL-field bank has nonzero imaginary amplitudes")
        gram = arr @ arr.conj().T
        norms = np.sqrt(gram.diagonal().real)
        if np.any(np.abs(norms - 1.0) > NORM_TOL):
            bad = labels[int(np.argmax(np.abs(norms - 1.0)))]
            raise BankError(f"pattern {bad!r} is not unit norm")
        off = np.abs(gram - np.diag(gram.diagonal()))
        arr.setflags(write=False)
        self.labels: tuple[str, ...] = tuple(labels)
        self.states = arr
        self.field = field
        self.orthogonal: bool = bool(off.size == 0 or float(off.max()) <= ORTHO_TOL)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def size(self) -> int:
        return self.states.shape[0]

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"PatternBank(size={self.size}, dim={self.dim}, "
            f"field={self.field.value}, orthogonal={self.orthogonal})"
        )


def neuron_activation(w, s) -> float:
    """Formal-neuron activation: the plain real dot product of weights and signals."""
    wv = as_state(w)
    sv = as_state(s)
    if wv.shape[0] != sv.shape[0]:
        raise DimensionError(f"dimension mismatch: {wv.shape[0]} vs {sv.shape[0]}")
    if np.any(wv.imag != 0.0) or np.any(sv.imag != 0.0):
        raise FieldError("the classical neuron is defined for REAL-field vectors only")
    return float(np.dot(wv.real, sv.real))


def threshold_output(activation: float, threshold: float) -> int:
    """Hard threshold unit: 1 if activation > threshold else 0 (boundary gives 0)."""
    return 1 if activation > threshold else 0


def _squared_overlaps(bank: PatternBank, s: np.ndarray) -> np.ndarray:
    amps = bank.states.conj() @ s
    return amps.real**2 + amps.imag**2


def classify_max_channel(bank: PatternBank, s) -> RecognitionResult:
    """Deterministic recognition: argmax of squared normalized overlap.

    The input is normalized internally, so any nonzero rescaling of ``s``
    yields the identical result. Ties break toward the lowest channel
    index.
    """
    sv = as_state(s)
    if sv.shape[0] != bank.dim:
        raise DimensionError(f"signal dim {sv.shape[0]} does not match bank dim {bank.dim}")
    scores = _squared_overlaps(bank, normalize(sv))
    idx = int(np.argmax(scores))
    return RecognitionResult(bank.labels[idx], idx, float(scores[idx]), RecognitionMode.DETERMINISTIC)


def recognize_sampled(bank: PatternBank, s, rng) -> RecognitionResult:
    """One-shot measurement-based recognition against an orthogonal bank.

    The bank's patterns form the outcome basis of a single N-outcome
    measurement; the registered channel is returned with its Born
    probability as the score. A draw landing outside the stored span is
    reported with label RESIDUAL and channel index -1. Raises
    OrthogonalityError for non-orthogonal banks, where a single-system
    measurement device cannot separate the patterns.
    """
    if not bank.orthogonal:
        raise OrthogonalityError(
            "sampled recognition needs mutually orthogonal patterns; "
            "use multi-copy recognition instead"
        )
    record = measure(MeasurementBasis(bank.states), s, rng)
    if record.outcome_index == RESIDUAL:
        return RecognitionResult(RESIDUAL_LABEL, RESIDUAL, record.probability, RecognitionMode.SAMPLED)
    idx = record.outcome_index
    return RecognitionResult(bank.labels[idx], idx, record.probability, RecognitionMode.SAMPLED)


def multi_copy_recognize(bank: PatternBank, s, m: int, rng) -> RecognitionResult:
    """Recognition from ``m`` identical copies spread over per-pattern filters.

    Copies are allocated round-robin (each filter gets floor(m/K) or
    ceil(m/K), earlier channels take the extras). Each copy independently
    passes filter k with probability |<w_k|s>|^2; the channel with the
    highest empirical pass rate wins, ties toward the lowest index. Unlike
    sampled recognition this works for non-orthogonal banks.
    """
    sv = require_unit(s, what="input state")
    if sv.shape[0] != bank.dim:
        raise DimensionError(f"signal dim {sv.shape[0]} does not match bank dim {bank.dim}")
    k = bank.size
    if m < k:
        raise InsufficientCopiesError(f"need at least {k} copies (one per filter), got {m}")
    g = as_generator(rng)
    probs = _squared_overlaps(bank, sv)
    base, extra = divmod(m, k)
    rates = np.empty(k, dtype=np.float64)
    for ch in range(k):
        n_ch = base + (1 if ch < extra else 0)
        rates[ch] = float((g.random(n_ch) < probs[ch]).sum()) / n_ch
    idx = int(np.argmax(rates))
    rates.setflags(write=False)
    return RecognitionResult(
        bank.labels[idx], idx, float(rates[idx]), RecognitionMode.MULTI_COPY, pass_rates=rates
    )
