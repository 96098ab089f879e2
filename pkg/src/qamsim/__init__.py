"""Finite-dimensional quantum register simulator.

Dense complex state vectors with projective measurement, max-channel
pattern recognition, subspace error correction, and Monte Carlo overlap
statistics. Hot kernels run on a compiled extension when available, with
a pure numpy fallback selected at import time.
"""

from ._backend import BACKEND, backend_name
from .aaam import (
    DEPENDENCE_TOL,
    CorrectionReport,
    Subspace,
    build_span,
    correct,
    project_onto_span,
    recall_error,
)
from .errors import (
    AllDegenerateError,
    BankError,
    BasisError,
    DimensionError,
    FieldError,
    FormatError,
    InsufficientCopiesError,
    NormalizationError,
    OrthogonalityError,
    OutOfSpanError,
    QamError,
    RangeError,
    ZeroVectorError,
)
from .hilbert import (
    NORM_TOL,
    ORTHO_TOL,
    SPAN_TOL,
    ZERO_TOL,
    Field,
    apply_projector,
    as_state,
    canonical_ray,
    inner_product,
    norm,
    normalize,
    random_unit_vector,
    random_unitary,
    ray_equal,
    transition_probability,
)
from .measurement import (
    RESIDUAL,
    RESIDUAL_LABEL,
    FilterOutcome,
    FilterRecord,
    MeasurementBasis,
    MeasurementRecord,
    filter,
    filter_chain,
    filter_chain_sampled,
    histogram_csv,
    measure,
    outcome_distribution,
    sample_counts,
)
from .patterns import (
    PatternBank,
    RecognitionMode,
    RecognitionResult,
    classify_max_channel,
    multi_copy_recognize,
    neuron_activation,
    recognize_sampled,
    threshold_output,
)
from .pgm import GrayImage, image_to_state, read_pgm, read_pgm_file
from .serialize import (
    dumps_bank,
    dumps_state,
    dumps_subspace,
    load_bank,
    load_input_state,
    load_state,
    load_subspace,
    loads_bank,
    loads_state,
    loads_subspace,
    save_bank,
    save_state,
    save_subspace,
)
from .stats import (
    BLOCK_TRIALS,
    GramReport,
    OverlapSummary,
    gram_csv,
    gram_report,
    overlap_csv,
    overlap_statistic,
    substream_seed,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BLOCK_TRIALS",
    "DEPENDENCE_TOL",
    "NORM_TOL",
    "ORTHO_TOL",
    "RESIDUAL",
    "RESIDUAL_LABEL",
    "SPAN_TOL",
    "ZERO_TOL",
    "AllDegenerateError",
    "BankError",
    "BasisError",
    "CorrectionReport",
    "DimensionError",
    "Field",
    "FieldError",
    "FilterOutcome",
    "FilterRecord",
    "FormatError",
    "GramReport",
    "GrayImage",
    "InsufficientCopiesError",
    "MeasurementBasis",
    "MeasurementRecord",
    "NormalizationError",
    "OrthogonalityError",
    "OutOfSpanError",
    "OverlapSummary",
    "PatternBank",
    "QamError",
    "RangeError",
    "RecognitionMode",
    "RecognitionResult",
    "Subspace",
    "ZeroVectorError",
    "apply_projector",
    "as_state",
    "backend_name",
    "build_span",
    "canonical_ray",
    "classify_max_channel",
    "correct",
    "dumps_bank",
    "dumps_state",
    "dumps_subspace",
    "filter",
    "filter_chain",
    "filter_chain_sampled",
    "gram_csv",
    "gram_report",
    "histogram_csv",
    "image_to_state",
    "inner_product",
    "load_bank",
    "load_input_state",
    "load_state",
    "load_subspace",
    "loads_bank",
    "loads_state",
    "loads_subspace",
    "measure",
    "multi_copy_recognize",
    "neuron_activation",
    "norm",
    "normalize",
    "outcome_distribution",
    "overlap_csv",
    "overlap_statistic",
    "project_onto_span",
    "random_unit_vector",
    "random_unitary",
    "ray_equal",
    "recall_error",
    "recognize_sampled",
    "sample_counts",
    "save_bank",
    "save_state",
    "save_subspace",
    "substream_seed",
    "threshold_output",
    "transition_probability",
]
