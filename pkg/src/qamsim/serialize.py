"""Text serialization for states, pattern banks, and subspaces.

All three formats share a one-line header followed by one vector per
line. Amplitudes are stored as alternating real/imag pairs rendered
with %.17g, which round-trips IEEE-754 doubles exactly. Vectors are
stored in canonical ray form so that physically equal states reload
byte-identically.

Formats::

    QAMBANK v1 dim=<d> field=<REAL|COMPLEX>
    <label> <re_0> <im_0> ... <re_{d-1}> <im_{d-1}>

    QAMSPAN v1 dim=<d> field=<REAL|COMPLEX>
    q<i> <re_0> <im_0> ...

    QAMSTATE v1 dim=<d> field=<REAL|COMPLEX>
    <re_0> <im_0> ...
"""

from __future__ import annotations

import numpy as np

from .aaam import Subspace
from .errors import FormatError
from .hilbert import Field, as_state, canonical_ray, normalize
from .patterns import PatternBank
from .pgm import image_to_state, read_pgm

_MAGIC_BANK = "QAMBANK"
_MAGIC_SPAN = "QAMSPAN"
_MAGIC_STATE = "QAMSTATE"


def _fmt(x: float) -> str:
    return "%.17g" % x


def _render_vector(v: np.ndarray) -> str:
    parts = []
    for a in v:
        parts.append(_fmt(a.real))
        parts.append(_fmt(a.imag))
    return " ".join(parts)


def _parse_header(line: str, magic: str) -> tuple[int, Field]:
    tokens = line.split()
    if len(tokens) != 4 or tokens[0] != magic or tokens[1] != "v1":
        raise FormatError(f"bad {magic} header: {line!r}")
    if not tokens[2].startswith("dim=") or not tokens[3].startswith("field="):
        raise FormatError(f"bad {magic} header: {line!r}")
    try:
        dim = int(tokens[2][4:])
    except ValueError:
        raise FormatError(f"bad dimension in header: {line!r}") from None
    if dim < 1:
        raise FormatError(f"dimension must be positive, got {dim}")
    fname = tokens[3][6:]
    try:
        field = Field[fname]
    except KeyError:
        raise FormatError(f"unknown field {fname!r} in header") from None
    return dim, field


def _parse_amplitudes(tokens: list[str], dim: int, where: str) -> np.ndarray:
    if len(tokens) != 2 * dim:
        raise FormatError(
            f"{where}: expected {2 * dim} numbers, got {len(tokens)}"
        )
    try:
        flat = np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError:
        raise FormatError(f"{where}: invalid number") from None
    return (flat[0::2] + 1j * flat[1::2]).astype(np.complex128)


def dumps_bank(bank: PatternBank) -> str:
    lines = [f"{_MAGIC_BANK} v1 dim={bank.dim} field={bank.field.name}"]
    for label, state in zip(bank.labels, bank.states):
        lines.append(f"{label} {_render_vector(canonical_ray(state))}")
    return "\n".join(lines) + "\n"


def loads_bank(text: str) -> PatternBank:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty bank file")
    dim, field = _parse_header(lines[0], _MAGIC_BANK)
    labels = []
    states = []
    for i, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if not tokens:
            continue
        labels.append(tokens[0])
        states.append(_parse_amplitudes(tokens[1:], dim, f"line {i}"))
    if not labels:
        raise FormatError("bank file has no patterns")
    return PatternBank(labels, states, field=field)


def dumps_subspace(sub: Subspace) -> str:
    field = Field.REAL if np.all(sub.basis.imag == 0.0) else Field.COMPLEX
    lines = [f"{_MAGIC_SPAN} v1 dim={sub.ambient_dim} field={field.name}"]
    for i in range(sub.rank):
        lines.append(f"q{i} {_render_vector(canonical_ray(sub.basis[i]))}")
    return "\n".join(lines) + "\n"


def loads_subspace(text: str) -> Subspace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty subspace file")
    dim, _field = _parse_header(lines[0], _MAGIC_SPAN)
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if not tokens:
            continue
        rows.append(_parse_amplitudes(tokens[1:], dim, f"line {i}"))
    if not rows:
        raise FormatError("subspace file has no basis vectors")
    basis = np.stack(rows)
    # A reloaded span carries no record of how many raw images produced
    # it, so the source count defaults to the rank.
    return Subspace(
        basis=basis,
        rank=len(rows),
        source_count=len(rows),
        ambient_dim=dim,
    )


def dumps_state(state: np.ndarray, field: Field | None = None) -> str:
    v = as_state(state)
    if field is None:
        field = Field.REAL if np.all(v.imag == 0.0) else Field.COMPLEX
    header = f"{_MAGIC_STATE} v1 dim={v.size} field={field.name}"
    return f"{header}\n{_render_vector(canonical_ray(v))}\n"


def loads_state(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise FormatError("state file must have a header and one amplitude line")
    dim, _field = _parse_header(lines[0], _MAGIC_STATE)
    return _parse_amplitudes(lines[1].split(), dim, "line 2")


def save_bank(bank: PatternBank, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_bank(bank))


def load_bank(path) -> PatternBank:
    with open(path, "r", encoding="ascii") as fh:
        return loads_bank(fh.read())


def save_subspace(sub: Subspace, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_subspace(sub))


def load_subspace(path) -> Subspace:
    with open(path, "r", encoding="ascii") as fh:
        return loads_subspace(fh.read())


def save_state(state: np.ndarray, path, field: Field | None = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_state(state, field=field))


def load_state(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return loads_state(fh.read())


def load_input_state(path) -> np.ndarray:
    """Load a unit state from either a PGM image or a QAMSTATE file.

    The format is sniffed from the leading bytes. Either way the result
    is normalized, so callers always receive a valid register state.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    head = data.lstrip()[:2]
    if head in (b"P2", b"P5"):
        return image_to_state(read_pgm(data))
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError(f"{path}: not a PGM or QAMSTATE file") from None
    return normalize(loads_state(text))
