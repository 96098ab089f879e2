"""Netpbm grayscale (PGM) ingestion.

Supports the ASCII P2 and binary P5 variants with maxval up to 65535
(two-byte big-endian samples above 255). ``#`` comments are honored
between header tokens and, for P2, between pixel tokens as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, RangeError, ZeroVectorError
from .hilbert import normalize

_WS = b" \t\n\r\v\f"


@dataclass(frozen=True)
class GrayImage:
    """Grayscale raster: row-major integer pixels in [0, maxval]."""

    width: int
    height: int
    maxval: int
    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise FormatError("image dimensions must be positive")
        if not (1 <= self.maxval <= 65535):
            raise FormatError(f"maxval must be in [1, 65535], got {self.maxval}")
        px = np.asarray(self.pixels, dtype=np.int64)
        if px.ndim != 1 or px.size != self.width * self.height:
            raise FormatError(
                f"expected {self.width * self.height} pixels, got {px.size}"
            )
        if px.size and (int(px.min()) < 0 or int(px.max()) > self.maxval):
            raise RangeError(f"pixel values must lie in [0, {self.maxval}]")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Scan the next whitespace-delimited token, skipping # comments."""
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WS:
            pos += 1
        elif c == ord("#"):
            nl = data.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        else:
            break
    if pos >= n:
        raise FormatError("unexpected end of file in header")
    start = pos
    while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos)
    try:
        return int(tok), pos
    except ValueError:
        raise FormatError(f"invalid {what}: {tok!r}") from None


def read_pgm(data: bytes) -> GrayImage:
    """Parse PGM bytes (P2 ASCII or P5 binary) into a GrayImage."""
    magic, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a PGM file: bad magic {magic!r}")
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise FormatError("image dimensions must be positive")
    if not (1 <= maxval <= 65535):
        raise FormatError(f"maxval must be in [1, 65535], got {maxval}")
    count = width * height

    if magic == b"P2":
        values = np.empty(count, dtype=np.int64)
        for i in range(count):
            try:
                values[i], pos = _int_token(data, pos, "pixel")
            except FormatError as exc:
                raise FormatError(f"pixel {i}: {exc}") from None
        # Only whitespace and comments may remain.
        rest = pos
        n = len(data)
        while rest < n:
            if data[rest] in _WS:
                rest += 1
            elif data[rest] == ord("#"):
                nl = data.find(b"\n", rest)
                rest = n if nl < 0 else nl + 1
            else:
                raise FormatError("trailing data after pixel raster")
    else:
        # Exactly one whitespace byte separates the header from the raster.
        if pos >= len(data) or data[pos] not in _WS:
            raise FormatError("missing whitespace before binary raster")
        pos += 1
        sample_size = 1 if maxval < 256 else 2
        raster = data[pos:]
        if len(raster) < count * sample_size:
            raise FormatError(
                f"truncated raster: expected {count * sample_size} bytes, got {len(raster)}"
            )
        if len(raster) > count * sample_size:
            raise FormatError("trailing data after pixel raster")
        if sample_size == 1:
            values = np.frombuffer(raster, dtype=np.uint8).astype(np.int64)
        else:
            values = np.frombuffer(raster, dtype=">u2").astype(np.int64)

    if values.size and int(values.max()) > maxval:
        raise RangeError(f"pixel value {int(values.max())} exceeds maxval {maxval}")
    if values.size and int(values.min()) < 0:
        raise RangeError("negative pixel value")
    return GrayImage(width=width, height=height, maxval=maxval, pixels=values)


def read_pgm_file(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def image_to_state(img: GrayImage) -> np.ndarray:
    """Flatten an image row-major into a unit REAL-field state.

    Each pixel maps linearly to the amplitude pixel/maxval before
    normalization; an all-black image has no direction and raises
    ZeroVectorError.
    """
    amps = img.pixels.astype(np.float64) / img.maxval
    if not np.any(amps):
        raise ZeroVectorError("all-black image does not define a state")
    return normalize(amps.astype(np.complex128))
