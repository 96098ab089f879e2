"""Kernel backend selection.

The compiled extension is preferred when importable; set QAM_PURE_PYTHON=1
to force the numpy fallback (useful for benchmarking and debugging). The
choice is made once at import time.
"""

from __future__ import annotations

import os

if os.environ.get("QAM_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name() -> str:
    """Name of the active kernel backend, 'cython' or 'python'."""
    return BACKEND
