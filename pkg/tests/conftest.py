"""Shared fixtures and the independent brute-force overlap oracle.

The oracle is deliberately written against the standard library only
(random.gauss, plain list arithmetic) so it shares no code with the
package under test. It pins the constant behind the N^(-1/2) law:
E[(w, v)^2] = 1/N for independent uniform unit vectors on the real
sphere, hence dim * mean_sq -> 1.
"""

import math
import random

import numpy as np
import pytest


def oracle_overlap_moments(dim, trials, seed):
    """Brute-force mean |overlap| and mean squared overlap, stdlib only."""
    rnd = random.Random(seed)
    total_abs = 0.0
    total_sq = 0.0
    for _ in range(trials):
        w = [rnd.gauss(0.0, 1.0) for _ in range(dim)]
        v = [rnd.gauss(0.0, 1.0) for _ in range(dim)]
        dot = sum(a * b for a, b in zip(w, v))
        nw = math.sqrt(sum(a * a for a in w))
        nv = math.sqrt(sum(b * b for b in v))
        ov = abs(dot) / (nw * nv)
        total_abs += ov
        total_sq += ov * ov
    return total_abs / trials, total_sq / trials


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def make_pgm(tmp_path):
    """Write a P2 image file and return its path."""

    def _make(name, pixels, width, height, maxval=255, comment=None):
        lines = ["P2"]
        if comment:
            lines.append(f"# {comment}")
        lines.append(f"{width} {height}")
        lines.append(str(maxval))
        lines.append(" ".join(str(p) for p in pixels))
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n")
        return path

    return _make
