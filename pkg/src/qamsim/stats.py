"""Monte Carlo statistics for random-ray overlaps and bank diagnostics.

Random unit vectors in dimension N have overlaps that shrink like
N**(-1/2); concretely, on the real unit sphere E[(w, v)**2] = 1/N, so
``scaled_mean_sq`` (N times the empirical mean squared overlap) should sit
near 1 for every N. ``overlap_statistic`` estimates these moments; the
test suite pins the constant against an independent brute-force sampler.

Determinism and parallelism
---------------------------
Trials are partitioned into fixed-size blocks of BLOCK_TRIALS; block ``i``
draws from its own generator seeded ``substream_seed(seed, i)`` (the
documented splitting rule: master seed XOR stream index). Per-block sums
are reduced in block order, so the result is a function of (dim, trials,
field, seed) only: running the blocks on 1 or many workers yields the
identical summary.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .hilbert import Field
from .patterns import PatternBank

#: Fixed trial-block size; part of the deterministic stream layout, do not
#: change without accepting new (still deterministic) statistics.
BLOCK_TRIALS = 2048


@dataclass(frozen=True)
class OverlapSummary:
    """Empirical overlap moments for random unit-vector pairs."""

    dim: int
    trials: int
    mean_abs_overlap: float
    mean_sq_overlap: float
    scaled_mean_sq: float
    field: Field
    seed: int


@dataclass(frozen=True)
class GramReport:
    """Absolute Gram matrix of a bank plus its largest off-diagonal entry."""

    matrix: np.ndarray
    max_off_diagonal: float


def substream_seed(master_seed: int, index: int) -> int:
    """Seed for independent sub-stream ``index``: master_seed XOR index."""
    return int(master_seed) ^ int(index)


def _block_sums(dim: int, block: int, field: Field, seed: int) -> tuple[float, float]:
    g = np.random.Generator(np.random.PCG64(seed))
    if field is Field.REAL:
        w = g.standard_normal((block, dim))
        v = g.standard_normal((block, dim))
        abs_ov = kernels.abs_overlaps_real(w, v)
    else:
        w = g.standard_normal((block, dim)) + 1j * g.standard_normal((block, dim))
        v = g.standard_normal((block, dim)) + 1j * g.standard_normal((block, dim))
        abs_ov = kernels.abs_overlaps_complex(np.ascontiguousarray(w), np.ascontiguousarray(v))
    return float(abs_ov.sum()), float((abs_ov**2).sum())


def overlap_statistic(
    dim: int,
    trials: int,
    field: Field = Field.REAL,
    seed: int = 0,
    workers: int = 1,
) -> OverlapSummary:
    """Estimate |overlap| and squared-overlap moments of random unit pairs.

    Draws ``trials`` independent pairs of uniformly random unit vectors and
    records the mean absolute overlap and the mean squared overlap (for the
    complex field, the squared modulus). ``workers`` only schedules the
    fixed block decomposition; it never changes the result.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    blocks = []
    remaining = trials
    index = 0
    while remaining > 0:
        b = min(BLOCK_TRIALS, remaining)
        blocks.append((index, b))
        remaining -= b
        index += 1

    def run(item):
        i, b = item
        return _block_sums(dim, b, field, substream_seed(seed, i))

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, blocks))
    else:
        partials = [run(item) for item in blocks]
    sum_abs = 0.0
    sum_sq = 0.0
    for pa, ps in partials:  # fixed-order reduction
        sum_abs += pa
        sum_sq += ps
    mean_abs = sum_abs / trials
    mean_sq = sum_sq / trials
    return OverlapSummary(
        dim=dim,
        trials=trials,
        mean_abs_overlap=mean_abs,
        mean_sq_overlap=mean_sq,
        scaled_mean_sq=dim * mean_sq,
        field=field,
        seed=int(seed),
    )


def gram_report(bank: PatternBank) -> GramReport:
    """Absolute pairwise overlaps of the stored patterns.

    The matrix is symmetric with unit diagonal (within NORM_TOL); the max
    off-diagonal entry measures how far the bank is from orthogonal. For a
    single-pattern bank the off-diagonal maximum is defined as 0.
    """
    gram = np.abs(bank.states @ bank.states.conj().T)
    if bank.size > 1:
        off = gram - np.diag(gram.diagonal())
        max_off = float(off.max())
    else:
        max_off = 0.0
    return GramReport(matrix=gram, max_off_diagonal=max_off)


def overlap_csv(summaries: Sequence[OverlapSummary]) -> str:
    """CSV rows of overlap summaries: dim, trials, moments, seed."""
    lines = ["dim,trials,mean_abs_overlap,mean_sq_overlap,scaled_mean_sq,seed"]
    for s in summaries:
        lines.append(
            f"{s.dim},{s.trials},{s.mean_abs_overlap!r},{s.mean_sq_overlap!r},"
            f"{s.scaled_mean_sq!r},{s.seed}"
        )
    return "\n".join(lines) + "\n"


def gram_csv(bank: PatternBank, report: GramReport | None = None) -> str:
    """CSV rendering of the absolute Gram matrix, labeled both ways."""
    rep = gram_report(bank) if report is None else report
    lines = ["label," + ",".join(bank.labels)]
    for label, row in zip(bank.labels, rep.matrix):
        lines.append(label + "," + ",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
