"""Time the compiled kernels against the pure-numpy fallback.

Run from the repository root after an editable install:

    python3 benchmarks/bench_backends.py

Each kernel is timed on a fixed seeded workload; the table reports the
best wall time over --repeat runs for both backends and the speedup of
the compiled extension. Inputs are pre-drawn once so only kernel work
is measured.
"""

import argparse
import time

import numpy as np

import qamsim._kernels_py as kpy

try:
    import qamsim._kernels_cy as kcy
except ImportError:
    kcy = None


def build_workloads(rng):
    probs = rng.dirichlet(np.ones(16))
    draw_u = rng.random(1_000_000)

    pass_probs = rng.random(8)
    chain_u = rng.random((200_000, 8))

    w_real = rng.standard_normal((20_000, 64))
    v_real = rng.standard_normal((20_000, 64))
    w_cplx = w_real + 1j * rng.standard_normal((20_000, 64))
    v_cplx = v_real + 1j * rng.standard_normal((20_000, 64))

    mgs_mat = (
        rng.standard_normal((128, 512)) + 1j * rng.standard_normal((128, 512))
    ).astype(np.complex128)

    return [
        ("draw_outcomes (16 x 1e6)", "draw_outcomes", (probs, draw_u)),
        ("chain_survivors (8 x 2e5)", "chain_survivors", (pass_probs, chain_u)),
        ("abs_overlaps_real (2e4 x 64)", "abs_overlaps_real", (w_real, v_real)),
        ("abs_overlaps_complex (2e4 x 64)", "abs_overlaps_complex", (w_cplx, v_cplx)),
        ("mgs_orthonormalize (128 x 512)", "mgs_orthonormalize", (mgs_mat, 1e-10, 1e-12)),
    ]


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="runs per kernel, best kept")
    parser.add_argument("--seed", type=int, default=0, help="workload seed")
    args = parser.parse_args()

    workloads = build_workloads(np.random.default_rng(args.seed))

    header = f"{'kernel':<34} {'python':>10} {'cython':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, call_args in workloads:
        t_py = best_time(getattr(kpy, name), call_args, args.repeat)
        if kcy is None:
            print(f"{label:<34} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_cy = best_time(getattr(kcy, name), call_args, args.repeat)
        print(
            f"{label:<34} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>7.2f}x"
        )
    if kcy is None:
        print("\ncompiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
