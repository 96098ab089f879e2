"""Command line front end.

Subcommands: bank-build, recognize, correct, measure, chain, stats, gram.
Exit codes: 0 success, 1 usage error, 2 data error (domain or I/O).
The default seed for stochastic subcommands comes from --seed, then the
QAM_SEED environment variable, then 0; fixed seeds give byte-identical
output across runs.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import aaam, measurement, patterns, serialize, stats
from .errors import FormatError, QamError
from .hilbert import Field
from .pgm import image_to_state, read_pgm_file


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _dims_list(text: str) -> list[int]:
    try:
        dims = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list: {text!r}") from None
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError(f"dimensions must all be >= 2: {text!r}")
    return dims


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QAM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise FormatError(f"QAM_SEED must be an integer, got {env!r}") from None
    return 0


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_bank_build(args) -> int:
    labels = [label for label, _ in args.label]
    states = [image_to_state(read_pgm_file(path)) for _, path in args.label]
    bank = patterns.PatternBank(labels, states, field=Field[args.field])
    serialize.save_bank(bank, args.out)
    print(f"wrote {args.out}: {bank.size} patterns, dim {bank.dim}")
    return 0


def cmd_recognize(args) -> int:
    bank = serialize.load_bank(args.bank)
    s = serialize.load_input_state(args.input)
    if args.mode == "deterministic":
        result = patterns.classify_max_channel(bank, s)
    elif args.mode == "sampled":
        rng = np.random.default_rng(_resolve_seed(args))
        if args.samples == 1:
            result = patterns.recognize_sampled(bank, s, rng)
        else:
            if not bank.orthogonal:
                raise QamError(
                    "sampled recognition needs mutually orthogonal patterns"
                )
            basis = measurement.MeasurementBasis(bank.states)
            counts = measurement.sample_counts(basis, s, args.samples, rng)
            idx = int(np.argmax(counts))
            if idx == bank.size:
                label, channel = measurement.RESIDUAL_LABEL, measurement.RESIDUAL
            else:
                label, channel = bank.labels[idx], idx
            result = patterns.RecognitionResult(
                label, channel, int(counts[idx]) / args.samples,
                patterns.RecognitionMode.SAMPLED,
            )
    else:
        rng = np.random.default_rng(_resolve_seed(args))
        result = patterns.multi_copy_recognize(bank, s, args.copies, rng)
    print(f"label={result.label} channel={result.channel_index} score={_fmt(result.score)}")
    if result.pass_rates is not None:
        print("pass_rates=" + ",".join(_fmt(r) for r in result.pass_rates))
    return 0


def cmd_correct(args) -> int:
    images = [image_to_state(read_pgm_file(p)) for p in args.images]
    sub = aaam.build_span(images, tol=args.tol)
    x = serialize.load_input_state(args.input)
    report = aaam.correct(sub, x)
    out = args.out if args.out else args.input + ".corrected.txt"
    serialize.save_state(report.corrected, out)
    print(f"in_span_fraction={_fmt(report.in_span_fraction)}")
    print(f"residual_norm={_fmt(report.residual_norm)}")
    print(f"wrote {out}")
    return 0


def cmd_measure(args) -> int:
    bank = serialize.load_bank(args.bank)
    chi = serialize.load_input_state(args.input)
    basis = measurement.MeasurementBasis(bank.states)
    rng = np.random.default_rng(_resolve_seed(args))
    counts = measurement.sample_counts(basis, chi, args.samples, rng)
    dist = measurement.outcome_distribution(basis, chi)
    sys.stdout.write(measurement.histogram_csv(bank.labels, counts, dist))
    return 0


def cmd_chain(args) -> int:
    filters = [serialize.load_input_state(p) for p in args.filters]
    chi = serialize.load_input_state(args.input)
    p = measurement.filter_chain(filters, chi)
    print(f"survival_probability={_fmt(p)}")
    if args.samples is not None:
        rng = np.random.default_rng(_resolve_seed(args))
        survivors = measurement.filter_chain_sampled(filters, chi, args.samples, rng)
        print(f"sampled_survival={_fmt(survivors / args.samples)}")
    return 0


def cmd_stats(args) -> int:
    seed = _resolve_seed(args)
    summaries = [
        stats.overlap_statistic(
            dim,
            args.trials,
            field=Field[args.field],
            seed=seed + i,
            workers=args.workers,
        )
        for i, dim in enumerate(args.dims)
    ]
    sys.stdout.write(stats.overlap_csv(summaries))
    return 0


def cmd_gram(args) -> int:
    bank = serialize.load_bank(args.bank)
    sys.stdout.write(stats.gram_csv(bank))
    return 0


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: QAM_SEED env var, else 0)")


def build_parser() -> _Parser:
    parser = _Parser(prog="qamsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bank-build", help="build a pattern bank from PGM images")
    p.add_argument("--out", required=True, help="output bank file")
    p.add_argument("--label", nargs=2, metavar=("LABEL", "PGM"), action="append",
                   required=True, help="pattern label and its PGM image (repeatable)")
    p.add_argument("--field", choices=["REAL", "COMPLEX"], default="REAL")
    p.set_defaults(func=cmd_bank_build)

    p = sub.add_parser("recognize", help="classify an input against a bank")
    p.add_argument("--bank", required=True)
    p.add_argument("--input", required=True, help="PGM image or state file")
    p.add_argument("--mode", choices=["deterministic", "sampled", "multicopy"],
                   default="deterministic")
    p.add_argument("--copies", type=_positive_int, default=1000,
                   help="copies for multicopy mode (default 1000)")
    p.add_argument("--samples", type=_positive_int, default=1,
                   help="shots for sampled mode (default 1)")
    _add_seed(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("correct", help="project a noisy input onto stored images")
    p.add_argument("--images", nargs="+", required=True, help="PGM images spanning the memory")
    p.add_argument("--input", required=True, help="noisy PGM image or state file")
    p.add_argument("--tol", type=float, default=aaam.DEPENDENCE_TOL,
                   help="linear-dependence drop tolerance")
    p.add_argument("--out", default=None,
                   help="corrected state file (default: INPUT.corrected.txt)")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("measure", help="sample repeated measurements, print CSV histogram")
    p.add_argument("--bank", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=_positive_int, required=True)
    _add_seed(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("chain", help="survival probability through a filter chain")
    p.add_argument("--filters", nargs="+", required=True, help="filter state files, in order")
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=_positive_int, default=None,
                   help="also run a sampled check with this many particles")
    _add_seed(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("stats", help="random-overlap statistics across dimensions")
    p.add_argument("--dims", type=_dims_list, required=True,
                   help="comma-separated dimensions, e.g. 16,256,4096")
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--field", choices=["REAL", "COMPLEX"], default="REAL")
    p.add_argument("--workers", type=_positive_int, default=1)
    _add_seed(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gram", help="print the absolute Gram matrix of a bank")
    p.add_argument("--bank", required=True)
    p.set_defaults(func=cmd_gram)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (QamError, OSError, ValueError) as exc:
        print(f"qamsim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
