"""Command-line interface.

Subcommands: prepare (single run + distribution dump), sweep (grid over
qubit counts and pruning thresholds), calibrate (decay-parameter search),
sample (seeded shot sampling), export-qasm (OpenQASM 2.0 serialization).

Exit codes: 0 success, 1 usage error (bad flags/values rejected by the
parser), 2 runtime or numerical error (cap violations, failed searches,
unwritable output, ...).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .circuits import PruningPolicy, build_gaussian_prep
from .harness import (
    SweepConfig,
    calibrate_beta,
    calibration_as_dict,
    distribution_as_dicts,
    report_as_dict,
    resolve_beta,
    run_prepare,
    run_sweep,
    sweep_csv_text,
    sweep_rows_as_dicts,
    write_calibration_csv,
    write_distribution_csv,
    write_histogram_csv,
)
from .metrics import kl_divergence, laplace_smooth
from .qasm import export_qasm
from .reference import GaussianSpec
from .sampler import sample_counts, tv_distance


def _json_safe(value: float) -> object:
    return value if math.isfinite(value) else format(value, ".17g")

DEFAULT_DECAY_RATE = 1.0
DEFAULT_DELTA = 0.0123
DEFAULT_SHOTS = 50_000
DEFAULT_SEED = 1234


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with code 1 (not 2)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _beta_mode(text: str):
    if text in ("heuristic", "calibrated"):
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'heuristic', 'calibrated', or a positive number, got {text!r}"
        ) from None
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"explicit beta must be > 0, got {text!r}")
    return value


def _add_model_flags(sub: argparse.ArgumentParser, delta_default: float = DEFAULT_DELTA) -> None:
    sub.add_argument("--qubits", "-n", type=int, required=True, help="register size n")
    sub.add_argument(
        "--lambda",
        dest="decay_rate",
        type=float,
        default=DEFAULT_DECAY_RATE,
        help="target decay rate lambda in exp(-lambda x^2) (default 1)",
    )
    sub.add_argument(
        "--beta",
        type=_beta_mode,
        default="heuristic",
        help="rotation decay: 'heuristic' (5/(2 lambda)), 'calibrated', or a number",
    )
    sub.add_argument(
        "--delta",
        type=float,
        default=delta_default,
        help=f"QFT pruning threshold in radians, 0 = full QFT (default {delta_default})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussprep", description=__doc__.split("\n\n")[0])
    commands = parser.add_subparsers(dest="command", required=True)

    prepare = commands.add_parser(
        "prepare", help="build, simulate, and score one preparation circuit"
    )
    _add_model_flags(prepare)
    prepare.add_argument("--out", help="write the per-index distribution dump here")
    prepare.add_argument("--format", choices=("csv", "json"), default="csv")
    prepare.set_defaults(func=_cmd_prepare)

    sweep = commands.add_parser("sweep", help="metric/cost grid over n and delta")
    sweep.add_argument("--qubits", "-n", type=int, nargs="+", required=True, metavar="N")
    sweep.add_argument(
        "--deltas",
        type=float,
        nargs="+",
        default=[0.0, DEFAULT_DELTA],
        metavar="DELTA",
        help="pruning thresholds (default: 0 and 0.0123)",
    )
    sweep.add_argument("--lambda", dest="decay_rate", type=float, default=DEFAULT_DECAY_RATE)
    sweep.add_argument("--beta", type=_beta_mode, default="heuristic")
    sweep.add_argument(
        "--include-baseline",
        action="store_true",
        help="add one exact-amplitude-encoding row per n",
    )
    sweep.add_argument("--out", help="write the results table here (default: stdout)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.set_defaults(func=_cmd_sweep)

    calibrate = commands.add_parser(
        "calibrate", help="search beta minimizing smoothed KL divergence"
    )
    _add_model_flags(calibrate, delta_default=0.0)
    calibrate.add_argument("--out", help="write the diagnostic table CSV here")
    calibrate.set_defaults(func=_cmd_calibrate)

    sample = commands.add_parser("sample", help="seeded shot sampling of the prepared state")
    _add_model_flags(sample)
    sample.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sample.add_argument(
        "--smoothing",
        type=float,
        default=None,
        metavar="EPS",
        help="also report target-to-empirical KL with Laplace smoothing eps "
        "(the raw value is infinite whenever a target-supported bin drew no shots)",
    )
    sample.add_argument("--out", help="write the histogram CSV here")
    sample.set_defaults(func=_cmd_sample)

    qasm = commands.add_parser("export-qasm", help="OpenQASM 2.0 serialization of the circuit")
    _add_model_flags(qasm)
    qasm.add_argument("--out", help="write the program here (default: stdout)")
    qasm.set_defaults(func=_cmd_export_qasm)

    return parser


def _cmd_prepare(args: argparse.Namespace) -> int:
    result = run_prepare(args.qubits, args.decay_rate, args.delta, args.beta)
    if args.out:
        if args.format == "csv":
            write_distribution_csv(result, args.out)
        else:
            payload = {
                "report": report_as_dict(result.report),
                "distribution": distribution_as_dicts(result),
            }
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                json.dump(payload, handle, indent=2)
                handle.write("\n")
    print(json.dumps(report_as_dict(result.report), indent=2))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        n_values=tuple(args.qubits),
        delta_values=tuple(args.deltas),
        decay_rate=args.decay_rate,
        beta_mode=args.beta,
        include_baseline=args.include_baseline,
        out_path=args.out,
        fmt=args.format,
    )
    rows = run_sweep(config)
    if args.out:
        failed = sum(1 for row in rows if row.error is not None)
        print(f"wrote {len(rows)} rows to {args.out}" + (f" ({failed} failed)" if failed else ""))
    elif args.format == "csv":
        sys.stdout.write(sweep_csv_text(rows))
    else:
        print(json.dumps(sweep_rows_as_dicts(rows), indent=2))
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    result = calibrate_beta(args.decay_rate, args.qubits, args.delta)
    if args.out:
        write_calibration_csv(result, args.out)
    summary = calibration_as_dict(result)
    del summary["table"]
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    if args.shots < 1:
        raise ValueError(f"shots must be >= 1, got {args.shots}")
    result = run_prepare(args.qubits, args.decay_rate, args.delta, args.beta)
    histogram = sample_counts(result.prepared_probabilities, args.shots, args.seed)
    if args.out:
        write_histogram_csv(result, histogram.counts, histogram.shots, args.out)
    summary: dict[str, object] = {
        "n": args.qubits,
        "shots": histogram.shots,
        "seed": args.seed,
        "tv_distance": tv_distance(histogram.frequencies, result.prepared_probabilities),
    }
    if args.smoothing is not None:
        summary["kl_target_to_empirical_smoothed"] = _json_safe(
            kl_divergence(
                result.target_probabilities,
                laplace_smooth(histogram.frequencies, args.smoothing),
            )
        )
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_export_qasm(args: argparse.Namespace) -> int:
    beta = resolve_beta(args.qubits, args.decay_rate, args.beta)
    spec = GaussianSpec(decay_rate=args.decay_rate)
    circuit = build_gaussian_prep(
        args.qubits, spec, PruningPolicy(args.delta), beta_override=beta
    )
    text = export_qasm(circuit)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"gaussprep: error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    raise SystemExit(main(sys.argv[1:]))
