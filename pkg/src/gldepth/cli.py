"""Command line interface: ``gldepth {depth,ranks,corr,simulate,study}``.

Exit status is 0 on success, 2 for usage or parse errors and 3 when the
data make a computation degenerate (zero bandwidth, constant depths, too
few curves).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io as gio
from .depths import METHODS, Method, all_depths
from .evaluate import SUMMARY_FIELDS, corr_matrix, ranks, run_study
from .exceptions import DegenerateSampleError, InsufficientSampleError, SampleFormatError
from .simulate import MODEL_IDS, ModelSpec, generate

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE = 0, 2, 3

log = logging.getLogger("gldepth")


class UsageError(Exception):
    pass


def _quantile(text):
    q = float(text)
    if not 0.0 < q < 1.0:
        raise argparse.ArgumentTypeError("must lie strictly between 0 and 1")
    return q


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(minimum):
    def parse(text):
        v = int(text)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v
    return parse


def _model_list(text):
    try:
        ids = sorted({int(p) for p in text.replace(",", " ").split()})
    except ValueError:
        raise argparse.ArgumentTypeError("expected a list of model ids like 1,2,3,4") from None
    if not ids or any(m not in MODEL_IDS for m in ids):
        raise argparse.ArgumentTypeError("model ids must be among 1,2,3,4")
    return ids


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gldepth", description="Global and local functional depths.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def bandwidth_flags(p):
        p.add_argument("--bandwidth-quantile", type=_quantile, default=0.25,
                       help="quantile of pairwise distances used as kernel bandwidth")
        p.add_argument("--bandwidth", type=_positive_float, default=None,
                       help="fixed kernel bandwidth (overrides the quantile rule)")

    p = sub.add_parser("depth", help="leave-in depth of every curve in a sample CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--method", default="fsd",
                   choices=["fmd", "mbd", "fsd", "hmd", "kfsd", "all"])
    p.add_argument("--ranks", action="store_true", help="add rank columns")
    p.add_argument("--svg", metavar="DIR", help="also plot the curves, deepest dashed")
    bandwidth_flags(p)

    p = sub.add_parser("ranks", help="depth-based ranks of every curve for all methods")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--svg", metavar="DIR", help="write rank scatter plots here")
    bandwidth_flags(p)

    p = sub.add_parser("corr", help="Spearman matrix between the five depths")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--svg", metavar="DIR", help="write pairwise rank scatter plots here")
    bandwidth_flags(p)

    p = sub.add_parser("simulate", help="draw a sample from one of models 1-4")
    p.add_argument("--model", type=int, choices=MODEL_IDS, default=1)
    p.add_argument("--n", type=_positive_int(2), default=100)
    p.add_argument("--seed", type=_positive_int(0), default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--sidecar", help="scores CSV (default: <output>_scores.csv)")
    p.add_argument("--svg", metavar="DIR", help="plot the simulated curves here")

    p = sub.add_parser("study", help="Spearman(depth, f(xi1)) over replications")
    p.add_argument("--models", type=_model_list, default=list(MODEL_IDS))
    p.add_argument("--reps", type=_positive_int(1), default=100)
    p.add_argument("--n", type=_positive_int(3), default=100)
    p.add_argument("--seed", type=_positive_int(0), default=0)
    p.add_argument("--bandwidth-quantile", type=_quantile, default=0.25)
    p.add_argument("--output", required=True, help="per-replication coefficients CSV")
    p.add_argument("--summary", help="summary CSV (default: <output>_summary.csv)")
    p.add_argument("--svg", metavar="DIR", help="write one boxplot per model here")
    return parser


# -- helpers ----------------------------------------------------------------

def _check_input(path):
    if not Path(path).is_file():
        raise UsageError(f"input file not found: {path}")


def _check_output(path):
    if path in (None, "-"):
        return
    parent = Path(path).resolve().parent
    if not parent.is_dir():
        raise UsageError(f"output directory does not exist: {parent}")


def _svg_dir(path):
    if path is None:
        return None
    d = Path(path)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create svg directory {d}: {exc}") from None
    return d


def _sibling(path, suffix):
    p = Path(path)
    return p.with_name(f"{p.stem}{suffix}{p.suffix or '.csv'}")


def _emit(path, rows, header):
    if path in (None, "-"):
        import csv
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([c if isinstance(c, str) else gio.fmt(c) for c in row])
    else:
        gio.write_rows(path, rows, header)


def _report_bandwidth(results):
    for method, res in results.items():
        if res.bandwidth_used is not None:
            print(f"bandwidth used for {method}: {gio.fmt(res.bandwidth_used)}",
                  file=sys.stderr)


# -- subcommands ------------------------------------------------------------

def cmd_depth(args) -> int:
    _check_input(args.input)
    _check_output(args.output)
    svg = _svg_dir(args.svg)
    sample = gio.read_sample(args.input)
    methods = list(METHODS) if args.method == "all" else [Method.parse(args.method)]
    results = all_depths(sample, methods, args.bandwidth_quantile, args.bandwidth)
    _report_bandwidth(results)
    if args.method == "all":
        header = ["curve_index"] + [m.value.lower() for m in methods]
        if args.ranks:
            header += [f"{m.value.lower()}_rank" for m in methods]
    else:
        header = ["curve_index", "depth"] + (["rank"] if args.ranks else [])
    columns = [results[m].values for m in methods]
    if args.ranks:
        columns += [ranks(c) for c in columns]
    rows = [[k, *(c[k] for c in columns)] for k in range(sample.n)]
    _emit(args.output, rows, header)
    if svg is not None:
        from .plotting import plot_curves
        deepest = int(np.argmax(columns[0]))
        plot_curves(sample, svg / "depth.svg", title=f"deepest by {methods[0]}: "
                    f"curve {deepest}", highlight=[deepest])
    return EXIT_OK


def cmd_ranks(args) -> int:
    _check_input(args.input)
    _check_output(args.output)
    svg = _svg_dir(args.svg)
    sample = gio.read_sample(args.input)
    results = all_depths(sample, METHODS, args.bandwidth_quantile, args.bandwidth)
    _report_bandwidth(results)
    rank_map = {m: ranks(results[m].values) for m in METHODS}
    header = ["curve_index"] + [f"{m.value.lower()}_rank" for m in METHODS]
    rows = [[k, *(rank_map[m][k] for m in METHODS)] for k in range(sample.n)]
    _emit(args.output, rows, header)
    if svg is not None:
        from .plotting import rank_pairs, rank_scatter
        rank_pairs(rank_map, svg / "rank_pairs.svg")
        rank_scatter(rank_map[Method.FSD], rank_map[Method.KFSD], svg / "fsd_kfsd_ranks.svg")
    return EXIT_OK


def cmd_corr(args) -> int:
    _check_input(args.input)
    _check_output(args.output)
    svg = _svg_dir(args.svg)
    sample = gio.read_sample(args.input)
    if sample.n < 3:
        raise InsufficientSampleError(
            f"correlations need at least 3 curves, the sample has {sample.n}")
    results = all_depths(sample, METHODS, args.bandwidth_quantile, args.bandwidth)
    _report_bandwidth(results)
    matrix = corr_matrix(sample, depths=results)
    names = [m.value.lower() for m in METHODS]
    rows = [[names[i], *matrix[i]] for i in range(len(METHODS))]
    _emit(args.output, rows, ["method", *names])
    if svg is not None:
        from .plotting import rank_pairs
        rank_pairs({m: ranks(results[m].values) for m in METHODS}, svg / "rank_pairs.svg")
    return EXIT_OK


def cmd_simulate(args) -> int:
    _check_output(args.output)
    sidecar = args.sidecar or _sibling(args.output, "_scores")
    _check_output(sidecar)
    svg = _svg_dir(args.svg)
    sim = generate(ModelSpec(args.model, args.n), args.seed)
    gio.write_sample(args.output, sim.sample)
    gio.write_rows(sidecar, ([k, sim.xi1[k], sim.benchmark[k]] for k in range(args.n)),
                   ["curve_index", "xi1", "f_xi1"])
    if svg is not None:
        from .plotting import plot_curves
        plot_curves(sim.sample, svg / f"model_{args.model}.svg",
                    title=f"Model {args.model}")
    return EXIT_OK


def cmd_study(args) -> int:
    _check_output(args.output)
    summary_path = args.summary or _sibling(args.output, "_summary")
    _check_output(summary_path)
    svg = _svg_dir(args.svg)
    results = run_study(args.models, args.reps, args.n, args.seed,
                        args.bandwidth_quantile)
    rows, summary_rows = [], []
    for res in results:
        for r, coefs in zip(res.reps, res.coefficients):
            rows.append([res.model_id, r, *coefs])
        for method, stats in res.summary.items():
            summary_rows.append([res.model_id, method.value.lower(),
                                 *(stats[f] for f in SUMMARY_FIELDS)])
        medians = ", ".join(f"{m}={v:.3f}" for m, v in res.medians().items())
        print(f"model {res.model_id}: {len(res.reps)} reps, "
              f"{len(res.failures)} failed; medians {medians}", file=sys.stderr)
    gio.write_rows(args.output, rows, ["model", "rep", *(m.value.lower() for m in METHODS)])
    gio.write_rows(summary_path, summary_rows, ["model", "method", *SUMMARY_FIELDS])
    if svg is not None:
        from .plotting import study_boxplot
        for res in results:
            if len(res.reps):
                study_boxplot(res, svg / f"study_model_{res.model_id}.svg")
    dead = [res.model_id for res in results if len(res.reps) == 0]
    if dead:
        print(f"error: every replication failed for model(s) {dead}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


COMMANDS = {
    "depth": cmd_depth,
    "ranks": cmd_ranks,
    "corr": cmd_corr,
    "simulate": cmd_simulate,
    "study": cmd_study,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SampleFormatError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateSampleError, InsufficientSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
