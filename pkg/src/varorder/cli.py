"""Command-line entry point: ``varorder {metrics,reorder,reach,render,bench}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    Category,
    format_mss,
    load_model,
    mss_summary,
    records_csv,
    render_matrix,
    run_grid,
    write_atomic,
)
from .graph import GraphError, SplitPermutation
from .metrics import metrics_report
from .ordering import OrderingConfig, reorder
from .petri import PnmlError, SafetyViolation
from .reach import ReachConfig, reach

FLIPS = {"none": "none", "h": "horizontal", "v": "vertical"}
STARTS = {"mindeg": "min-degree", "pseudo": "pseudo-peripheral"}


def _add_ordering_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--alg", choices=("cm", "king", "sloan", "gps"), required=required)
    p.add_argument("--total-graph", action="store_true", help="order the total graph instead")
    p.add_argument("--flip", choices=tuple(FLIPS), default="none")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--start", choices=tuple(STARTS))
    p.add_argument("--sloan-w1", type=int, default=1, metavar="K", help="distance weight")
    p.add_argument("--sloan-w2", type=int, default=2, metavar="K", help="degree weight")


def _ordering_config(args) -> OrderingConfig:
    return OrderingConfig(
        args.alg,
        start=STARTS[args.start] if args.start else None,
        reverse=args.reverse,
        sloan_weights=(args.sloan_w1, args.sloan_w2),
        use_total_graph=args.total_graph,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varorder", description="Static variable ordering for 1-safe Petri nets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="print bandwidth, profile, span, wavefront, ES and WES")
    p.add_argument("model")
    p.add_argument("--order-file", type=Path)
    _add_ordering_args(p, required=False)

    p = sub.add_parser("reorder", help="print a split permutation")
    p.add_argument("model")
    _add_ordering_args(p, required=True)

    p = sub.add_parser("reach", help="symbolic reachability with node statistics")
    p.add_argument("model")
    p.add_argument("--order-file", type=Path)
    p.add_argument("--strategy", choices=("bfs", "chaining", "sat-like"), default="bfs")
    p.add_argument("--sat-granularity", type=int, default=10, metavar="K")

    p = sub.add_parser("render", help="write the (permuted) dependency matrix as a PBM bitmap")
    p.add_argument("model")
    p.add_argument("--order-file", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("bench", help="run a category x model grid from a JSON manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("-o", "--output", type=Path, help="CSV file (default: standard output)")
    p.add_argument("--log", type=Path, help="JSON-lines run log")
    p.add_argument("--jobs", type=int, help="parallel cells (timings become untrusted)")
    p.add_argument("--no-group-by-kind", action="store_true",
                   help="standardize matrix metrics over bi and tot categories together")
    return parser


def _read_order(args, model):
    if args.order_file is None:
        return None
    sp = SplitPermutation.parse(args.order_file.read_text())
    if sp.shape != model.graph.shape:
        raise GraphError(f"order file is {sp.shape[0]}x{sp.shape[1]}, model is {model.graph.shape[0]}x{model.graph.shape[1]}")
    return sp


def _cmd_metrics(args, out) -> int:
    model = load_model(args.model)
    if args.alg and args.order_file:
        raise GraphError("give either --order-file or --alg, not both")
    if args.alg:
        r = reorder(model.graph, _ordering_config(args), FLIPS[args.flip])
        report = metrics_report(model.graph.permuted(r.split), r.graph)
    else:
        sp = _read_order(args, model)
        bg = model.graph.permuted(sp) if sp else model.graph
        report = metrics_report(bg)
    out.write(report.format())
    return 0


def _cmd_reorder(args, out) -> int:
    model = load_model(args.model)
    sp = reorder(model.graph, _ordering_config(args), FLIPS[args.flip]).split
    out.write(sp.format())
    return 0


def _cmd_reach(args, out) -> int:
    model = load_model(args.model)
    if model.net is None:
        raise _Usage("reach needs a Petri net (PNML), not a bare matrix")
    sp = _read_order(args, model)
    cfg = ReachConfig(args.strategy, args.sat_granularity,
                      variable_order=sp.cols if sp else None, transition_order=sp.rows if sp else None)
    out.write(reach(model.net, cfg).format())
    return 0


def _cmd_render(args, out) -> int:
    model = load_model(args.model)
    write_atomic(args.output, render_matrix(model.graph, _read_order(args, model)))
    return 0


def _cmd_bench(args, out) -> int:
    manifest = json.loads(args.manifest.read_text())
    base = args.manifest.parent
    models = [base / m for m in manifest["models"]]
    categories = [Category.parse(c) for c in manifest.get("categories", ["none"])]
    jobs = args.jobs if args.jobs is not None else int(manifest.get("jobs", 1))
    records = run_grid(models, categories, manifest.get("strategy", "sat-like"),
                       int(manifest.get("sat_granularity", 10)), manifest.get("max_nodes"), jobs)
    csv_text = records_csv(records)
    if args.output:
        write_atomic(args.output, csv_text)
    else:
        out.write(csv_text)
    if args.log:
        write_atomic(args.log, "".join(r.log_line() + "\n" for r in records))
    group = not args.no_group_by_kind and manifest.get("group_by_kind", True)
    summary = mss_summary(records, group_by_kind=group)
    if summary:
        sys.stderr.write("# mean standard score\n" + format_mss(summary))
    for r in records:
        if r.error:
            sys.stderr.write(f"# {r.model} {r.category}: {r.error}\n")
    if jobs > 1:
        sys.stderr.write("# timings untrusted: cells ran in parallel\n")
    return 0


class _Usage(Exception):
    pass


COMMANDS = {"metrics": _cmd_metrics, "reorder": _cmd_reorder, "reach": _cmd_reach,
            "render": _cmd_render, "bench": _cmd_bench}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"varorder: error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"varorder: error: {exc.filename}: no such file\n")
        return 2
    except (PnmlError, GraphError, SafetyViolation, ValueError, KeyError) as exc:
        sys.stderr.write(f"varorder: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
