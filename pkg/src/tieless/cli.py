"""Command-line entry point.

Exit codes: 0 success, 1 a validation found violations, 2 bad usage or input.
Options may also come from a JSON config file (``--config`` or the
``TIELESS_CONFIG`` environment variable); command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import io
from .core import (
    ComparisonMatrix,
    Dataset,
    QuantileLimits,
    build_comparison_matrix,
    check_strict_partial_order,
    median_relation,
)
from .dfg import (
    annotate_transitions,
    build_colored_dfg,
    emit_dot,
    split_from_ranking,
    split_top_k_median,
)
from .errors import InputError, TielessError
from .graphs import (
    build_component_dag,
    build_directed_graph,
    build_incomparability_graph,
    component_dag_to_dot,
    compute_depths,
    connected_components,
    directed_to_dot,
    sparsify,
    undirected_to_dot,
)
from .rankers import METHODS, rank, validate_partial_ranking
from .reliability import DEFAULT_LIMITS, quantile_sweep, reliability_report
from .synth import normal_dataset

CONFIG_ENV = "TIELESS_CONFIG"
FORMATS = ("csv", "json", "edges", "eventlog")

DEFAULTS: dict[str, Any] = {
    "method": "M1",
    "limits": "25,75",
    "relation": "interval",
    "seed": 0,
    "samples": 15,
}


class UsageError(InputError):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="measurement, edge-list or event-log file")
    p.add_argument("--format", choices=FORMATS, help="input format (default: from file extension)")
    p.add_argument("--config", help="JSON config file with default option values")


def _add_relation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--limits", help="quantile limits as L,U (default 25,75)")
    p.add_argument("--relation", choices=("interval", "median"), help="better-than relation for measurements")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tieless", description="Rank objects with ties from noisy measurements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="compute a partial ranking")
    _add_input(p)
    _add_relation(p)
    p.add_argument("--out", help="ranking JSON (default: stdout)")
    p.add_argument("--dot", help="write G, H, U and G' as DOT")
    p.add_argument("--summary", help="write box-plot summary statistics JSON")

    p = sub.add_parser("sweep", help="rank across quantile limits and score reliability")
    _add_input(p)
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--limits", help="a single L,U limit")
    p.add_argument("--sweep", help='limits as "L1,U1;L2,U2;..."')
    p.add_argument("--sweep-file", help="JSON list of [L, U] pairs")
    p.add_argument("--out", help="report JSON (default: stdout)")
    p.add_argument("--table", action="store_true", help="print a rounded table to stderr")

    p = sub.add_parser("dfg", help="colour a directly-follows graph by performance class")
    _add_input(p)
    _add_relation(p)
    p.add_argument("--sequences", help="variant sequence JSON (not needed for event logs)")
    p.add_argument("--green-ranks", help="comma-separated rank indices for the green class")
    p.add_argument("--red-ranks", help="comma-separated rank indices for the red class (default: all others)")
    p.add_argument("--top-k-median", type=int, help="green = k lowest medians, red = the rest")
    p.add_argument("--out", help="DOT output (default: stdout)")
    p.add_argument("--dot", help="also write G, H, U and G' as DOT")

    p = sub.add_parser("validate", help="check a ranking against the partial-ranking properties")
    _add_input(p)
    p.add_argument("--limits", help="quantile limits as L,U (default 25,75)")
    p.add_argument("--relation", choices=("interval", "median"))
    p.add_argument("--ranking", required=False, help="ranking JSON to check")
    p.add_argument("--out", help="report JSON (default: stdout)")

    p = sub.add_parser("synth", help="generate normally distributed measurement sets")
    p.add_argument("--mu", help="comma-separated means")
    p.add_argument("--sigma", help="comma-separated standard deviations")
    p.add_argument("--samples", type=int, help="values per object (default 15)")
    p.add_argument("--ids", help="comma-separated object ids (default t0, t1, ...)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="measurement JSON (default: stdout)")
    p.add_argument("--config", help="JSON config file with default option values")
    return parser


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    config: dict[str, Any] = {}
    if path:
        config = io._read_json(path)
        if not isinstance(config, dict):
            raise UsageError(f"{path}: config must be a JSON object")
    for key, value in vars(args).items():
        if value is not None or key == "config":
            continue
        cfg_key = key.replace("_", "-")
        if key in config:
            value = config[key]
        elif cfg_key in config:
            value = config[cfg_key]
        elif key in DEFAULTS and not (args.command == "sweep" and key == "limits"):
            value = DEFAULTS[key]
        setattr(args, key, value)
    return args


def _limits(value: Any) -> QuantileLimits:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return QuantileLimits(float(value[0]), float(value[1]))
    return QuantileLimits.parse(str(value))


def _floats(text: Any, name: str) -> list[float]:
    if isinstance(text, list):
        return [float(v) for v in text]
    try:
        return [float(v) for v in str(text).split(",")]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated numbers, got {text!r}") from None


def _ints(text: Any, name: str) -> list[int]:
    if isinstance(text, list):
        return [int(v) for v in text]
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--{name}: expected comma-separated integers, got {text!r}") from None


def _format(args: argparse.Namespace) -> str:
    if args.format:
        return args.format
    suffix = Path(args.input).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".json":
        return "json"
    raise UsageError(f"cannot infer the format of {args.input}; pass --format")


def _load(args: argparse.Namespace):
    """Return ``(dataset or edge-list matrix, event log or None)``."""
    if not args.input:
        raise UsageError("--input is required")
    fmt = _format(args)
    if fmt == "csv":
        return io.load_measurements_csv(args.input), None
    if fmt == "json":
        return io.load_measurements_json(args.input), None
    if fmt == "edges":
        return io.load_edges_json(args.input), None
    log = io.load_event_log_csv(args.input)
    return log.throughput_dataset(), log


def _matrix(source: Dataset | ComparisonMatrix, args: argparse.Namespace) -> ComparisonMatrix:
    if isinstance(source, ComparisonMatrix):
        return source
    if getattr(args, "relation", "interval") == "median":
        return build_comparison_matrix(source, relation=median_relation)
    return build_comparison_matrix(source, _limits(args.limits))


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _graphs_dot(cm: ComparisonMatrix) -> str:
    g = build_directed_graph(cm)
    d = compute_depths(g)
    u = build_incomparability_graph(cm)
    comps = connected_components(u)
    return "".join(
        [
            directed_to_dot(g, "G", d),
            directed_to_dot(sparsify(g, d), "H", d),
            undirected_to_dot(u, "U"),
            component_dag_to_dot(build_component_dag(comps, cm), "Gprime"),
        ]
    )


def cmd_rank(args: argparse.Namespace) -> int:
    source, _ = _load(args)
    if args.summary and isinstance(source, ComparisonMatrix):
        raise UsageError("--summary needs measurement input, not an edge list")
    cm = _matrix(source, args)
    pr, arrangement = rank(cm, args.method)
    _emit(_dump(io.ranking_to_dict(pr, arrangement)), args.out)
    if args.dot:
        Path(args.dot).write_text(_graphs_dot(cm), encoding="utf-8")
    if args.summary:
        io.write_json(args.summary, io.box_summary(source, _limits(args.limits)))
    return 0


def _sweep_limits(args: argparse.Namespace) -> list[QuantileLimits]:
    given = [name for name in ("limits", "sweep", "sweep_file") if getattr(args, name) is not None]
    if len(given) > 1:
        raise UsageError("use only one of --limits, --sweep and --sweep-file")
    if args.sweep_file:
        data = io._read_json(args.sweep_file)
        if not isinstance(data, list) or not data:
            raise UsageError(f"{args.sweep_file}: expected a non-empty list of [L, U] pairs")
        return [_limits(v) for v in data]
    if args.sweep:
        if isinstance(args.sweep, list):
            return [_limits(v) for v in args.sweep]
        return [QuantileLimits.parse(part) for part in str(args.sweep).split(";") if part.strip()]
    if "limits" in given:
        return [_limits(args.limits)]
    return list(DEFAULT_LIMITS)


def cmd_sweep(args: argparse.Namespace) -> int:
    limits = _sweep_limits(args)
    source, _ = _load(args)
    if isinstance(source, ComparisonMatrix):
        raise UsageError("a sweep needs measurement input, not an edge list")
    report = reliability_report(quantile_sweep(source, limits, args.method))
    _emit(_dump(report.to_dict()), args.out)
    if args.out:
        print(f"selected: {report.selected.lower:g},{report.selected.upper:g}")
    if args.table:
        sys.stderr.write(report.table())
    return 0


def cmd_dfg(args: argparse.Namespace) -> int:
    source, log = _load(args)
    if args.top_k_median is not None and args.green_ranks:
        raise UsageError("use either --top-k-median or --green-ranks, not both")
    if log is not None:
        seqs = list(log.variants)
    elif args.sequences:
        seqs = io.load_sequences_json(args.sequences)
    else:
        raise UsageError("--sequences is required unless the input is an event log")

    if args.top_k_median is not None:
        if isinstance(source, ComparisonMatrix):
            raise UsageError("--top-k-median needs measurement input")
        split = split_top_k_median(source, args.top_k_median)
    elif args.green_ranks:
        cm = _matrix(source, args)
        pr, _ = rank(cm, args.method)
        green = _ints(args.green_ranks, "green-ranks")
        red = (
            _ints(args.red_ranks, "red-ranks")
            if args.red_ranks
            else [k for k in range(len(pr)) if k not in set(green)]
        )
        split = split_from_ranking(pr, green, red)
        if args.dot:
            Path(args.dot).write_text(_graphs_dot(cm), encoding="utf-8")
    else:
        raise UsageError("give a split: --green-ranks or --top-k-median")

    annotations = annotate_transitions(log, split) if log is not None else None
    _emit(emit_dot(build_colored_dfg(seqs, split, annotations)), args.out)
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    if not args.ranking:
        raise UsageError("--ranking is required")
    source, _ = _load(args)
    pr = io.load_ranking_json(args.ranking)
    if isinstance(source, ComparisonMatrix):
        cm = source
        order = check_strict_partial_order(cm)
        report = order if not order.ok else validate_partial_ranking(cm, pr)
    else:
        cm = _matrix(source, args)
        report = validate_partial_ranking(cm, pr)
    _emit(_dump(report.to_dict()), args.out)
    if not report.ok:
        for v in report.violations:
            print(f"{v.kind}: {v.message}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_synth(args: argparse.Namespace) -> int:
    if args.mu is None or args.sigma is None:
        raise UsageError("--mu and --sigma are required")
    ids = None
    if args.ids:
        ids = args.ids if isinstance(args.ids, list) else [x.strip() for x in str(args.ids).split(",")]
    try:
        ds = normal_dataset(_floats(args.mu, "mu"), _floats(args.sigma, "sigma"), int(args.samples), int(args.seed), ids)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump(io.dataset_to_dict(ds)), args.out)
    return 0


COMMANDS = {
    "rank": cmd_rank,
    "sweep": cmd_sweep,
    "dfg": cmd_dfg,
    "validate": cmd_validate,
    "synth": cmd_synth,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return COMMANDS[args.command](args)
    except (TielessError, ValueError) as exc:
        print(f"tieless {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
