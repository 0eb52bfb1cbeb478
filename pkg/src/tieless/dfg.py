"""Directly-follows graphs coloured by performance class.

Each object (algorithm variant, process variant) carries a sequence of
activities. Given a split of the objects into a *green* (fast) and a *red*
(slow) class, activities and directly-follows pairs that occur only in one
class get that class's colour; everything seen in both stays neutral.
"""

from __future__ import annotations

import enum
import statistics
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Mapping

from .core import Dataset, MeasurementSet, quantile_value
from .errors import InputError, MissingSequence
from .rankers import PartialRanking


@dataclass(frozen=True)
class VariantSequence:
    id: str
    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        if not steps:
            raise InputError(f"variant {self.id!r} has an empty activity sequence")
        if any(not isinstance(s, str) or not s for s in steps):
            raise InputError(f"variant {self.id!r} has an empty activity name")
        object.__setattr__(self, "steps", steps)

    def pairs(self) -> list[tuple[str, str]]:
        return list(zip(self.steps, self.steps[1:]))


@dataclass(frozen=True)
class ClassSplit:
    green: frozenset[str]
    red: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "green", frozenset(self.green))
        object.__setattr__(self, "red", frozenset(self.red))
        both = self.green & self.red
        if both:
            raise ValueError(f"objects in both classes: {sorted(both)}")

    def swapped(self) -> ClassSplit:
        return ClassSplit(self.red, self.green)


class Color(enum.Enum):
    GREEN = "green"
    RED = "red"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class DfgNode:
    color: Color
    count: int


@dataclass(frozen=True)
class DfgEdge:
    color: Color
    count: int
    annotation: str | None = None


@dataclass(frozen=True)
class ColoredDfg:
    nodes: dict[str, DfgNode] = field(default_factory=dict)
    edges: dict[tuple[str, str], DfgEdge] = field(default_factory=dict)

    def nodes_of(self, color: Color) -> set[str]:
        return {a for a, n in self.nodes.items() if n.color is color}

    def edges_of(self, color: Color) -> set[tuple[str, str]]:
        return {e for e, info in self.edges.items() if info.color is color}


def split_from_ranking(
    pr: PartialRanking, green_ranks: Iterable[int], red_ranks: Iterable[int]
) -> ClassSplit:
    green_ranks, red_ranks = set(green_ranks), set(red_ranks)
    for k in green_ranks | red_ranks:
        if not 0 <= k < len(pr.ranks):
            raise ValueError(f"rank index {k} out of range for a ranking with {len(pr.ranks)} ranks")
    if green_ranks & red_ranks:
        raise ValueError(f"rank indices in both classes: {sorted(green_ranks & red_ranks)}")
    green = frozenset(x for k in green_ranks for x in pr.ranks[k])
    red = frozenset(x for k in red_ranks for x in pr.ranks[k])
    return ClassSplit(green, red)


def split_top_k_median(ds: Dataset, k: int) -> ClassSplit:
    """Green: the ``k`` objects with the lowest median; red: the rest."""
    if not 1 <= k <= len(ds):
        raise ValueError(f"k must lie in [1, {len(ds)}], got {k}")
    order = sorted(range(len(ds)), key=lambda i: (quantile_value(ds.objects[i].values, 50), i))
    ids = ds.ids
    return ClassSplit(frozenset(ids[i] for i in order[:k]), frozenset(ids[i] for i in order[k:]))


def _color(in_green: bool, in_red: bool) -> Color:
    if in_green and not in_red:
        return Color.GREEN
    if in_red and not in_green:
        return Color.RED
    return Color.NEUTRAL


def build_colored_dfg(
    seqs: Iterable[VariantSequence],
    split: ClassSplit,
    annotations: Mapping[tuple[str, str], str] | None = None,
) -> ColoredDfg:
    """Build the DFG over the variants in ``split`` and colour it.

    ``annotations`` attaches display text to edges (e.g. median transition
    times) and never affects colouring.
    """
    by_id = {s.id: s for s in seqs}
    missing = sorted((split.green | split.red) - set(by_id))
    if missing:
        raise MissingSequence(f"no activity sequence for: {missing}")

    node_count: Counter[str] = Counter()
    edge_count: Counter[tuple[str, str]] = Counter()
    nodes_in = {Color.GREEN: set(), Color.RED: set()}
    edges_in = {Color.GREEN: set(), Color.RED: set()}
    for cls, members in ((Color.GREEN, split.green), (Color.RED, split.red)):
        for x in members:
            seq = by_id[x]
            node_count.update(seq.steps)
            edge_count.update(seq.pairs())
            nodes_in[cls].update(seq.steps)
            edges_in[cls].update(seq.pairs())

    annotations = annotations or {}
    nodes = {
        a: DfgNode(_color(a in nodes_in[Color.GREEN], a in nodes_in[Color.RED]), node_count[a])
        for a in sorted(node_count)
    }
    edges = {
        e: DfgEdge(
            _color(e in edges_in[Color.GREEN], e in edges_in[Color.RED]),
            edge_count[e],
            annotations.get(e),
        )
        for e in sorted(edge_count)
    }
    return ColoredDfg(nodes, edges)


_DOT_COLOR = {Color.GREEN: "green", Color.RED: "red", Color.NEUTRAL: "black"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(dfg: ColoredDfg, name: str = "dfg") -> str:
    lines = [f"digraph {name} {{"]
    if dfg.nodes:
        lines.append("  node [shape=box];")
    for a in sorted(dfg.nodes):
        c = _DOT_COLOR[dfg.nodes[a].color]
        lines.append(f"  {_q(a)} [color={c}, fontcolor={c}];")
    for (a, b) in sorted(dfg.edges):
        e = dfg.edges[(a, b)]
        c = _DOT_COLOR[e.color]
        label = str(e.count) if e.annotation is None else f"{e.count} | {e.annotation}"
        lines.append(f"  {_q(a)} -> {_q(b)} [color={c}, fontcolor={c}, label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EventLog:
    """Cases folded from a ``case,activity,timestamp`` log.

    ``variants`` groups cases with identical activity sequences; variant ids are
    ``v0, v1, ...`` by descending case count, then first appearance.
    """

    cases: dict[str, tuple[tuple[str, datetime], ...]]
    variants: tuple[VariantSequence, ...]
    variant_cases: dict[str, tuple[str, ...]]

    def throughput_dataset(self) -> Dataset:
        """Per-variant throughput times in seconds, one value per case."""
        objects = []
        for v in self.variants:
            values = []
            for c in self.variant_cases[v.id]:
                events = self.cases[c]
                values.append((events[-1][1] - events[0][1]).total_seconds())
            objects.append(MeasurementSet(v.id, tuple(values), label=" > ".join(v.steps)))
        return Dataset(tuple(objects))

    def median_transition_seconds(self, variant_ids: Iterable[str]) -> dict[tuple[str, str], float]:
        gaps: dict[tuple[str, str], list[float]] = {}
        for v in variant_ids:
            for c in self.variant_cases[v]:
                events = self.cases[c]
                for (a, ta), (b, tb) in zip(events, events[1:]):
                    gaps.setdefault((a, b), []).append((tb - ta).total_seconds())
        return {e: statistics.median(g) for e, g in gaps.items()}


def format_duration(seconds: float) -> str:
    if seconds >= 86400:
        return f"{seconds / 86400:.1f}d"
    if seconds >= 3600:
        return f"{seconds / 3600:.1f}h"
    if seconds >= 60:
        return f"{seconds / 60:.1f}m"
    return f"{seconds:.1f}s"


def fold_event_log(rows: Iterable[tuple[str, str, datetime]]) -> EventLog:
    grouped: dict[str, list[tuple[int, str, datetime]]] = {}
    for n, (case, activity, ts) in enumerate(rows):
        if not case or not activity:
            raise InputError(f"event {n}: case and activity must be non-empty")
        grouped.setdefault(case, []).append((n, activity, ts))
    cases = {
        c: tuple((a, t) for _, a, t in sorted(evs, key=lambda e: (e[2], e[0]))) for c, evs in grouped.items()
    }

    by_seq: dict[tuple[str, ...], list[str]] = {}
    for c, events in cases.items():
        by_seq.setdefault(tuple(a for a, _ in events), []).append(c)
    first_seen = {seq: n for n, seq in enumerate(by_seq)}
    ordered = sorted(by_seq, key=lambda s: (-len(by_seq[s]), first_seen[s]))

    variants = tuple(VariantSequence(f"v{i}", seq) for i, seq in enumerate(ordered))
    variant_cases = {f"v{i}": tuple(by_seq[seq]) for i, seq in enumerate(ordered)}
    return EventLog(cases, variants, variant_cases)


def annotate_transitions(log: EventLog, split: ClassSplit) -> dict[tuple[str, str], str]:
    medians = log.median_transition_seconds(sorted(split.green | split.red))
    return {e: "median " + format_duration(s) for e, s in medians.items()}

