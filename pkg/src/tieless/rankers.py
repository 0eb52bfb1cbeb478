"""Partial rankings of objects under a strict partial order.

Three constructions are provided, from most to fewest ranks:

* :func:`methodology1` ranks each object by its depth in ``G``.
* :func:`methodology2` re-arranges the depth ranking and merges neighbouring
  incomparable objects, which can only lower the rank count.
* :func:`methodology3` ranks whole connected components of the
  incomparability graph and always reaches the minimum rank count.

:func:`validate_partial_ranking` checks the three defining properties and
:func:`enumerate_partial_rankings` is a brute-force oracle for small inputs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import ComparisonMatrix, Report, Violation, ensure_strict_partial_order
from .errors import TooLarge
from .graphs import (
    build_component_dag,
    build_directed_graph,
    build_incomparability_graph,
    component_depths,
    compute_depths,
    connected_components,
    sparsify,
)

METHODS = ("M1", "M2", "M3")


@dataclass(frozen=True)
class PartialRanking:
    ranks: tuple[tuple[str, ...], ...]
    method: str = "external"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(tuple(r) for r in self.ranks))

    @property
    def k(self) -> int:
        return len(self.ranks)

    @property
    def rank_of(self) -> dict[str, int]:
        return {x: k for k, rank in enumerate(self.ranks) for x in rank}

    def sets(self) -> list[frozenset[str]]:
        return [frozenset(r) for r in self.ranks]

    def same_partition(self, other: PartialRanking) -> bool:
        return self.sets() == other.sets()

    def __len__(self) -> int:
        return len(self.ranks)


@dataclass(frozen=True)
class ArrangedList:
    """The concatenated per-rank lists and the rank given to each position."""

    sequence: tuple[str, ...]
    values: tuple[int, ...]


class OrderClass(enum.Enum):
    LINEAR = "linear"
    WEAK = "weak"
    GENERAL = "general"


def _group(cm: ComparisonMatrix, rank_of: dict[str, int], method: str) -> PartialRanking:
    k = max(rank_of.values(), default=-1) + 1
    ranks: list[list[str]] = [[] for _ in range(k)]
    for x in cm.ids:
        ranks[rank_of[x]].append(x)
    return PartialRanking(tuple(tuple(r) for r in ranks), method)


def methodology1(cm: ComparisonMatrix) -> PartialRanking:
    """Rank every object by the longest better-than chain ending at it."""
    ensure_strict_partial_order(cm)
    depths = compute_depths(build_directed_graph(cm))
    return _group(cm, depths, "M1")


def methodology2(cm: ComparisonMatrix) -> tuple[PartialRanking, ArrangedList]:
    ensure_strict_partial_order(cm)
    g = build_directed_graph(cm)
    depths = compute_depths(g)
    h = sparsify(g, depths)

    by_depth: dict[int, list[str]] = {}
    for x in cm.ids:
        by_depth.setdefault(depths[x], []).append(x)
    arranged: list[str] = []
    for level in sorted(by_depth):
        # more outgoing H-edges first, then fewer incoming, then input order
        arranged.extend(sorted(by_depth[level], key=lambda x: (-h.out_degree(x), h.in_degree(x), cm.index[x])))

    values: list[int] = []
    for i, x in enumerate(arranged):
        if i == 0:
            values.append(0)
        elif cm.better(arranged[i - 1], x):
            values.append(values[-1] + 1)
        else:
            values.append(values[-1])

    rank_of = dict(zip(arranged, values))
    return _group(cm, rank_of, "M2"), ArrangedList(tuple(arranged), tuple(values))


def methodology3(cm: ComparisonMatrix) -> PartialRanking:
    """Rank connected components of the incomparability graph by their depth."""
    ensure_strict_partial_order(cm)
    comps = connected_components(build_incomparability_graph(cm))
    dag = build_component_dag(comps, cm)
    depths = component_depths(dag)
    rank_of = {x: depths[k] for k, comp in enumerate(comps) for x in comp}
    return _group(cm, rank_of, "M3")


def rank(cm: ComparisonMatrix, method: str = "M1") -> tuple[PartialRanking, ArrangedList | None]:
    """Dispatch on a method tag; the arrangement is only produced by ``M2``."""
    if method == "M1":
        return methodology1(cm), None
    if method == "M2":
        return methodology2(cm)
    if method == "M3":
        return methodology3(cm), None
    raise ValueError(f"unknown methodology {method!r}; expected one of {METHODS}")


def _connected(members: Sequence[str], cm: ComparisonMatrix) -> bool:
    if len(members) <= 1:
        return True
    seen = {members[0]}
    stack = [members[0]]
    while stack:
        x = stack.pop()
        for y in members:
            if y not in seen and cm.incomparable(x, y):
                seen.add(y)
                stack.append(y)
    return len(seen) == len(members)


def validate_partial_ranking(cm: ComparisonMatrix, pr: PartialRanking) -> Report:
    violations: list[Violation] = []

    seen: dict[str, int] = {}
    for k, r in enumerate(pr.ranks):
        if not r:
            violations.append(Violation("partition", (), f"rank {k} is empty"))
        for x in r:
            if x not in cm.index:
                violations.append(Violation("partition", (x,), f"{x!r} is not a known object"))
            elif x in seen:
                violations.append(Violation("partition", (x,), f"{x!r} appears in ranks {seen[x]} and {k}"))
            else:
                seen[x] = k
    missing = [x for x in cm.ids if x not in seen]
    if missing:
        violations.append(Violation("partition", tuple(missing), f"objects not ranked: {missing}"))
    if violations:
        return Report(tuple(violations))

    ranks = pr.ranks
    for a, b in itertools.combinations(range(len(ranks)), 2):
        for x in ranks[a]:
            for y in ranks[b]:
                if cm.better(y, x):
                    violations.append(
                        Violation("P1", (x, y), f"{x} (rank {a}) is ranked above {y} (rank {b}) but {y} is better")
                    )
    for a in range(len(ranks) - 1):
        if not any(cm.better(x, y) for x in ranks[a] for y in ranks[a + 1]):
            violations.append(
                Violation(
                    "P2",
                    ranks[a] + ranks[a + 1],
                    f"no object in rank {a} is better than any object in rank {a + 1}",
                )
            )
    for a, r in enumerate(ranks):
        if not _connected(r, cm):
            violations.append(Violation("P3", r, f"rank {a} is not connected in the incomparability graph"))

    return Report(tuple(violations), tuple(_non_minimality_notes(cm, ranks)))


def _non_minimality_notes(cm: ComparisonMatrix, ranks: Sequence[Sequence[str]]) -> Iterator[str]:
    # an object two ranks down, incomparable to something in rank k but to
    # nothing in rank k+1, blocks merging by re-arrangement
    for k in range(len(ranks) - 2):
        for j in ranks[k + 2]:
            if any(cm.incomparable(j, m) for m in ranks[k + 1]):
                continue
            for i in ranks[k]:
                if cm.incomparable(i, j):
                    yield (
                        f"{i} (rank {k}) ~ {j} (rank {k + 2}) but {j} is comparable to all of rank {k + 1}; "
                        "fewer ranks may exist"
                    )
                    break


def classify_order(cm: ComparisonMatrix) -> OrderClass:
    ids = cm.ids
    n = len(ids)
    inc = [[i != j and cm.incomparable(ids[i], ids[j]) for j in range(n)] for i in range(n)]
    if not any(any(row) for row in inc):
        return OrderClass.LINEAR
    for i in range(n):
        for j in range(n):
            if not inc[i][j]:
                continue
            for k in range(n):
                if k != i and inc[j][k] and not inc[i][k]:
                    return OrderClass.GENERAL
    return OrderClass.WEAK


def _ordered_set_partitions(items: Sequence[str]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Every ordered set partition: restricted-growth strings, then block orderings."""
    n = len(items)
    if n == 0:
        yield ()
        return

    def rgs(prefix: list[int], top: int) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for b in range(top + 2):
            yield from rgs(prefix + [b], max(top, b))

    for code in rgs([0], 0):
        blocks: list[list[str]] = [[] for _ in range(max(code) + 1)]
        for x, b in zip(items, code):
            blocks[b].append(x)
        for perm in itertools.permutations(blocks):
            yield tuple(tuple(b) for b in perm)


def _sort_key(cm: ComparisonMatrix, ranks: Iterable[Iterable[str]]) -> tuple:
    return tuple(tuple(sorted(cm.index[x] for x in r)) for r in ranks)


def enumerate_partial_rankings(
    cm: ComparisonMatrix, max_n: int = 8, exhaustive: bool = False
) -> list[PartialRanking]:
    """All partial rankings of ``cm``, in a fixed order.

    The default search builds rankings rank by rank and prunes on the three
    properties as it goes. ``exhaustive=True`` instead generates every ordered
    set partition and keeps those passing :func:`validate_partial_ranking`;
    both return the same list.
    """
    n = len(cm)
    if n > max_n:
        raise TooLarge(f"{n} objects exceeds the enumeration bound of {max_n}")
    ensure_strict_partial_order(cm)

    if exhaustive:
        found = [
            PartialRanking(p, "oracle")
            for p in _ordered_set_partitions(cm.ids)
            if validate_partial_ranking(cm, PartialRanking(p)).ok
        ]
    else:
        found = [PartialRanking(p, "oracle") for p in _search(cm)]
    found = [PartialRanking(tuple(tuple(sorted(r, key=cm.index.__getitem__)) for r in p.ranks), "oracle") for p in found]
    found.sort(key=lambda p: _sort_key(cm, p.ranks))
    return found


def _search(cm: ComparisonMatrix) -> Iterator[tuple[tuple[str, ...], ...]]:
    n = len(cm)
    full = (1 << n) - 1
    better = [cm.successor_mask(i) for i in range(n)]
    worse = [0] * n  # worse[j]: objects better than j
    for i in range(n):
        for j in range(n):
            if better[i] >> j & 1:
                worse[j] |= 1 << i
    inc = [full & ~better[i] & ~worse[i] & ~(1 << i) for i in range(n)]

    def connected(mask: int) -> bool:
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nxt = inc[low.bit_length() - 1] & mask & ~seen
            seen |= nxt
            frontier |= nxt
        return seen == mask

    def members(mask: int) -> tuple[str, ...]:
        return tuple(cm.ids[i] for i in range(n) if mask >> i & 1)

    def extend(remaining: int, prev: int, acc: list[tuple[str, ...]]) -> Iterator[tuple[tuple[str, ...], ...]]:
        if not remaining:
            yield tuple(acc)
            return
        sub = remaining
        while sub:
            ok = True
            rest = remaining & ~sub
            bits = sub
            while bits:
                low = bits & -bits
                bits ^= low
                # P1: nothing still unranked may beat a member of this rank
                if worse[low.bit_length() - 1] & rest:
                    ok = False
                    break
            if ok and prev:
                # P2: some member of the previous rank beats a member of this one
                ok = any(better[i] & sub for i in range(n) if prev >> i & 1)
            if ok and connected(sub):
                acc.append(members(sub))
                yield from extend(rest, sub, acc)
                acc.pop()
            sub = (sub - 1) & remaining

    if n == 0:
        yield ()
        return
    yield from extend(full, 0, [])


def minimum_rank_count(cm: ComparisonMatrix, max_n: int = 8) -> int:
    return min(len(p) for p in enumerate_partial_rankings(cm, max_n))
