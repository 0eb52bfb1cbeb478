"""Measurements, quantile intervals and the better-than relation.

A :class:`ComparisonMatrix` is the hinge of the package: every ranking
methodology consumes one, and it can be produced from raw measurements
(interval or median relation) or straight from an explicit edge list.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    InvalidLimits,
    InvalidMeasurements,
    TransitivityViolation,
)


@dataclass(frozen=True)
class MeasurementSet:
    id: str
    values: tuple[float, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise InvalidMeasurements(f"object id must be a non-empty string, got {self.id!r}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise InvalidMeasurements(f"object {self.id!r} has no measurement values")
        bad = [v for v in values if not math.isfinite(v)]
        if bad:
            raise InvalidMeasurements(f"object {self.id!r} has non-finite values: {bad}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class Dataset:
    objects: tuple[MeasurementSet, ...]

    def __post_init__(self) -> None:
        objects = tuple(self.objects)
        seen: set[str] = set()
        for m in objects:
            if m.id in seen:
                raise InvalidMeasurements(f"duplicate object id {m.id!r}")
            seen.add(m.id)
        object.__setattr__(self, "objects", objects)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.objects)

    def __len__(self) -> int:
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, object_id: str) -> MeasurementSet:
        for m in self.objects:
            if m.id == object_id:
                return m
        raise KeyError(object_id)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Sequence[float]]) -> Dataset:
        return cls(tuple(MeasurementSet(k, tuple(v)) for k, v in data.items()))


@dataclass(frozen=True, order=True)
class QuantileLimits:
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (0 <= self.lower <= 100 and 0 <= self.upper <= 100):
            raise InvalidLimits(f"quantile limits must lie in [0, 100], got ({self.lower}, {self.upper})")
        if not self.lower < self.upper:
            raise InvalidLimits(f"lower limit must be below upper, got ({self.lower}, {self.upper})")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def key(self) -> str:
        """Stable textual key, e.g. ``"25-75"``."""
        return f"{self.lower:g}-{self.upper:g}"

    @classmethod
    def parse(cls, text: str) -> QuantileLimits:
        try:
            lo, hi = (float(p) for p in text.split(","))
        except ValueError:
            raise InvalidLimits(f"expected 'L,U', got {text!r}") from None
        return cls(lo, hi)


IQI = QuantileLimits(25, 75)


@dataclass(frozen=True)
class IntervalSummary:
    id: str
    low: float
    high: float


class Outcome(enum.Enum):
    BETTER = "better"
    WORSE = "worse"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> Outcome:
        if self is Outcome.BETTER:
            return Outcome.WORSE
        if self is Outcome.WORSE:
            return Outcome.BETTER
        return self


def quantile_value(values: Iterable[float], q: float) -> float:
    """Linearly interpolated quantile at percentile ``q``.

    Position ``(q/100) * (M-1)`` in the ascending sort, interpolating between
    the two neighbouring order statistics.
    """
    ordered = sorted(float(v) for v in values)
    if not ordered:
        raise InvalidMeasurements("cannot take a quantile of an empty measurement set")
    if not all(math.isfinite(v) for v in ordered):
        raise InvalidMeasurements("measurement values must be finite")
    if not 0 <= q <= 100:
        raise InvalidLimits(f"percentile must lie in [0, 100], got {q}")
    pos = q / 100 * (len(ordered) - 1)
    lo = math.floor(pos)
    hi = math.ceil(pos)
    frac = pos - lo
    return ordered[lo] + frac * (ordered[hi] - ordered[lo])


def interval_of(m: MeasurementSet, limits: QuantileLimits) -> IntervalSummary:
    return IntervalSummary(
        m.id,
        quantile_value(m.values, limits.lower),
        quantile_value(m.values, limits.upper),
    )


def compare_intervals(a: IntervalSummary, b: IntervalSummary) -> Outcome:
    # strict: touching endpoints count as overlap
    if a.high < b.low:
        return Outcome.BETTER
    if b.high < a.low:
        return Outcome.WORSE
    return Outcome.INCOMPARABLE


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    message: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ids": list(self.ids), "message": self.message}


@dataclass(frozen=True)
class Report:
    """Outcome of a diagnostic check; ``notes`` never affect :attr:`ok`."""

    violations: tuple[Violation, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ComparisonMatrix:
    """Pairwise outcomes; ``outcomes[i][j]`` is how ``ids[i]`` relates to ``ids[j]``.

    Construction does not validate the relation, so that externally supplied
    relations can be diagnosed with :func:`check_strict_partial_order`.
    """

    ids: tuple[str, ...]
    outcomes: tuple[tuple[Outcome, ...], ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)
    _succ: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.ids)
        if len(set(self.ids)) != n:
            raise InvalidMeasurements("comparison matrix ids must be unique")
        if len(self.outcomes) != n or any(len(row) != n for row in self.outcomes):
            raise ValueError("outcome table must be N x N")
        object.__setattr__(self, "index", {x: i for i, x in enumerate(self.ids)})
        succ = []
        for row in self.outcomes:
            mask = 0
            for j, o in enumerate(row):
                if o is Outcome.BETTER:
                    mask |= 1 << j
            succ.append(mask)
        object.__setattr__(self, "_succ", tuple(succ))

    def __len__(self) -> int:
        return len(self.ids)

    @classmethod
    def from_better_pairs(cls, ids: Sequence[str], better: Iterable[tuple[str, str]]) -> ComparisonMatrix:
        """Build from an explicit list of ``(a, b)`` pairs meaning *a better than b*.

        Unlisted pairs are incomparable.
        """
        ids = tuple(ids)
        index = {x: i for i, x in enumerate(ids)}
        n = len(ids)
        table = [[Outcome.INCOMPARABLE] * n for _ in range(n)]
        for a, b in better:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise InvalidMeasurements(f"edge refers to unknown id {missing!r}")
            i, j = index[a], index[b]
            table[i][j] = Outcome.BETTER
            if table[j][i] is not Outcome.BETTER and i != j:
                table[j][i] = Outcome.WORSE
        return cls(ids, tuple(tuple(r) for r in table))

    @classmethod
    def from_relation(cls, ids: Sequence[str], better: Callable[[int, int], bool]) -> ComparisonMatrix:
        ids = tuple(ids)
        n = len(ids)
        pairs = [(ids[i], ids[j]) for i in range(n) for j in range(n) if i != j and better(i, j)]
        return cls.from_better_pairs(ids, pairs)

    def outcome(self, a: str, b: str) -> Outcome:
        return self.outcomes[self.index[a]][self.index[b]]

    def better(self, a: str, b: str) -> bool:
        return self.outcomes[self.index[a]][self.index[b]] is Outcome.BETTER

    def incomparable(self, a: str, b: str) -> bool:
        return a != b and not self.better(a, b) and not self.better(b, a)

    def better_pairs(self) -> list[tuple[str, str]]:
        n = len(self.ids)
        return [
            (self.ids[i], self.ids[j])
            for i in range(n)
            for j in range(n)
            if self.outcomes[i][j] is Outcome.BETTER
        ]

    def successor_mask(self, i: int) -> int:
        """Bitmask of indices ``j`` with ``ids[i]`` better than ``ids[j]``."""
        return self._succ[i]


def interval_relation(limits: QuantileLimits) -> Callable[[Dataset], ComparisonMatrix]:
    def build(ds: Dataset) -> ComparisonMatrix:
        summaries = [interval_of(m, limits) for m in ds]
        return ComparisonMatrix.from_relation(
            ds.ids,
            lambda i, j: compare_intervals(summaries[i], summaries[j]) is Outcome.BETTER,
        )

    return build


def median_relation(ds: Dataset) -> ComparisonMatrix:
    medians = [quantile_value(m.values, 50) for m in ds]
    return ComparisonMatrix.from_relation(ds.ids, lambda i, j: medians[i] < medians[j])


def build_comparison_matrix(
    ds: Dataset,
    limits: QuantileLimits = IQI,
    relation: Callable[[Dataset], ComparisonMatrix] | None = None,
) -> ComparisonMatrix:
    """Compare every pair of objects and return the validated matrix.

    By default objects are compared by their ``limits`` quantile intervals.
    ``relation`` swaps in another comparator (e.g. :func:`median_relation`).
    """
    build = relation if relation is not None else interval_relation(limits)
    cm = build(ds)
    ensure_strict_partial_order(cm)
    return cm


def check_strict_partial_order(cm: ComparisonMatrix) -> Report:
    ids = cm.ids
    n = len(ids)
    violations: list[Violation] = []
    for i in range(n):
        if cm.outcomes[i][i] is Outcome.BETTER:
            violations.append(Violation("irreflexivity", (ids[i],), f"{ids[i]} is better than itself"))
    for i in range(n):
        for j in range(i + 1, n):
            o, back = cm.outcomes[i][j], cm.outcomes[j][i]
            if o is Outcome.BETTER and back is Outcome.BETTER:
                violations.append(
                    Violation("antisymmetry", (ids[i], ids[j]), f"{ids[i]} and {ids[j]} are each better than the other")
                )
            elif back is not o.flipped():
                violations.append(
                    Violation(
                        "antisymmetry",
                        (ids[i], ids[j]),
                        f"outcome({ids[i]},{ids[j]})={o.value} but outcome({ids[j]},{ids[i]})={back.value}",
                    )
                )
    # transitivity: for every edge i->j, succ(j) must be contained in succ(i)
    for i in range(n):
        si = cm.successor_mask(i)
        rest = si
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if i == j:
                continue
            missing = cm.successor_mask(j) & ~si & ~(1 << i)
            while missing:
                lk = missing & -missing
                k = lk.bit_length() - 1
                missing ^= lk
                violations.append(
                    Violation(
                        "transitivity",
                        (ids[i], ids[j], ids[k]),
                        f"{ids[i]} < {ids[j]} and {ids[j]} < {ids[k]} but not {ids[i]} < {ids[k]}",
                    )
                )
    return Report(tuple(violations))


def ensure_strict_partial_order(cm: ComparisonMatrix) -> None:
    """Raise unless ``cm`` is a strict partial order.

    Irreflexivity and antisymmetry failures are cycles of length one and two,
    so they raise :class:`CycleDetected`; the rest raise
    :class:`TransitivityViolation`.
    """
    report = check_strict_partial_order(cm)
    if report.ok:
        return
    cyclic = [v for v in report.violations if v.kind != "transitivity"]
    if cyclic:
        raise CycleDetected("; ".join(v.message for v in cyclic[:5]))
    if _has_cycle(cm):
        raise CycleDetected("better-than relation contains a directed cycle")
    first = report.violations[:5]
    more = len(report.violations) - len(first)
    msg = "; ".join(v.message for v in first) + (f" (+{more} more)" if more else "")
    raise TransitivityViolation(msg)


def _has_cycle(cm: ComparisonMatrix) -> bool:
    n = len(cm)
    indeg = [0] * n
    for i in range(n):
        for j in range(n):
            if cm.outcomes[i][j] is Outcome.BETTER:
                indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while stack:
        i = stack.pop()
        seen += 1
        for j in range(n):
            if cm.outcomes[i][j] is Outcome.BETTER:
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
    return seen != n
