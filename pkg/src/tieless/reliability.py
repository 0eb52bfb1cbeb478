"""Rank stability across quantile limits.

Rankings are computed at several quantile limits; an object's rank at one
limit is scored by how far it sits from that object's mean rank, and the
limit whose ranking deviates least on average is selected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import Dataset, QuantileLimits, build_comparison_matrix
from .errors import TielessError
from .rankers import METHODS, PartialRanking, rank

DEFAULT_LIMITS = (
    QuantileLimits(25, 75),
    QuantileLimits(30, 70),
    QuantileLimits(35, 65),
    QuantileLimits(40, 60),
)


@dataclass(frozen=True)
class QuantileSweep:
    method: str
    limits: tuple[QuantileLimits, ...]
    ids: tuple[str, ...]
    ranks: dict[str, tuple[int, ...]]
    rankings: tuple[PartialRanking, ...] = ()

    @classmethod
    def from_rank_rows(
        cls,
        ids: Sequence[str],
        limits: Sequence[QuantileLimits],
        rows: Sequence[Sequence[int]],
        method: str = "M1",
    ) -> QuantileSweep:
        """Build a sweep from one row of per-object ranks per limit."""
        if len(rows) != len(limits):
            raise ValueError("need exactly one rank row per quantile limit")
        for row in rows:
            if len(row) != len(ids):
                raise ValueError("each rank row needs one entry per object")
        ranks = {x: tuple(int(row[i]) for row in rows) for i, x in enumerate(ids)}
        return cls(method, tuple(limits), tuple(ids), ranks)


def quantile_sweep(
    ds: Dataset,
    limits_list: Sequence[QuantileLimits] = DEFAULT_LIMITS,
    method: str = "M1",
) -> QuantileSweep:
    if not limits_list:
        raise ValueError("at least one quantile limit is required")
    if method not in METHODS:
        raise ValueError(f"unknown methodology {method!r}; expected one of {METHODS}")
    rankings = []
    for limits in limits_list:
        try:
            pr, _ = rank(build_comparison_matrix(ds, limits), method)
        except TielessError as exc:
            raise type(exc)(f"at quantile limits ({limits.lower:g}, {limits.upper:g}): {exc}") from exc
        rankings.append(pr)
    ranks = {x: tuple(pr.rank_of[x] for pr in rankings) for x in ds.ids}
    return QuantileSweep(method, tuple(limits_list), ds.ids, ranks, tuple(rankings))


@dataclass(frozen=True)
class ReliabilityReport:
    method: str
    limits: tuple[QuantileLimits, ...]
    ranks: dict[str, tuple[int, ...]]
    mean_rank: dict[str, float]
    rel: dict[str, tuple[float, ...]]
    avg_rel: dict[QuantileLimits, float]
    selected: QuantileLimits

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "limits": [[q.lower, q.upper] for q in self.limits],
            "ranks": {x: list(r) for x, r in self.ranks.items()},
            "mean_rank": dict(self.mean_rank),
            "rel": {x: list(r) for x, r in self.rel.items()},
            "avg_rel": {q.key: v for q, v in self.avg_rel.items()},
            "selected": [self.selected.lower, self.selected.upper],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> ReliabilityReport:
        limits = tuple(QuantileLimits(lo, hi) for lo, hi in data["limits"])
        by_key = {q.key: q for q in limits}
        return cls(
            method=data["method"],
            limits=limits,
            ranks={x: tuple(r) for x, r in data["ranks"].items()},
            mean_rank=dict(data["mean_rank"]),
            rel={x: tuple(r) for x, r in data["rel"].items()},
            avg_rel={by_key[k]: v for k, v in data["avg_rel"].items()},
            selected=QuantileLimits(*data["selected"]),
        )

    def table(self, digits: int = 2) -> str:
        """Plain-text table with values rounded for display."""
        head = ["", *self.ranks, "avg_rel"]
        rows = [head]
        for j, q in enumerate(self.limits):
            rows.append([f"r({q.key})", *(str(self.ranks[x][j]) for x in self.ranks), "-"])
        rows.append(["mr", *(f"{self.mean_rank[x]:.{digits}f}" for x in self.ranks), "-"])
        for j, q in enumerate(self.limits):
            rows.append(
                [
                    f"rel({q.key})",
                    *(f"{self.rel[x][j]:.{digits}f}" for x in self.ranks),
                    f"{_round_half_up(self.avg_rel[q], digits):.{digits}f}",
                ]
            )
        widths = [max(len(r[c]) for r in rows) for c in range(len(head))]
        return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows) + "\n"


def _round_half_up(x: float, digits: int) -> float:
    # -0.375 -> -0.38 and -0.625 -> -0.63, matching the usual table convention
    q = Fraction(x) * 10**digits
    mag = int(abs(q) + Fraction(1, 2))
    return (mag if q >= 0 else -mag) / 10**digits


def reliability_report(sweep: QuantileSweep) -> ReliabilityReport:
    if not sweep.limits:
        raise ValueError("empty sweep")
    n_limits = len(sweep.limits)
    mean = {x: Fraction(sum(r), n_limits) for x, r in sweep.ranks.items()}
    rel = {x: tuple(-abs(r[j] - mean[x]) for j in range(n_limits)) for x, r in sweep.ranks.items()}
    n_obj = len(sweep.ranks)
    avg = [
        sum((rel[x][j] for x in sweep.ranks), Fraction(0)) / n_obj if n_obj else Fraction(0)
        for j in range(n_limits)
    ]
    # highest score; ties go to the widest interval, then to list order
    best = max(range(n_limits), key=lambda j: (avg[j], sweep.limits[j].width, -j))
    return ReliabilityReport(
        method=sweep.method,
        limits=sweep.limits,
        ranks=dict(sweep.ranks),
        mean_rank={x: float(v) for x, v in mean.items()},
        rel={x: tuple(float(v) for v in r) for x, r in rel.items()},
        avg_rel={q: float(avg[j]) for j, q in enumerate(sweep.limits)},
        selected=sweep.limits[best],
    )
