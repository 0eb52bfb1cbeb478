"""Fixture loading and random corpora shared by the test modules."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from tieless import ComparisonMatrix, Dataset, MeasurementSet, QuantileLimits, build_comparison_matrix
from tieless.io import load_edges_json, load_measurements_json, load_sequences_json

FIXTURES = Path(__file__).parent / "fixtures"


def edges(name: str) -> ComparisonMatrix:
    return load_edges_json(FIXTURES / f"{name}_edges.json")


def measurements(name: str) -> Dataset:
    return load_measurements_json(FIXTURES / f"{name}_measurements.json")


def sequences(name: str):
    return load_sequences_json(FIXTURES / f"{name}_sequences.json")


def from_intervals(intervals: dict[str, tuple[float, float]]) -> ComparisonMatrix:
    """Matrix of the strict interval order, bypassing quantiles."""
    ids = list(intervals)
    return ComparisonMatrix.from_relation(ids, lambda i, j: intervals[ids[i]][1] < intervals[ids[j]][0])


@dataclass(frozen=True)
class Case:
    seed: int
    dataset: Dataset
    limits: QuantileLimits
    cm: ComparisonMatrix


def random_limits(rng: random.Random) -> QuantileLimits:
    lower = rng.choice([0, 5, 10, 20, 25, 30, 35, 40, 45])
    upper = rng.choice([u for u in (55, 60, 65, 70, 75, 80, 90, 95, 100) if u > lower])
    return QuantileLimits(lower, upper)


def random_dataset(rng: random.Random, n: int) -> Dataset:
    # small integer grids make touching and overlapping quantiles common
    objects = []
    for i in range(n):
        centre = rng.randint(0, 12)
        spread = rng.randint(0, 4)
        m = rng.randint(1, 9)
        objects.append(MeasurementSet(f"t{i}", tuple(float(centre + rng.randint(-spread, spread)) for _ in range(m))))
    return Dataset(tuple(objects))


def interval_corpus(count: int = 240, max_n: int = 7, seed: int = 20240) -> list[Case]:
    rng = random.Random(seed)
    cases = []
    for k in range(count):
        ds = random_dataset(rng, rng.randint(1, max_n))
        limits = random_limits(rng)
        cases.append(Case(k, ds, limits, build_comparison_matrix(ds, limits)))
    return cases


def linear_corpus(count: int = 60, max_n: int = 7, seed: int = 7) -> list[Case]:
    """Disjoint value ranges in shuffled object order."""
    rng = random.Random(seed)
    cases = []
    for k in range(count):
        n = rng.randint(1, max_n)
        slots = list(range(n))
        rng.shuffle(slots)
        objects = [
            MeasurementSet(f"t{i}", tuple(10.0 * s + rng.uniform(0, 5) for _ in range(rng.randint(1, 8))))
            for i, s in enumerate(slots)
        ]
        ds = Dataset(tuple(objects))
        limits = random_limits(rng)
        cases.append(Case(k, ds, limits, build_comparison_matrix(ds, limits)))
    return cases


def weak_corpus(count: int = 60, max_n: int = 7, seed: int = 11) -> list[Case]:
    """Groups of objects sharing one value set; groups lie apart."""
    rng = random.Random(seed)
    cases = []
    for k in range(count):
        n = rng.randint(1, max_n)
        groups = rng.randint(1, n)
        pool = {g: tuple(10.0 * g + rng.uniform(0, 5) for _ in range(rng.randint(1, 8))) for g in range(groups)}
        assignment = list(range(groups)) + [rng.randrange(groups) for _ in range(n - groups)]
        rng.shuffle(assignment)
        ds = Dataset(tuple(MeasurementSet(f"t{i}", pool[g]) for i, g in enumerate(assignment)))
        limits = random_limits(rng)
        cases.append(Case(k, ds, limits, build_comparison_matrix(ds, limits)))
    return cases
