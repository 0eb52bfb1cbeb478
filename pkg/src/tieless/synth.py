"""Synthetic measurement sets drawn from normal distributions.

Values come from ``numpy.random.Generator(PCG64(seed)).normal``, drawing
``samples`` values per object in object order. Any port that uses the same
bit generator and normal sampler reproduces the output exactly.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Dataset, MeasurementSet

# distributions used to illustrate ambiguous rankings (four objects, 15 samples)
AMBIGUOUS_EXAMPLE = {
    "mu": (0.30, 0.31, 0.32, 0.43),
    "sigma": (0.005, 0.030, 0.005, 0.01),
    "samples": 15,
}


def normal_dataset(
    mu: Sequence[float],
    sigma: Sequence[float],
    samples: int,
    seed: int = 0,
    ids: Sequence[str] | None = None,
) -> Dataset:
    if len(mu) != len(sigma):
        raise ValueError("mu and sigma need the same length")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if any(s < 0 for s in sigma):
        raise ValueError("sigma must be non-negative")
    ids = list(ids) if ids is not None else [f"t{i}" for i in range(len(mu))]
    if len(ids) != len(mu):
        raise ValueError("need one id per distribution")
    rng = np.random.Generator(np.random.PCG64(seed))
    objects = []
    for x, m, s in zip(ids, mu, sigma):
        values = rng.normal(m, s, size=samples)
        objects.append(MeasurementSet(x, tuple(float(v) for v in values)))
    return Dataset(tuple(objects))
