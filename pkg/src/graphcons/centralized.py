"""Centralized accretion: grow a 2-D point cloud in batches and track its center.

Points never move once added. The central estimate after each round is the
componentwise mean of every point accumulated so far. x and y coordinates are
independent draws from their own distribution specs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import distributions
from .distributions import DistributionSpec
from .errors import InvalidArgument

DEFAULT_SNAPSHOTS = (1, 5, 10, 20)
DEFAULT_BINS = 50


@dataclass(frozen=True)
class AccretionState:
    points: np.ndarray  # (count, 2)
    iteration: int
    center: tuple[float, float]
    spec_x: DistributionSpec
    spec_y: DistributionSpec

    @property
    def count(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class DensityGrid:
    x_edges: np.ndarray
    y_edges: np.ndarray
    counts: np.ndarray  # (len(x_edges) - 1, len(y_edges) - 1), row index follows x

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class Snapshot:
    iteration: int
    state: AccretionState
    grid: DensityGrid


def density_grid(points, bins: int = DEFAULT_BINS,
                 bounds: tuple[tuple[float, float], tuple[float, float]] | None = None) -> DensityGrid:
    """Equal-width 2-D histogram.

    By default each axis spans [min, max] of the points with the top edge
    inclusive. A degenerate axis (all values equal) is widened by 0.5 on each
    side. Points outside explicit ``bounds`` are not counted.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise InvalidArgument("density_grid needs a non-empty (N, 2) point array")
    if bins < 1:
        raise InvalidArgument(f"bins must be positive, got {bins}")
    if bounds is None:
        bounds = tuple((float(pts[:, i].min()), float(pts[:, i].max())) for i in range(2))
    counts, x_edges, y_edges = np.histogram2d(pts[:, 0], pts[:, 1], bins=bins, range=bounds)
    return DensityGrid(x_edges, y_edges, counts.astype(np.int64))


def run_accretion(spec_x: DistributionSpec, spec_y: DistributionSpec, initial_count: int = 100,
                  batch_size: int = 1000, iterations: int = 20, seed: int = 0,
                  snapshots: Sequence[int] = DEFAULT_SNAPSHOTS,
                  bins: int = DEFAULT_BINS) -> list[Snapshot]:
    """Seed ``initial_count`` points, then add ``batch_size`` points per round.

    A single PCG64 stream seeded with ``seed`` supplies, in order, the initial
    x draws, the initial y draws, then x and y for each batch.
    """
    if initial_count < 1 or batch_size < 1 or iterations < 1:
        raise InvalidArgument("initial_count, batch_size and iterations must be positive")
    wanted = sorted(set(int(s) for s in snapshots))
    if not wanted or wanted[0] < 1 or wanted[-1] > iterations:
        raise InvalidArgument(f"snapshots must lie in [1, {iterations}], got {list(snapshots)}")
    rng = np.random.default_rng(seed)
    chunks = [np.column_stack([distributions.draw(spec_x, initial_count, rng),
                               distributions.draw(spec_y, initial_count, rng)])]
    out = []
    for it in range(1, iterations + 1):
        batch = np.column_stack([distributions.draw(spec_x, batch_size, rng),
                                 distributions.draw(spec_y, batch_size, rng)])
        chunks.append(batch)
        if it in wanted:
            points = np.concatenate(chunks)
            center = points.mean(axis=0)
            state = AccretionState(points, it, (float(center[0]), float(center[1])), spec_x, spec_y)
            out.append(Snapshot(it, state, density_grid(points, bins)))
    return out


def center_stability(snapshots: Sequence[Snapshot | AccretionState]) -> list[float]:
    """Euclidean distance of each snapshot's center from the last snapshot's center."""
    if len(snapshots) < 2:
        raise InvalidArgument("center_stability needs at least two snapshots")
    centers = np.array([(s.state if isinstance(s, Snapshot) else s).center for s in snapshots])
    return np.linalg.norm(centers - centers[-1], axis=1).tolist()
