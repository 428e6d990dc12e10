import math

import numpy as np
import pytest

from graphcons import distributions as dist
from graphcons.centralized import center_stability, density_grid, run_accretion
from graphcons.errors import InvalidArgument


def test_counts_and_center():
    snaps = run_accretion(dist.normal(10, 2), dist.normal(7.5, 2), seed=0)
    assert [s.iteration for s in snaps] == [1, 5, 10, 20]
    assert [s.state.count for s in snaps] == [1100, 5100, 10100, 20100]
    for s in snaps:
        assert np.allclose(s.state.center, s.state.points.mean(axis=0), atol=1e-9, rtol=0)
        assert s.grid.total == s.state.count
    se = 2 / math.sqrt(20100)
    cx, cy = snaps[-1].state.center
    assert abs(cx - 10) < 6 * se and abs(cy - 7.5) < 6 * se


@pytest.mark.parametrize("initial,batch,iters", [(1, 1, 1), (7, 3, 4), (100, 50, 12)])
def test_point_count_formula(initial, batch, iters):
    snaps = run_accretion(dist.uniform(0, 1), dist.uniform(0, 1), initial, batch, iters, seed=1,
                          snapshots=range(1, iters + 1), bins=4)
    assert [s.state.count for s in snaps] == [initial + t * batch for t in range(1, iters + 1)]


def test_earlier_points_never_move():
    snaps = run_accretion(dist.normal(0, 1), dist.exponential(1), seed=3)
    for a, b in zip(snaps, snaps[1:]):
        assert np.array_equal(b.state.points[: a.state.count], a.state.points)


def test_stream_order():
    # initial x, initial y, then x and y per batch, all from one stream
    snaps = run_accretion(dist.uniform(0, 1), dist.uniform(0, 1), 5, 3, 2, seed=9, snapshots=[2])
    u = np.random.default_rng(9).random(5 + 5 + 3 + 3 + 3 + 3)
    expected_x = np.concatenate([u[0:5], u[10:13], u[16:19]])
    expected_y = np.concatenate([u[5:10], u[13:16], u[19:22]])
    assert np.array_equal(snaps[0].state.points[:, 0], expected_x)
    assert np.array_equal(snaps[0].state.points[:, 1], expected_y)


def test_degenerate_spec_center():
    c, eps = 3.25, 1e-12
    spec = dist.uniform(c - eps, c + eps)
    snaps = run_accretion(spec, spec, seed=0)
    assert np.allclose(snaps[-1].state.center, (c, c), atol=1e-11, rtol=0)


def test_deterministic():
    a = run_accretion(dist.poisson(4), dist.chi_square(3), seed=21)
    b = run_accretion(dist.poisson(4), dist.chi_square(3), seed=21)
    for x, y in zip(a, b):
        assert np.array_equal(x.state.points, y.state.points)
        assert np.array_equal(x.grid.counts, y.grid.counts)


@pytest.mark.parametrize("snapshots", [[0], [21], []])
def test_bad_snapshots(snapshots):
    with pytest.raises(InvalidArgument):
        run_accretion(dist.normal(0, 1), dist.normal(0, 1), snapshots=snapshots)


def test_bad_sizes():
    with pytest.raises(InvalidArgument):
        run_accretion(dist.normal(0, 1), dist.normal(0, 1), initial_count=0)


# -- density grid ------------------------------------------------------------------


def test_grid_corners():
    g = density_grid([(0, 0), (0, 1), (1, 0), (1, 1)], bins=2)
    assert g.counts.tolist() == [[1, 1], [1, 1]]
    assert g.x_edges.tolist() == [0, 0.5, 1]


def test_grid_identical_points():
    g = density_grid([(2.0, -1.0)] * 17, bins=5)
    assert g.counts.sum() == 17 and np.count_nonzero(g.counts) == 1
    assert np.all(np.diff(g.x_edges) > 0) and np.all(np.diff(g.y_edges) > 0)


def test_grid_axis_orientation():
    g = density_grid([(0, 0), (10, 0), (10, 1)], bins=2)
    # rows follow x, columns follow y
    assert g.counts.tolist() == [[1, 0], [1, 1]]


def test_grid_explicit_bounds_drop_outside_points():
    pts = [(0.5, 0.5), (1.5, 0.5), (5, 5), (-1, 0.2)]
    g = density_grid(pts, bins=2, bounds=((0, 2), (0, 2)))
    assert g.total == 2


def test_grid_uniform_multinomial():
    n, bins = 10**5, 10
    rng = np.random.default_rng(5)
    u = dist.uniform(2, 25)
    pts = np.column_stack([dist.draw(u, n, rng), dist.draw(u, n, rng)])
    g = density_grid(pts, bins=bins, bounds=((2, 25), (2, 25)))
    p = 1 / bins**2
    sd = math.sqrt(n * p * (1 - p))
    assert g.total == n
    assert np.abs(g.counts - n * p).max() < 5 * sd


def test_grid_errors():
    with pytest.raises(InvalidArgument):
        density_grid(np.empty((0, 2)))
    with pytest.raises(InvalidArgument):
        density_grid([(0, 0)], bins=0)
    with pytest.raises(InvalidArgument):
        density_grid([1, 2, 3])


# -- center stability -----------------------------------------------------------------


def test_stability_of_constant_cloud():
    snaps = run_accretion(dist.uniform(1, 1 + 1e-15), dist.uniform(4, 4 + 1e-15), seed=0)
    drift = center_stability(snaps)
    assert all(d < 1e-14 for d in drift) and drift[-1] == 0


def test_stability_needs_two():
    snaps = run_accretion(dist.normal(0, 1), dist.normal(0, 1), seed=0, snapshots=[20])
    with pytest.raises(InvalidArgument):
        center_stability(snaps)


def test_drift_shrinks_on_average():
    runs = [center_stability(run_accretion(dist.normal(10, 2), dist.normal(7.5, 2), seed=s,
                                           snapshots=[1, 5, 10, 15, 20], bins=2))
            for s in range(30)]
    mean_drift = np.mean(runs, axis=0)
    assert np.all(np.diff(mean_drift) < 0)
    assert mean_drift[-1] == 0


def test_exponential_center():
    snaps = run_accretion(dist.exponential(1), dist.exponential(1), seed=4)
    se = 1 / math.sqrt(20100)
    cx, cy = snaps[-1].state.center
    assert abs(cx - 1) < 6 * se and abs(cy - 1) < 6 * se


def test_center_error_scales_as_inverse_root_n():
    spec = dist.normal(10, 2)
    errs = np.array([[abs(s.state.center[0] - 10) for s in
                      run_accretion(spec, spec, seed=s, snapshots=[1, 5, 20], bins=2)]
                     for s in range(30)])
    rms = np.sqrt((errs**2).mean(axis=0))
    predicted = 2 / np.sqrt([1100, 5100, 20100])
    # the 30-seed RMS has relative sd about 1/sqrt(60), so 40% is about 3 sd
    assert np.all(np.abs(rms / predicted - 1) < 0.4)
    assert rms[0] > rms[1] > rms[2]
