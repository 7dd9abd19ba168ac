import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recess import bodies as bd
from recess import geometry as geo
from recess import metrics as mt
from recess.bodies import VBody
from recess.errors import Unsupported, UnboundedInput
from recess.instances import parabola_body, random_irreducible, random_points

seeds = st.integers(0, 2**32 - 1)
H2 = VBody(2, [[0, 0]], [[0, 1]], [[1, 0]])


def polygon_disk(radius, k=64):
    a = 2 * np.pi * np.arange(k) / k
    return VBody(2, radius * np.column_stack([np.cos(a), np.sin(a)]))


def test_point_distance_examples(unit_square, upper_half_plane, wedge):
    assert mt.point_to_body_distance([0.5, 0.5], unit_square) == pytest.approx(0, abs=1e-9)
    assert mt.point_to_body_distance([2, 0], polygon_disk(1.0)) == pytest.approx(1, abs=1e-9)
    assert mt.point_to_body_distance([0, -3], upper_half_plane) == pytest.approx(3, abs=1e-9)
    assert mt.point_to_body_distance([3, -4], wedge) == pytest.approx(5, abs=1e-9)
    assert mt.point_to_body_distance([2, 7], wedge) == pytest.approx(2, abs=1e-9)


@settings(max_examples=40)
@given(seeds)
def test_nearest_point_is_optimal(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    K = random_irreducible(rng, n, line_prob=0.3)
    x = rng.standard_normal(n) * 4
    y = mt.nearest_point(K, x)
    assert bd.contains_point(K, y, 1e-7)
    # variational inequality: <x - y, z - y> <= 0 over generators of K
    d = x - y
    Z = np.vstack([K.points - y, K.rays, K.lines, -K.lines])
    assert np.all(Z @ d <= 1e-6 * max(1.0, np.linalg.norm(d)))


def test_hausdorff_compact_examples(unit_square):
    assert mt.hausdorff_compact(polygon_disk(1.0), polygon_disk(2.0)) == pytest.approx(1, abs=0.01)
    assert mt.hausdorff_compact(unit_square, unit_square) == pytest.approx(0, abs=1e-9)
    shifted = unit_square.translate([1, 0])
    # derived oracle: brute force over a fine grid of both squares
    g = np.linspace(0, 1, 41)
    A = np.array(list(itertools.product(g, g)))
    B = A + [1, 0]
    D = np.linalg.norm(A[:, None] - B[None], axis=2)
    brute = max(D.min(axis=1).max(), D.min(axis=0).max())
    assert brute == pytest.approx(1)
    assert mt.hausdorff_compact(unit_square, shifted) == pytest.approx(brute, abs=1e-9)
    with pytest.raises(UnboundedInput):
        mt.hausdorff_compact(unit_square, H2)


def test_hausdorff_compact_metric_axioms():
    rng = np.random.default_rng(11)
    for _ in range(100):
        A, B, C = (VBody(2, random_points(rng, 2)) for _ in range(3))
        ab, ba = mt.hausdorff_compact(A, B), mt.hausdorff_compact(B, A)
        assert ab == pytest.approx(ba, abs=1e-8)
        assert ab <= mt.hausdorff_compact(A, C) + mt.hausdorff_compact(C, B) + 1e-8


def test_metrics_config_from_mapping():
    cfg = mt.MetricsConfig.from_mapping({"metrics.r_max": 50, "metrics.grid_directions": 90, "other": 1})
    assert cfg.r_max == 50 and cfg.grid_directions == 90 and cfg.radial_levels == mt.MetricsConfig().radial_levels


def test_sampled_set_invariants(wedge, unit_square):
    cfg = mt.COARSE
    S = mt.sample_body(wedge, cfg)
    assert S.unbounded and S.max_norm <= cfg.r_max * (1 + 1e-9)
    assert np.all(bd.contains_many(wedge, S.samples))
    assert not mt.sample_body(unit_square, cfg).unbounded


def test_bounded_hausdorff_identity_and_symmetry(wedge, unit_square):
    assert mt.bounded_hausdorff(wedge, wedge, mt.COARSE) == pytest.approx(0, abs=1e-12)
    a = mt.bounded_hausdorff(wedge, unit_square, mt.COARSE)
    assert a == pytest.approx(mt.bounded_hausdorff(unit_square, wedge, mt.COARSE), abs=1e-12)
    assert a > 0.5  # the pole sits in the closure of one lift only


def test_bounded_hausdorff_stable_in_r_max(wedge, vee):
    for K in (wedge, vee, H2.translate([0, 1])):
        a = mt.bounded_hausdorff(K, H2, mt.MetricsConfig(r_max=1e3, grid_directions=180, radial_levels=24))
        b = mt.bounded_hausdorff(K, H2, mt.MetricsConfig(r_max=2e3, grid_directions=180, radial_levels=24))
        assert b <= a + 0.01


def wedge_t(t):
    return VBody(2, [[t, 0]], [[-1, 0], [0, 1]])


def test_wedge_family_converges_to_half_plane():
    d = [mt.bounded_hausdorff(wedge_t(2.0**k), H2, mt.COARSE) for k in range(8)]
    assert all(a > b for a, b in zip(d, d[1:]))
    assert d[-1] < 0.05


def test_sum_of_half_lines_converges_to_half_plane():
    d = []
    for k in range(7):
        t = 2.0**-k
        d.append(mt.bounded_hausdorff(VBody(2, [[0, 0]], [[-1, 0], [1, t]]), H2, mt.COARSE))
    assert all(a > b for a, b in zip(d, d[1:]))
    assert d[-1] < 0.1


def test_parabola_family_exhibits_recession_gap():
    ray = VBody(2, [[0, 0]], [[0, 1]])
    gap = mt.bounded_hausdorff(ray, H2, mt.COARSE)
    assert gap == pytest.approx(np.sqrt(2), abs=1e-9)  # (1,0) lifts to the equator, the ray's lift lies in x = 0
    d_bh = []
    for t in (1.0, 0.1, 0.01, 0.001):
        r = mt.distance_report(parabola_body(t), H2, mt.COARSE)
        d_bh.append(r["d_bh"])
        assert r["d_a"] >= gap - 1e-9
    assert all(a > b for a, b in zip(d_bh, d_bh[1:]))
    assert d_bh[-1] < 0.05


@settings(max_examples=20)
@given(seeds)
def test_asymptotic_distance_dominates(seed):
    rng = np.random.default_rng(seed)
    A, B = random_irreducible(rng, 2), random_irreducible(rng, 2)
    r = mt.distance_report(A, B, mt.COARSE)
    assert r["d_a"] >= r["d_bh"] and r["d_a"] == pytest.approx(r["d_bh"] + r["d_rc"])
    assert mt.asymptotic_distance(A, A, mt.COARSE) == pytest.approx(0, abs=1e-12)


def test_nc_radius_examples(upper_half_plane, wedge, unit_square):
    assert mt.nc_hausdorff_radius(upper_half_plane, [0, 1]) == pytest.approx(0, abs=1e-12)
    cd = bd.central_direction(wedge)
    r = mt.nc_hausdorff_radius(wedge, cd)
    assert r == pytest.approx(np.pi / 4, abs=1e-12)
    # derived: sample unit normals of the wedge (directions with finite support) and measure angles to -cd
    a = np.linspace(0, 2 * np.pi, 20_001)
    U = np.column_stack([np.cos(a), np.sin(a)])
    normals = U[(U[:, 0] >= -1e-12) & (U[:, 1] <= 1e-12)]
    sampled = np.max(np.arccos(np.clip(normals @ -cd, -1, 1)))
    assert sampled == pytest.approx(r, abs=1e-3)
    assert mt.nc_hausdorff_radius(unit_square, [0, 1]) == pytest.approx(np.pi, abs=1e-12)
    with pytest.raises(Unsupported):
        mt.nc_hausdorff_radius(wedge, [1, 0])


def test_nc_radius_matches_sampling_in_three_dimensions():
    rng = np.random.default_rng(3)
    for _ in range(10):
        K = random_irreducible(rng, 3)
        u = bd.central_direction(K)
        C = bd.normal_cone_closure(K)
        U = rng.standard_normal((200_000, 3))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        inside = U[np.all(U @ np.vstack([K.rays]).T <= 0, axis=1)]
        if inside.shape[0] < 100:
            continue
        sampled = np.max(np.arccos(np.clip(inside @ -u, -1, 1)))
        exact = mt.nc_hausdorff_radius(K, u)
        assert sampled <= exact + 1e-9
        assert sampled == pytest.approx(exact, abs=0.05)
        assert C.dim == 3
