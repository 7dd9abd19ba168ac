import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recess import bodies as bd
from recess import cones
from recess import flows as fl
from recess import geometry as geo
from recess import metrics as mt
from recess.bodies import VBody
from recess.errors import ApexNotAtOrigin, NotCylinder, NotInKPlus, NotIrreducible
from recess.instances import random_cylinder, random_irreducible, random_k_plus, random_unit

seeds = st.integers(0, 2**32 - 1)
SQ2 = np.sqrt(2.0)
CFG = fl.ModelBodyConfig(resolution=16)


def v_shape(apex_point=(0.0, 0.0)):
    return VBody(2, [apex_point], [[1, 1], [-1, 1]])


def test_model_body_config_validation():
    with pytest.raises(ValueError):
        fl.ModelBodyConfig(resolution=7)
    with pytest.raises(ValueError):
        fl.ModelBodyConfig(resolution=9)
    with pytest.raises(ValueError):
        fl.ModelBodyConfig(radial_extent=0)


def test_apex_examples(vee, upper_half_plane):
    A = fl.apex(vee)
    assert np.allclose(A.point, 0) and A.subspace.rank == 0 and np.allclose(A.p, 0)
    # face at -e2 is the segment [-1, 1] x {0}; its centroid by direct integration is the midpoint
    K = VBody(2, [[-1, 0], [1, 0]], [[1, 1], [-1, 1]])
    xs = np.linspace(-1, 1, 100_001)
    assert np.allclose(fl.apex(K).point, [np.trapezoid(xs, xs) / 2, 0], atol=1e-12)
    A = fl.apex(upper_half_plane)
    assert A.subspace.rank == 1 and np.allclose(A.p, 0)
    with pytest.raises(NotIrreducible):
        fl.apex(VBody(2, [[0, 0], [1, 0], [0, 1]]))


def test_solid_centroid_is_not_the_vertex_average():
    # a triangle with a repeated-side vertex cloud: the solid centroid ignores vertex density
    Q = np.array([[0, 0], [1, 0], [0, 1], [0.5, 0.5], [0.25, 0.75], [0.75, 0.25]])
    assert np.allclose(fl.solid_centroid(Q), [1 / 3, 1 / 3])
    sq = np.array([[0, 0], [2, 0], [2, 2], [0, 2], [2, 1], [2, 0.5]], dtype=float)
    assert np.allclose(fl.solid_centroid(sq), [1, 1])


def test_apex_translation_examples(vee):
    K = v_shape((3.0, 2.0))
    assert np.allclose(fl.apex(K).p, [3, 2])
    assert bd.same_body(fl.apex_translation_flow(K, 1.0), vee)
    assert bd.same_body(fl.apex_translation_flow(K, 0.5), v_shape((1.5, 1.0)))
    assert bd.same_body(fl.apex_translation_flow(vee, 0.7), vee)


@settings(max_examples=20)
@given(seeds)
def test_apex_translation_puts_origin_in_apex(seed):
    rng = np.random.default_rng(seed)
    K = random_irreducible(rng, int(rng.integers(2, 4)), line_prob=0.3)
    K1 = fl.apex_translation_flow(K, 1.0)
    assert np.linalg.norm(fl.apex(K1).p) <= 1e-7 * K.scale


def test_hyperboloid_examples():
    u = np.array([0.0, 1.0])
    H0 = fl.hyperboloid_body(0.0, u)
    assert bd.same_body(H0, VBody(2, [[0, 0]], [[0, 1]]))
    assert bd.same_body(fl.hyperboloid_body(1.0, u), VBody(2, [[0, 0]], [[0, 1]], [[1, 0]]))
    assert fl.hyperboloid_height([1.0], 0.5) == pytest.approx(SQ2 - 1)
    H = fl.hyperboloid_body(0.5, u, fl.ModelBodyConfig(resolution=16))
    assert np.allclose(bd.central_direction(H), u, atol=1e-12)
    # ring of rays at the asymptotic angle arctan(t/(1-t)) = pi/4
    assert np.allclose(np.abs(H.rays), np.array([1, 1]) / SQ2)


def test_hyperboloid_boundary_lies_on_the_surface():
    u = random_unit(np.random.default_rng(1), 3)
    H = fl.hyperboloid_body(0.3, u, fl.ModelBodyConfig(resolution=16))
    Q = geo.rotation_to(u)
    local = H.points @ Q
    assert np.allclose(local[:, -1], fl.hyperboloid_height(local[:, :-1], 0.3))


def test_paraboloid_and_ball_examples():
    P = fl.paraboloid_body([0, 1])
    assert cones.cones_equal(bd.recession_cone(P), cones.PolyhedralCone(2, [[0, 1]]))
    u = random_unit(np.random.default_rng(4), 3)
    assert np.allclose(bd.central_direction(fl.paraboloid_body(u, CFG)), u, atol=1e-6)
    ball = fl.ball_body(cones.LinearSubspace(2, np.zeros((0, 2))), fl.ModelBodyConfig(resolution=64))
    # true disk as a fine polygon: the inscribed 64-gon misses it by at most 1 - cos(pi/64)
    a = 2 * np.pi * np.arange(4096) / 4096
    disk = VBody(2, np.column_stack([np.cos(a), np.sin(a)]))
    assert mt.hausdorff_compact(ball, disk) <= 2 * (1 - np.cos(np.pi / 64))
    H = fl.halfspace_body([0, 1])
    assert bd.same_body(H, VBody(2, [[0, 0]], [[0, 1]], [[1, 0]]))


def test_theorem1_flow_examples(wedge):
    assert bd.same_body(fl.theorem1_flow(wedge, 0.0), wedge)
    cd = bd.central_direction(wedge)
    assert bd.same_body(fl.theorem1_flow(wedge, 1.0), fl.halfspace_body(cd))
    # at t = 1/2 the hyperboloid cone has half-angle pi/4, exactly the wedge's, so tau is unchanged
    assert bd.total_curvature(fl.theorem1_flow(wedge, 0.5, CFG)) == pytest.approx(np.pi / 2, abs=1e-9)
    tau = bd.total_curvature(fl.theorem1_flow(wedge, 0.75, CFG))
    # derived: rc is the cone of half-angle arctan(3) about cd; its polar arc is pi - 2 arctan(3)
    assert tau == pytest.approx(np.pi - 2 * np.arctan(3), abs=1e-9)
    assert 0 < tau < np.pi / 2
    with pytest.raises(NotIrreducible):
        fl.theorem1_flow(VBody(2, [[0, 0], [1, 0], [0, 1]]), 0.5)


@settings(max_examples=15)
@given(seeds)
def test_theorem1_preserves_class_and_central_direction(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    K = fl.apex_translation_flow(random_irreducible(rng, n), 1.0)
    u = bd.central_direction(K)
    for t in (0.25, 0.5, 0.9):
        Kt = fl.theorem1_flow(K, t, CFG)
        assert bd.classify(Kt).tag == "Irreducible"
        # the sum of recession cones is symmetric about u in the plane, or once rc(K) fits inside rc(H^t)
        inside = all(cones.contains(bd.recession_cone(fl.hyperboloid_body(t, u, CFG)), r, 1e-9) for r in K.rays)
        if n == 2 or inside:
            assert np.allclose(bd.central_direction(Kt), u, atol=1e-6)


def test_central_direction_can_drift_while_the_hyperboloid_is_narrow():
    # four rays up to 23.5 degrees from cd, against an asymptotic cone of 18.4 degrees at t = 1/4
    rng = np.random.default_rng(15)
    K = fl.apex_translation_flow(random_irreducible(rng, int(rng.integers(2, 4))), 1.0)
    u = bd.central_direction(K)
    assert K.dim == 3 and np.degrees(np.max(np.arccos(K.rays @ u))) > np.degrees(np.arctan(1 / 3))
    drift = [np.linalg.norm(bd.central_direction(fl.theorem1_flow(K, 0.25, fl.ModelBodyConfig(resolution=r))) - u)
             for r in (16, 32)]
    assert min(drift) > 1e-3
    assert np.allclose(bd.central_direction(fl.theorem1_flow(K, 0.5, CFG)), u, atol=1e-12)


def test_squeeze_identity():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        n = int(rng.integers(2, 5))
        x, u, t = rng.standard_normal(n), random_unit(rng, n), rng.uniform(0, 0.999)
        stretched = geo.stretch(x, 1 / (1 - t), u)
        assert np.allclose((1 - t) * stretched, fl.squeeze(x, t, u), atol=1e-9 * max(1, np.linalg.norm(x)) / (1 - t))


def test_theorem2_flow_examples(vee, wedge):
    assert bd.same_body(fl.theorem2_flow(vee, 0.0), vee)
    P = fl.theorem2_flow(vee, 1.0, CFG)
    assert bd.same_body(P, fl.paraboloid_body([0, 1], CFG))
    with pytest.raises(NotInKPlus):
        fl.theorem2_flow(VBody(2, [[0, 0]], [[0, 1]], [[1, 0]]), 0.5)
    with pytest.raises(ApexNotAtOrigin):
        fl.theorem2_flow(v_shape((3.0, 2.0)), 0.5)
    for t in (0.2, 0.6, 0.95):
        assert bd.is_K_plus(fl.theorem2_flow(wedge, t, CFG))


def test_theorem3_flow_examples(slab):
    assert bd.same_body(fl.theorem3_flow(slab, 0.0), slab)
    end = fl.theorem3_flow(slab, 1.0)
    assert bd.same_body(end, VBody(2, [[0, -1], [0, 1]], None, [[1, 0]]))
    with pytest.raises(NotCylinder):
        fl.theorem3_flow(VBody(2, [[0, 0]], [[0, 1], [-1, 0]]), 0.5)


@settings(max_examples=15)
@given(seeds)
def test_theorem3_preserves_cylinder_class(seed):
    rng = np.random.default_rng(seed)
    K = random_cylinder(rng, int(rng.integers(2, 4)))
    c = bd.classify(K)
    for t in (0.0, 0.3, 0.7, 1.0):
        assert bd.classify(fl.theorem3_flow(K, t, CFG)) == c


@settings(max_examples=10)
@given(seeds, st.sampled_from([1, 2, 3]))
def test_flows_commute_with_translation(seed, which):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    if which == 3:
        K = random_cylinder(rng, n)
        shift = rng.standard_normal(n)
        cen = fl.theorem3_flow(K, 0.4, CFG)
        moved = fl.theorem3_flow(K.translate(shift), 0.4, CFG)
        # the cross-section scales about the origin of L-perp, so the shift is scaled by 1 - t
        assert bd.same_body(moved, cen.translate(0.6 * shift))
        return
    K = random_k_plus(rng, n)
    u = bd.central_direction(K)
    shift = rng.standard_normal(n)
    base = fl.FLOWS[which](K, 0.4, CFG, u=u)
    moved = fl.FLOWS[which](K.translate(shift), 0.4, CFG, u=u)
    expected = shift if which == 1 else fl.squeeze(shift, 0.4, u)
    assert bd.same_body(moved, base.translate(expected))


def test_run_trace_theorem1_on_wedge(wedge):
    tr = fl.run_trace(wedge, 1, 50, CFG, step_distance=False)
    assert len(tr.times) == 51 and tr.times[0] == 0 and tr.times[-1] == 1
    assert tr.tau[0] == pytest.approx(np.pi / 2) and tr.tau[-1] == pytest.approx(0, abs=1e-12)
    assert all(b <= a + 1e-6 for a, b in zip(tr.tau, tr.tau[1:]))
    assert all(b <= a + 1e-6 for a, b in zip(tr.nc_radius, tr.nc_radius[1:]))
    assert np.isnan(tr.step_da[1])


def test_run_trace_theorem2_on_vee(vee):
    tr = fl.run_trace(vee, 2, 10, CFG)
    assert tr.tau[0] == pytest.approx(np.pi / 2)
    assert tr.tau[-1] == pytest.approx(np.pi, rel=0.05)
    assert all(np.isfinite(tr.step_da)) and tr.step_da[0] == 0


def test_run_trace_theorem3_has_no_radius(slab):
    tr = fl.run_trace(slab, 3, 4, CFG, keep_bodies=True)
    assert all(np.isnan(tr.nc_radius)) and len(tr.bodies) == 5
