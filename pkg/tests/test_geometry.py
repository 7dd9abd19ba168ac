import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from recess import geometry as geo
from recess.errors import DimMismatch, NonFinite, ZeroVector

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vec3 = st.lists(finite, min_size=3, max_size=3).map(np.array)
seeds = st.integers(0, 2**32 - 1)


def test_normalize_examples():
    assert np.allclose(geo.normalize([3, 4]), [0.6, 0.8])
    with pytest.raises(ZeroVector):
        geo.normalize([0, 0])
    with pytest.raises(ZeroVector):
        geo.normalize([1e-15, 0])
    with pytest.raises(NonFinite):
        geo.normalize([np.nan, 1])


@given(vec3)
def test_normalize_has_unit_norm(v):
    if np.linalg.norm(v) <= 1e-12:
        return
    assert abs(np.linalg.norm(geo.normalize(v)) - 1) <= 1e-12


def test_stretch_examples():
    assert np.allclose(geo.stretch([1, 1], 2, [0, 1]), [1, 2])
    assert np.allclose(geo.stretch([1, 1], 0, [0, 1]), [1, 0])
    x = np.array([0.3, -2.0, 5.0])
    assert np.allclose(geo.stretch(x, 1.0, geo.normalize([1, 2, 3])), x)


@given(vec3, st.floats(0.1, 10), seeds)
def test_stretch_inverse(x, lam, seed):
    u = geo.normalize(np.random.default_rng(seed).standard_normal(3))
    back = geo.stretch(geo.stretch(x, lam, u), 1 / lam, u)
    assert np.allclose(back, x, atol=1e-10 * max(1, np.abs(x).max()))


@given(vec3, seeds)
def test_reflect_twice_is_identity(x, seed):
    u = geo.normalize(np.random.default_rng(seed).standard_normal(3))
    assert np.allclose(geo.reflect(geo.reflect(x, u), u), x, atol=1e-12 * max(1, np.abs(x).max()))


def test_stereo_inverse_examples():
    assert np.allclose(geo.stereo_inverse([0, 0]), [0, 0, -1])
    z = geo.stereo_inverse([1.0])
    # derived: the lift lies on S^1 and projects back to x = 1
    assert abs(np.linalg.norm(z) - 1) < 1e-15
    assert np.allclose(z[:-1] / (1 - z[-1]), [1.0])
    assert np.allclose(z, [1, 0])
    far = geo.stereo_inverse([1e8, 0])
    assert np.linalg.norm(far - geo.pole(2)) < 1e-7


@given(st.lists(st.lists(finite, min_size=2, max_size=2), min_size=2, max_size=20, unique_by=tuple))
def test_stereo_inverse_injective_on_samples(pts):
    X = np.array(pts, dtype=float)
    Z = geo.stereo_inverse(X)
    assert np.allclose(np.linalg.norm(Z, axis=1), 1)
    d = np.linalg.norm(Z[:, None] - Z[None], axis=2)
    iu = np.triu_indices(len(X), 1)
    distinct = np.linalg.norm(X[:, None] - X[None], axis=2)[iu] > 0
    assert np.all(d[iu][distinct] > 0)


@given(vec3, vec3)
def test_chordal_distance_matches_lifts(a, b):
    direct = np.linalg.norm(geo.stereo_inverse(a) - geo.stereo_inverse(b))
    assert abs(geo.chordal_distance(a, b) - direct) <= 1e-9
    assert abs(geo.chordal_to_pole(a) - np.linalg.norm(geo.stereo_inverse(a) - geo.pole(3))) <= 1e-9


def test_product_min_eigenvalue_examples():
    I = np.eye(3)
    assert geo.product_min_eigenvalue(I, I) == pytest.approx(1.0)
    assert geo.product_min_eigenvalue(I, np.zeros((3, 3))) == pytest.approx(0.0)
    with pytest.raises(NonFinite):
        geo.product_min_eigenvalue(I, np.full((3, 3), np.inf))
    with pytest.raises(DimMismatch):
        geo.product_min_eigenvalue(I, np.eye(2))


def _spd_psd(rng, n):
    H, G = rng.standard_normal((n, n)), rng.standard_normal((rng.integers(1, n + 1), n))
    return H.T @ H + np.eye(n), G.T @ G


@given(seeds)
def test_product_min_eigenvalue_matches_symmetric_oracle(seed):
    rng = np.random.default_rng(seed)
    A, B = _spd_psd(rng, 5)
    # A = C C^T makes AB similar to the symmetric C^T B C
    C = np.linalg.cholesky(A)
    oracle = scipy.linalg.eigvalsh(C.T @ B @ C).min()
    got = geo.product_min_eigenvalue(A, B)
    assert got == pytest.approx(oracle, abs=1e-8 * max(1, np.abs(oracle)))
    assert got >= -1e-8


def test_orthonormal_basis_and_complement():
    B = geo.orthonormal_basis([[1, 1, 0], [2, 2, 0], [0, 0, 3]], 3)
    assert B.shape == (2, 3)
    assert np.allclose(B @ B.T, np.eye(2))
    C = geo.complement_basis(B, 3)
    assert np.allclose(np.abs(C), np.abs(geo.normalize([1, -1, 0]))[None])
    assert geo.rank([[1, 0], [2, 0]], 2) == 1


def test_sphere_area():
    assert geo.sphere_area(2) == pytest.approx(2 * np.pi)
    assert geo.sphere_area(3) == pytest.approx(4 * np.pi)
    assert geo.sphere_area(1) == pytest.approx(2.0)


def test_rotation_to_maps_last_axis():
    u = geo.normalize([1, 2, -2])
    Q = geo.rotation_to(u)
    assert np.allclose(Q.T @ Q, np.eye(3))
    assert np.allclose(Q[:, -1], u)


def test_hyperplane():
    h = geo.Hyperplane(np.array([0.0, 2.0]), 1.0)
    assert np.allclose(h.normal, [0, 1])
    assert h.contains([5, 1])
    assert not h.contains([5, 1.1])
    assert h.signed_distance([0, 3]) == pytest.approx(2)
