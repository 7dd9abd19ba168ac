"""Polyhedral cones in generator form.

A cone is ``cone(rays) + span(lines)``.  Rays are stored as unit vectors
orthogonal to the stored lines, lines as an orthonormal basis.  The stored
lines need not be the whole lineality space (two opposite rays also span a
line); :func:`canonical` computes the reduced form with the full lineality
space and only extreme rays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import geometry as geo
from .dd import DEFAULT_CAP, dedup_rows, double_description
from .errors import DimMismatch, NotProper

DEFAULT_MC_SAMPLES = 200_000


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace given by an orthonormal basis (rows)."""

    dim: int
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", geo.orthonormal_basis(self.basis, self.dim))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def project(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.rank == 0:
            return np.zeros_like(x)
        return (x @ self.basis.T) @ self.basis

    def project_perp(self, x) -> np.ndarray:
        return geo.project_out(x, self.basis)

    def complement(self) -> "LinearSubspace":
        return LinearSubspace(self.dim, geo.complement_basis(self.basis, self.dim))

    def contains(self, x, tol: float = geo.TOL_GEOM) -> bool:
        x = geo.as_vector(x, self.dim)
        return float(np.linalg.norm(self.project_perp(x))) <= tol * max(1.0, float(np.linalg.norm(x)))


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """``cone(rays) + span(lines)`` in R^dim.

    ``halfspaces`` optionally caches normals ``a`` with ``C = {x : <a, x> <= 0}``.
    """

    dim: int
    rays: np.ndarray = None
    lines: np.ndarray = None
    halfspaces: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        lines = geo.orthonormal_basis(geo.as_matrix(self.lines, self.dim), self.dim)
        rays = geo.as_matrix(self.rays, self.dim)
        if rays.shape[0] and lines.shape[0]:
            rays = geo.project_out(rays, lines)
        norms = np.linalg.norm(rays, axis=1)
        keep = norms > geo.TOL_GEOM
        rays = dedup_rows(rays[keep] / norms[keep, None])
        object.__setattr__(self, "rays", rays + 0.0)
        object.__setattr__(self, "lines", lines)
        if self.halfspaces is not None:
            object.__setattr__(self, "halfspaces", geo.as_matrix(self.halfspaces, self.dim))

    @classmethod
    def origin(cls, dim: int) -> "PolyhedralCone":
        return cls(dim)

    @classmethod
    def whole(cls, dim: int) -> "PolyhedralCone":
        return cls(dim, lines=np.eye(dim))

    def generators(self) -> np.ndarray:
        """Rays together with both orientations of every line."""
        return np.vstack([self.rays, self.lines, -self.lines])

    @property
    def is_origin(self) -> bool:
        return self.rays.shape[0] == 0 and self.lines.shape[0] == 0

    @cached_property
    def span_rank(self) -> int:
        return geo.rank(np.vstack([self.rays, self.lines]), self.dim)

    def __repr__(self) -> str:
        return f"PolyhedralCone(dim={self.dim}, rays={self.rays.tolist()}, lines={self.lines.tolist()})"


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    method: str


def _check_dims(*cones):
    dims = {c.dim for c in cones}
    if len(dims) != 1:
        raise DimMismatch(f"cones live in different dimensions: {sorted(dims)}")


def cone_distance(C: PolyhedralCone, v) -> float:
    """Euclidean distance from ``v`` to ``C`` (non-negative least squares)."""
    v = geo.as_vector(v, C.dim)
    w = geo.project_out(v, C.lines)
    if C.rays.shape[0] == 0:
        return float(np.linalg.norm(w))
    _, rnorm = geo.nonneg_lstsq(C.rays.T, w)
    return rnorm


def cone_projection(C: PolyhedralCone, v) -> np.ndarray:
    """Nearest point of ``C`` to ``v``."""
    v = geo.as_vector(v, C.dim)
    along = (v @ C.lines.T) @ C.lines if C.lines.shape[0] else np.zeros(C.dim)
    w = v - along
    if C.rays.shape[0] == 0:
        return along
    coef, _ = geo.nonneg_lstsq(C.rays.T, w)
    return along + coef @ C.rays


def contains(C: PolyhedralCone, v, tol: float = geo.TOL_GEOM) -> bool:
    v = geo.as_vector(v, C.dim)
    return cone_distance(C, v) <= tol * max(1.0, float(np.linalg.norm(v)))


def linearity_space(C: PolyhedralCone) -> LinearSubspace:
    """Orthonormal basis of ``C ∩ -C``.

    A stored ray lies in the lineality space exactly when its negative is a
    non-negative combination of the stored rays (modulo the stored lines).
    """
    lineal = [r for r in C.rays if contains(C, -r)]
    return LinearSubspace(C.dim, np.vstack([C.lines, *lineal]) if lineal else C.lines)


def canonical(C: PolyhedralCone) -> PolyhedralCone:
    """Same cone with lines = full lineality space and rays = extreme rays."""
    L = linearity_space(C).basis
    base = PolyhedralCone(C.dim, C.rays, L)
    R = base.rays
    keep = []
    for i in range(R.shape[0]):
        others = np.delete(R, i, axis=0)
        if others.shape[0] == 0:
            keep.append(i)
            continue
        _, res = geo.nonneg_lstsq(others.T, R[i])
        if res > geo.TOL_GEOM:
            keep.append(i)
    return PolyhedralCone(C.dim, R[keep], L, halfspaces=C.halfspaces)


def dd_convert(halfspaces, dim: int, cap: int = DEFAULT_CAP) -> PolyhedralCone:
    """Generator form of ``{x : <a, x> <= 0 for every a in halfspaces}``."""
    A = geo.as_matrix(halfspaces, dim)
    rays, lines = double_description(A, dim, cap=cap)
    return PolyhedralCone(dim, rays, lines, halfspaces=A)


def polar(C: PolyhedralCone, cap: int = DEFAULT_CAP) -> PolyhedralCone:
    """``{y : <y, x> <= 0 for all x in C}``."""
    return dd_convert(C.generators(), C.dim, cap=cap)


def dd_facets(C: PolyhedralCone, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Irredundant normals ``a`` (unit rows) with ``C = {x : <a, x> <= 0}``.

    Equality constraints appear as a pair ``a, -a``.
    """
    P = polar(C, cap=cap)
    return np.vstack([P.rays, P.lines, -P.lines])


def facets(C: PolyhedralCone, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Cached halfspace normals when available, else :func:`dd_facets`."""
    if C.halfspaces is not None:
        return C.halfspaces
    return dd_facets(C, cap=cap)


def is_relatively_proper(C: PolyhedralCone) -> bool:
    """True iff ``C`` is a proper subset of its span (``{o}`` is not)."""
    if C.is_origin:
        return False
    return linearity_space(C).rank < C.span_rank


def cone_sum(C1: PolyhedralCone, C2: PolyhedralCone) -> PolyhedralCone:
    _check_dims(C1, C2)
    return canonical(PolyhedralCone(C1.dim, np.vstack([C1.rays, C2.rays]), np.vstack([C1.lines, C2.lines])))


def project_cone(C: PolyhedralCone, L: LinearSubspace) -> PolyhedralCone:
    """Orthogonal projection of ``C`` onto the complement of ``L``."""
    if L.dim != C.dim:
        raise DimMismatch("subspace and cone dimensions differ")
    return canonical(PolyhedralCone(C.dim, L.project_perp(C.rays), L.project_perp(C.lines)))


def cones_equal(C1: PolyhedralCone, C2: PolyhedralCone, tol: float = 1e-8) -> bool:
    """Mutual containment of generators."""
    _check_dims(C1, C2)
    return all(contains(C2, g, tol) for g in C1.generators()) and all(
        contains(C1, g, tol) for g in C2.generators()
    )


# --- spherical measure and centroid -------------------------------------------------


def uniform_sphere(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` uniform points on S^{n-1} (normalized Gaussians)."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((count, n))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def membership_mask(C: PolyhedralCone, X: np.ndarray, tol: float = geo.TOL_GEOM, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Vectorized ``x in C`` for the rows of ``X``."""
    if C.dim <= cap:
        A = facets(C, cap=cap)
        if A.shape[0] == 0:
            return np.ones(X.shape[0], dtype=bool)
        return np.all(X @ A.T <= tol, axis=1)
    return np.array([contains(C, x, tol) for x in X])


def _angle(a: np.ndarray, b: np.ndarray) -> float:
    # atan2 form stays accurate for nearly parallel vectors
    return math.atan2(float(np.linalg.norm(np.cross(a, b)) if a.size == 3 else abs(a[0] * b[1] - a[1] * b[0])), float(a @ b))


def _pointed_frame(R: np.ndarray) -> np.ndarray:
    """Orthonormal basis (rows) of span(R)."""
    return geo.orthonormal_basis(R, R.shape[1])


def _interior_direction(V: np.ndarray) -> np.ndarray:
    """A direction with positive inner product against every ray of the pointed 3D cone ``cone(V)``.

    Minus the sum of the facet normals lies in the interior of the cone
    ``{c : <c, v> >= 0 for all v in cone(V)}``; the mean ray can fail this for wide cones.
    """
    return geo.normalize(-dd_facets(PolyhedralCone(3, V)).sum(axis=0))


def _cyclic_order(V: np.ndarray) -> np.ndarray:
    """Order the extreme rays of a pointed 3D cone cyclically (counter-clockwise in a gnomonic chart)."""
    c = _interior_direction(V)
    Q = geo.rotation_to(c)
    b1, b2 = Q[:, 0], Q[:, 1]
    if np.dot(np.cross(b1, b2), c) < 0:
        b2 = -b2
    # gnomonic chart about c, then sort around the vertex mean (inside the polygon)
    G = V / (V @ c)[:, None]
    x, y = G @ b1, G @ b2
    ang = np.arctan2(y - y.mean(), x - x.mean())
    return V[np.argsort(ang)]


def _triangle_solid_angle(a, b, c) -> float:
    num = abs(float(np.dot(a, np.cross(b, c))))
    den = 1.0 + float(a @ b + b @ c + c @ a)
    return 2.0 * math.atan2(num, den)


def _pointed_measure(R: np.ndarray, m: int) -> float:
    """Intrinsic measure of a pointed cone that is full-dimensional in R^m (m <= 3)."""
    if m == 1:
        return 1.0
    if m == 2:
        return _angle(R[0], R[1])
    V = _cyclic_order(R)
    return sum(_triangle_solid_angle(V[0], V[i], V[i + 1]) for i in range(1, V.shape[0] - 1))


def measure_estimate(C: PolyhedralCone, samples: int = DEFAULT_MC_SAMPLES, seed: int = 0,
                     method: str = "auto") -> Estimate:
    """Hausdorff measure of ``C ∩ S^{n-1}`` (ambient dimension ``n - 1``).

    Exact for n <= 3, Monte-Carlo above (or when ``method='montecarlo'``).
    """
    n = C.dim
    K = canonical(C)
    if K.span_rank < n:
        return Estimate(0.0, 0.0, "exact")
    if method == "montecarlo" or (method == "auto" and n >= 4):
        X = uniform_sphere(n, samples, seed)
        p = float(np.mean(membership_mask(K, X)))
        area = geo.sphere_area(n)
        return Estimate(area * p, area * math.sqrt(p * (1 - p) / samples), "montecarlo")
    nl = K.lines.shape[0]
    if nl == n:
        return Estimate(geo.sphere_area(n), 0.0, f"exact{n}d")
    # C = L (+) C' with C' pointed and full-dimensional in the complement of L
    if n == 1:
        return Estimate(1.0, 0.0, "exact1d")
    if n == 2:
        value = math.pi if nl == 1 else _pointed_measure(K.rays, 2)
        return Estimate(value, 0.0, "exact2d")
    if nl == 2:
        value = 2.0 * math.pi
    elif nl == 1:
        frame = geo.complement_basis(K.lines, 3)
        value = 2.0 * _pointed_measure(K.rays @ frame.T, 2)
    else:
        value = _pointed_measure(K.rays, 3)
    return Estimate(value, 0.0, "exact3d")


def spherical_measure(C: PolyhedralCone, samples: int = DEFAULT_MC_SAMPLES, seed: int = 0) -> float:
    return measure_estimate(C, samples, seed).value


def _stokes_integral(V: np.ndarray) -> np.ndarray:
    """Integral of x over a convex spherical polygon with vertices V (R^3)."""
    V = _cyclic_order(V)
    c = _interior_direction(V)
    total = np.zeros(3)
    k = V.shape[0]
    for i in range(k):
        a, b = V[i], V[(i + 1) % k]
        cr = np.cross(a, b)
        total += 0.5 * _angle(a, b) * cr / np.linalg.norm(cr)
    if total @ c < 0:
        total = -total
    return total


def _facet_integral(R: np.ndarray) -> np.ndarray:
    """Integral of x over ``cone(R) ∩ S^{m-1}`` for a pointed full-dimensional cone in R^m.

    The divergence theorem on ``cone(R) ∩ B^m`` (the field is constant) gives
    ``∫ x dω = -Σ_F n_F |F ∩ S^{m-2}| / (m - 1)`` with ``n_F`` the outward facet
    normals; facet measures are computed exactly in dimension ``m - 1 <= 3``.
    """
    m = R.shape[1]
    total = np.zeros(m)
    for a in dd_facets(PolyhedralCone(m, R)):
        on = R[np.abs(R @ a) <= 1e-8]
        frame = geo.complement_basis(a[None, :], m)
        total += a * measure_estimate(PolyhedralCone(m - 1, on @ frame.T)).value / (m - 1)
    return -total


def centroid_integral(C: PolyhedralCone, method: str = "exact", samples: int = DEFAULT_MC_SAMPLES,
                      seed: int = 0):
    """``∫ x dω`` over the pointed part of ``C`` intersected with its span's sphere.

    The lineality space contributes only a positive factor (the region is
    symmetric along it), so the integral is taken over ``C' ∩ S^{m-1}`` where
    ``C'`` is the projection of ``C`` onto the complement of its lines and
    ``m = dim span(C')``.  Returns ``(vector, stderr)``; ``stderr`` is zero
    for the exact paths: arc formula (m = 2), boundary line integral (m = 3)
    and the facet formula (m = 4, or any m <= 4 with ``method='facets'``).
    Larger ``m`` falls back to Monte-Carlo.
    """
    K = canonical(C)
    if K.rays.shape[0] == 0:
        raise NotProper("cone is a linear subspace; it has no central direction")
    frame = _pointed_frame(K.rays)
    m = frame.shape[0]
    R = K.rays @ frame.T
    zero = np.zeros(C.dim)
    if method == "facets" and m >= 2 or method == "exact" and m == 4:
        return _facet_integral(R) @ frame, zero
    if method == "montecarlo" or m >= 5:
        sub = PolyhedralCone(m, R)
        X = uniform_sphere(m, samples, seed)
        mask = membership_mask(sub, X)
        vals = X * mask[:, None]
        area = geo.sphere_area(m)
        mean = vals.mean(axis=0) * area
        err = vals.std(axis=0, ddof=1) * area / math.sqrt(samples)
        return mean @ frame, np.sqrt((err ** 2) @ frame ** 2)
    if m == 1:
        return K.rays[0].copy(), zero
    if m == 2:
        a, b = R[0], R[1]
        theta = _angle(a, b)
        v = 2.0 * math.sin(theta / 2.0) * geo.normalize(a + b)
        return v @ frame, zero
    return _stokes_integral(R) @ frame, zero


def spherical_centroid(C: PolyhedralCone, samples: int = DEFAULT_MC_SAMPLES, seed: int = 0) -> np.ndarray:
    """Normalized spherical center of mass of ``C`` inside its span.

    Requires ``C`` relatively proper; exact when the pointed part spans at
    most four dimensions, Monte-Carlo otherwise.
    """
    if not is_relatively_proper(C):
        raise NotProper("central direction needs a relatively proper, nontrivial cone")
    vec, _ = centroid_integral(C, samples=samples, seed=seed)
    return geo.normalize(vec)


@dataclass(frozen=True)
class SphericalRegion:
    """``cone ∩ S^{n-1}`` with measure and centroid accessors."""

    cone: PolyhedralCone
    measure_mode: str = "auto"
    samples: int = DEFAULT_MC_SAMPLES
    seed: int = 0

    def measure(self) -> Estimate:
        return measure_estimate(self.cone, self.samples, self.seed, method=self.measure_mode)

    def centroid(self) -> np.ndarray:
        if self.measure_mode == "montecarlo":
            vec, _ = centroid_integral(self.cone, "montecarlo", self.samples, self.seed)
            return geo.normalize(vec)
        return spherical_centroid(self.cone, self.samples, self.seed)

    def contains(self, x, tol: float = geo.TOL_GEOM) -> bool:
        x = geo.as_vector(x, self.cone.dim)
        return abs(float(np.linalg.norm(x)) - 1.0) <= tol and contains(self.cone, x, tol)
