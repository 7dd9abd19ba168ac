"""Convex bodies in generator form ``conv(points) + cone(rays) + span(lines)``.

Everything about a body's behavior at infinity is read off its recession cone
(the rays and lines).  The halfspace form is derived on demand and only used
for vectorized membership and distance queries.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from . import cones
from . import geometry as geo
from .cones import LinearSubspace, PolyhedralCone
from .dd import DEFAULT_CAP, dedup_rows, double_description
from .errors import Degenerate, DimMismatch, EmptyPoints, NotIrreducible, Unbounded


@dataclass(frozen=True, eq=False)
class VBody:
    """``conv(points) + cone(rays) + span(lines)`` in R^dim.

    ``assume_solid`` records the caller's claim that the body has interior
    points; faces and other lower-dimensional sets leave it False.
    """

    dim: int
    points: np.ndarray
    rays: np.ndarray = None
    lines: np.ndarray = None
    assume_solid: bool = False

    def __post_init__(self):
        pts = geo.as_matrix(self.points, self.dim)
        if pts.shape[0] == 0:
            raise EmptyPoints("a body needs at least one point")
        rc = PolyhedralCone(self.dim, self.rays, self.lines)
        object.__setattr__(self, "points", dedup_rows(pts + 0.0))
        object.__setattr__(self, "rays", rc.rays)
        object.__setattr__(self, "lines", rc.lines)

    @classmethod
    def from_cone(cls, C: PolyhedralCone, apex=None) -> "VBody":
        apex = np.zeros(C.dim) if apex is None else geo.as_vector(apex, C.dim)
        return cls(C.dim, apex[None, :], C.rays, C.lines)

    @cached_property
    def hrep(self):
        return halfspaces(self)

    @cached_property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.points))))

    def translate(self, v) -> "VBody":
        v = geo.as_vector(v, self.dim)
        return VBody(self.dim, self.points + v, self.rays, self.lines, self.assume_solid)

    def linear_image(self, M) -> "VBody":
        """Image under the linear map ``x -> M x`` (lines mapped as rays both ways)."""
        M = np.asarray(M, dtype=float)
        lines = self.lines @ M.T
        return VBody(self.dim, self.points @ M.T, np.vstack([self.rays @ M.T, lines, -lines]))

    def scaled(self, s: float) -> "VBody":
        """``s * K`` for ``s > 0`` (rays and lines are unchanged)."""
        return VBody(self.dim, s * self.points, self.rays, self.lines, self.assume_solid)

    def __repr__(self) -> str:
        return (f"VBody(dim={self.dim}, points={self.points.tolist()}, rays={self.rays.tolist()}, "
                f"lines={self.lines.tolist()})")


@dataclass(frozen=True)
class BodyClass:
    tag: str  # "Bounded" | "Irreducible" | "Cylinder"
    m: int = 0
    degenerate: bool = False

    def __str__(self) -> str:
        return f"Cylinder({self.m})" if self.tag == "Cylinder" else self.tag


@dataclass(frozen=True)
class Face:
    body: VBody
    direction: np.ndarray


def _check_dims(*bodies):
    dims = {K.dim for K in bodies}
    if len(dims) != 1:
        raise DimMismatch(f"bodies live in different dimensions: {sorted(dims)}")


def recession_cone(K: VBody) -> PolyhedralCone:
    return PolyhedralCone(K.dim, K.rays, K.lines)


def support_value(K: VBody, u, tol: float = geo.TOL_GEOM) -> float:
    """``sup_K <x, u>``, or ``inf`` when a ray or line escapes in direction ``u``."""
    u = geo.as_vector(u, K.dim)
    if K.rays.shape[0] and np.max(K.rays @ u) > tol:
        return float("inf")
    if K.lines.shape[0] and np.max(np.abs(K.lines @ u)) > tol:
        return float("inf")
    return float(np.max(K.points @ u))


def face(K: VBody, u, tol: float = geo.TOL_GEOM) -> Face:
    """Contact set of the support hyperplane with outward normal ``u``."""
    u = geo.normalize(u)
    h = support_value(K, u, tol)
    if not np.isfinite(h):
        raise Unbounded("no support hyperplane with this normal; the direction is not a normal of the body")
    vals = K.points @ u
    pts = K.points[vals >= h - tol * K.scale]
    rays = K.rays[np.abs(K.rays @ u) <= tol] if K.rays.shape[0] else K.rays
    return Face(VBody(K.dim, pts, rays, K.lines), u)


def _lp_residual(G_conv: np.ndarray, G_cone: np.ndarray, target: np.ndarray) -> float:
    """min ||sum a_i g_i + sum b_j h_j - target||_1 over the simplex a and b >= 0."""
    n = target.shape[0]
    k, m = G_conv.shape[0], G_cone.shape[0]
    A_eq = np.hstack([G_conv.T, G_cone.T.reshape(n, m), np.eye(n), -np.eye(n)])
    A_eq = np.vstack([A_eq, np.concatenate([np.ones(k), np.zeros(m + 2 * n)])])
    b_eq = np.concatenate([target, [1.0]])
    c = np.concatenate([np.zeros(k + m), np.ones(2 * n)])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return float(res.fun) if res.status == 0 else float("inf")


def contains_point(K: VBody, x, tol: float = geo.TOL_GEOM) -> bool:
    """Membership by an LP on the generators (independent of the halfspace form)."""
    x = geo.as_vector(x, K.dim)
    G = np.vstack([K.rays, K.lines, -K.lines])
    scale = max(K.scale, float(np.max(np.abs(x))))
    return _lp_residual(K.points, G, x) <= tol * scale


def _affine_coords(X: np.ndarray, tol: float):
    c = X.mean(axis=0)
    B = geo.orthonormal_basis(X - c, X.shape[1], tol=tol)
    return (X - c) @ B.T, B.shape[0]


def _hull_candidates(P: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Indices of points that can be extreme in ``conv(P) + cone(R)``.

    Extreme points of the body are vertices of the truncation
    ``conv(P ∪ (P + M R))`` for a far-away ``M``.
    """
    if P.shape[0] <= 1:
        return np.arange(P.shape[0])
    diam = float(np.max(np.linalg.norm(P - P[0], axis=1))) + 1.0
    X = P
    if R.shape[0]:
        X = np.vstack([P, (P[:, None, :] + 10.0 * diam * R[None, :, :]).reshape(-1, P.shape[1])])
    Y, k = _affine_coords(X, geo.TOL_GEOM * diam)
    if k == 0:
        return np.array([0])
    if k == 1:
        idx = [int(np.argmin(Y[:, 0])), int(np.argmax(Y[:, 0]))]
    else:
        try:
            idx = ConvexHull(Y).vertices
        except QhullError:
            return np.arange(P.shape[0])
    return np.unique([i for i in idx if i < P.shape[0]])


def prune_points(P: np.ndarray, R: np.ndarray, method: str = "hull", tol: float = geo.TOL_GEOM) -> np.ndarray:
    """Drop points that are redundant in ``conv(P) + cone(R)``.

    ``method='hull'`` uses the truncated convex hull; ``'lp'`` runs an LP
    redundancy test on each survivor of the hull filter.
    """
    keep = _hull_candidates(P, R)
    if method == "lp" and keep.size > 1:
        scale = max(1.0, float(np.max(np.abs(P))))
        final = []
        for j, i in enumerate(keep):
            others = P[np.delete(keep, j)]
            if _lp_residual(others, R, P[i]) > tol * scale:
                final.append(i)
        keep = np.array(final, dtype=int)
    return P[keep]


def reduce(K: VBody, method: str = "hull") -> VBody:
    """Canonical generators: full lineality, extreme rays, extreme points in L-perp."""
    rc = cones.canonical(recession_cone(K))
    P = geo.project_out(K.points, rc.lines)
    P = dedup_rows(P)
    P = prune_points(P, rc.rays, method=method)
    return VBody(K.dim, P, rc.rays, rc.lines, K.assume_solid)


def minkowski_sum(K0: VBody, K1: VBody, method: str = "hull") -> VBody:
    _check_dims(K0, K1)
    pts = (K0.points[:, None, :] + K1.points[None, :, :]).reshape(-1, K0.dim)
    body = VBody(K0.dim, pts, np.vstack([K0.rays, K1.rays]), np.vstack([K0.lines, K1.lines]),
                 K0.assume_solid or K1.assume_solid)
    return reduce(body, method=method)


def project_body(K: VBody, L: LinearSubspace) -> VBody:
    """Orthogonal projection of ``K`` onto the complement of ``L``."""
    if L.dim != K.dim:
        raise DimMismatch("subspace and body dimensions differ")
    return VBody(K.dim, L.project_perp(K.points), L.project_perp(K.rays), L.project_perp(K.lines))


def motzkin_decompose(K: VBody):
    """Split ``K = olK + L`` with ``L`` the linearity space and ``olK ⊂ L-perp`` line-free."""
    L = cones.linearity_space(recession_cone(K))
    R = cones.canonical(PolyhedralCone(K.dim, L.project_perp(K.rays))).rays
    olK = VBody(K.dim, L.project_perp(K.points), R)
    return reduce(olK), L


def is_solid(K: VBody) -> bool:
    gens = np.vstack([K.points[1:] - K.points[0], K.rays, K.lines])
    return geo.rank(gens, K.dim) == K.dim


def classify(K: VBody) -> BodyClass:
    """Bounded, Irreducible (boundary ≅ R^{n-1}) or Cylinder(m) (m = dim of the linearity space)."""
    degenerate = not is_solid(K)
    if degenerate:
        warnings.warn("body has no interior points; classification is for its generators", stacklevel=2)
    rc = recession_cone(K)
    if rc.is_origin:
        return BodyClass("Bounded", 0, degenerate)
    L = cones.linearity_space(rc)
    if L.rank == K.dim:
        raise Degenerate("the body is the whole space")
    if cones.is_relatively_proper(rc):
        return BodyClass("Irreducible", 0, degenerate)
    return BodyClass("Cylinder", L.rank, degenerate)


def is_K_plus(K: VBody) -> bool:
    """Unbounded and line-free."""
    rc = recession_cone(K)
    return not rc.is_origin and cones.linearity_space(rc).rank == 0


def strictly_convex_witness(K: VBody):
    """A vertex whose normal cone is full-dimensional, or None.

    Exists exactly for line-free bodies; serves as an independent check of
    :func:`is_K_plus` on unbounded inputs.
    """
    if K.lines.shape[0] or K.dim > DEFAULT_CAP:
        return None
    R = reduce(K)
    if R.lines.shape[0]:
        return None
    for p in R.points:
        cons = np.vstack([R.points - p, R.rays])
        cons = cons[np.linalg.norm(cons, axis=1) > geo.TOL_GEOM]
        if cons.shape[0] == 0:
            return p
        rays, lines = double_description(cons, K.dim)
        if geo.rank(np.vstack([rays, lines]), K.dim) == K.dim:
            return p
    return None


def has_balanced_support(K: VBody, u, direction: bool = False, tol: float = geo.TOL_GEOM) -> bool:
    """Support at ``-u`` exists and its face contains half-lines only inside full lines.

    With ``direction=True`` also require ``u`` in the recession cone.
    """
    u = geo.normalize(u)
    if not np.isfinite(support_value(K, -u, tol)):
        return False
    F = face(K, -u, tol).body
    if cones.canonical(recession_cone(F)).rays.shape[0]:
        return False
    return not direction or cones.contains(recession_cone(K), u, tol)


def central_direction(K: VBody, samples: int = cones.DEFAULT_MC_SAMPLES, seed: int = 0) -> np.ndarray:
    """Normalized spherical centroid of the recession cone (irreducible bodies only)."""
    if classify(K).tag != "Irreducible":
        raise NotIrreducible("central direction needs an unbounded body whose recession cone is relatively proper")
    u = cones.spherical_centroid(recession_cone(K), samples=samples, seed=seed)
    if not has_balanced_support(K, u, direction=True, tol=1e-7):
        warnings.warn("central direction failed the balanced-support check", stacklevel=2)
    return u


def normal_cone_closure(K: VBody, cap: int = DEFAULT_CAP) -> PolyhedralCone:
    """Closure of the normal cone, i.e. the polar of the recession cone."""
    return cones.polar(recession_cone(K), cap=cap)


def total_curvature_estimate(K: VBody, samples: int = cones.DEFAULT_MC_SAMPLES, seed: int = 0) -> cones.Estimate:
    if K.dim > DEFAULT_CAP:
        # polar(C) ∩ S: sample directions and test <x, g> <= 0 for all generators
        X = cones.uniform_sphere(K.dim, samples, seed)
        G = recession_cone(K).generators()
        inside = np.all(X @ G.T <= geo.TOL_GEOM, axis=1) if G.shape[0] else np.ones(samples, bool)
        p = float(inside.mean())
        area = geo.sphere_area(K.dim)
        return cones.Estimate(area * p, area * np.sqrt(p * (1 - p) / samples), "montecarlo")
    return cones.measure_estimate(normal_cone_closure(K), samples, seed)


def total_curvature(K: VBody, samples: int = cones.DEFAULT_MC_SAMPLES, seed: int = 0) -> float:
    return total_curvature_estimate(K, samples, seed).value


# --- halfspace form -------------------------------------------------------------------


def _cone_facets_qhull(G: np.ndarray):
    """Facet normals of the pointed full-dimensional cone generated by unit rows ``G``."""
    d = G.shape[1]
    if G.shape[0] < d:
        return None
    try:
        hull = ConvexHull(np.vstack([np.zeros(d), G]))
    except QhullError:
        return None
    eq = hull.equations
    through = np.abs(eq[:, -1]) <= 1e-9
    if not np.any(through) or not np.any(hull.vertices == 0):
        return None
    N = dedup_rows(eq[through, :-1], tol=1e-9)
    return N


def halfspaces(K: VBody, cap: int = DEFAULT_CAP):
    """Irredundant ``(A, b)`` with ``K = {x : A x <= b}``; rows of ``A`` are unit.

    Homogenize: ``K`` is the slice at height 1 of the cone generated by
    ``(p, 1)``, ``(r, 0)`` and ``±(l, 0)``.  For a full-dimensional body the
    cone facets come from a convex hull, otherwise from double description.
    """
    n = K.dim
    L = K.lines
    P = geo.project_out(K.points, L)
    R = K.rays
    G = np.vstack([np.hstack([P, np.ones((P.shape[0], 1))]), np.hstack([R, np.zeros((R.shape[0], 1))])])
    G = G / np.linalg.norm(G, axis=1, keepdims=True)
    N = None
    if L.shape[0] == 0 and is_solid(K):
        N = _cone_facets_qhull(G)
    if N is None:
        # cone facets: rays and lines of the polar cone
        Lh = np.hstack([L, np.zeros((L.shape[0], 1))])
        rays, lines = double_description(np.vstack([G, Lh, -Lh]), n + 1, cap=cap + 1)
        N = np.vstack([rays, lines, -lines])
    # a row (a, c) reads <a, x> + c <= 0
    A, c = N[:, :n], N[:, n]
    norms = np.linalg.norm(A, axis=1)
    keep = norms > 1e-9
    A = A[keep] / norms[keep, None]
    b = -c[keep] / norms[keep]
    return A + 0.0, b + 0.0


def facet_normal_cone(K: VBody) -> PolyhedralCone:
    """Cone generated by the outward facet normals of ``K``."""
    A, _ = K.hrep
    return cones.canonical(PolyhedralCone(K.dim, A))


def contains_many(K: VBody, X: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Vectorized membership through the halfspace form."""
    A, b = K.hrep
    if A.shape[0] == 0:
        return np.ones(X.shape[0], dtype=bool)
    return np.all(X @ A.T - b <= tol * np.maximum(1.0, np.abs(b)), axis=1)


def same_body(K0: VBody, K1: VBody, tol: float = 1e-8) -> bool:
    """Equality by mutual generator membership."""
    _check_dims(K0, K1)

    def inside(A: VBody, B: VBody) -> bool:
        rcB = recession_cone(B)
        return (all(contains_point(B, p, tol) for p in A.points)
                and all(cones.contains(rcB, g, tol) for g in recession_cone(A).generators()))

    return inside(K0, K1) and inside(K1, K0)
