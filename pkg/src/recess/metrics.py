"""Distances between convex sets.

* :func:`point_to_body_distance` runs Wolfe's min-norm-point method on a
  truncation of the body, growing the truncation until the minimizer also
  satisfies the optimality conditions of the untruncated body.
* :func:`bounded_hausdorff` lifts both sets to S^n by inverse stereographic
  projection and compares sampled lifts in the chordal metric of R^{n+1}.
  Unbounded sets get the pole appended because their lifted closure contains it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from scipy.spatial import cKDTree

from . import bodies as bd
from . import cones
from . import geometry as geo
from .bodies import VBody
from .errors import NoConverge, Unsupported, UnboundedInput


@dataclass(frozen=True)
class MetricsConfig:
    """Sampling grid for the bounded-Hausdorff distance.

    ``grid_directions`` counts directions on S^{n-1} (per center) and
    ``radial_levels`` counts geometric radii between 1 and ``r_max``.
    """

    r_max: float = 1e3
    grid_directions: int = 720
    radial_levels: int = 48
    tol: float = 1e-9

    @classmethod
    def from_mapping(cls, mapping: dict) -> "MetricsConfig":
        """Build from flat ``metrics.*`` keys (unknown keys are ignored)."""
        names = {f.name for f in fields(cls)}
        kw = {}
        for key, value in mapping.items():
            name = key.split(".", 1)[1] if key.startswith("metrics.") else key
            if name in names:
                kw[name] = type(getattr(cls, name))(value)
        return cls(**kw)


COARSE = MetricsConfig(grid_directions=180, radial_levels=24)


# --- nearest point ----------------------------------------------------------------------


def _affine_minimizer(S: np.ndarray):
    """Minimum-norm point of the affine hull of the rows of ``S``: weights summing to 1."""
    k = S.shape[0]
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = S @ S.T
    M[:k, k] = 1.0
    M[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol = np.linalg.lstsq(M, rhs, rcond=None)[0]
    return sol[:k]


def _wolfe(P: np.ndarray, G: np.ndarray, R: float, max_iters: int, tol: float):
    """Min-norm point of ``conv(P) + R conv({o} ∪ G)`` (``P`` already shifted by ``-x``)."""
    def oracle(y):
        i = int(np.argmin(P @ y))
        v = P[i].copy()
        if G.shape[0]:
            gv = G @ y
            j = int(np.argmin(gv))
            if gv[j] < 0:
                v = v + R * G[j]
        return v

    scale2 = max(1.0, float(np.max(np.sum(P * P, axis=1))))
    S = P[[int(np.argmin(np.sum(P * P, axis=1)))]]
    lam = np.ones(1)
    for _ in range(max_iters):
        y = lam @ S
        v = oracle(y)
        if y @ y - y @ v <= tol * scale2 or np.min(np.sum((S - v) ** 2, axis=1)) <= 1e-24 * scale2:
            return y
        S = np.vstack([S, v])
        lam = np.append(lam, 0.0)
        while True:
            alpha = _affine_minimizer(S)
            if np.all(alpha > 1e-14):
                lam = alpha
                break
            neg = alpha <= 1e-14
            theta = np.min(lam[neg] / (lam[neg] - alpha[neg]))
            lam = theta * alpha + (1 - theta) * lam
            keep = lam > 1e-14
            S, lam = S[keep], lam[keep] / lam[keep].sum()
    raise NoConverge(f"min-norm-point iteration did not converge in {max_iters} iterations")


def nearest_point(K: VBody, x, max_iters: int = 10_000, tol: float = 1e-9) -> np.ndarray:
    """Euclidean projection of ``x`` onto ``K``."""
    x = geo.as_vector(x, K.dim)
    L = K.lines
    along = (x @ L.T) @ L if L.shape[0] else np.zeros(K.dim)
    xp = x - along
    P = geo.project_out(K.points, L) - xp
    G = K.rays
    R = max(1.0, 2.0 * (float(np.linalg.norm(xp)) + float(np.max(np.linalg.norm(P + xp, axis=1)))))
    slack = 1e-7 * max(1.0, float(np.max(np.abs(P))))
    for _ in range(60):
        y = _wolfe(P, G, R, max_iters, tol * 1e-3)
        d = -y  # from the nearest point toward x
        ok = np.all((P - y) @ d <= slack * (1 + np.linalg.norm(d)))
        if ok and G.shape[0]:
            ok = np.all(G @ d <= slack * (1 + np.linalg.norm(d)))
        if ok:
            return y + xp + along
        R *= 2.0
    raise NoConverge("truncation radius kept growing without reaching the optimality conditions")


def point_to_body_distance(x, K: VBody, max_iters: int = 10_000, tol: float = 1e-9) -> float:
    x = geo.as_vector(x, K.dim)
    return float(np.linalg.norm(nearest_point(K, x, max_iters, tol) - x))


def hausdorff_compact(A: VBody, B: VBody) -> float:
    """Hausdorff distance between bounded bodies (exact for polytopes)."""
    if not (bd.recession_cone(A).is_origin and bd.recession_cone(B).is_origin):
        raise UnboundedInput("compact Hausdorff distance needs bounded bodies")

    def directed(X: VBody, Y: VBody) -> float:
        return max(point_to_body_distance(p, Y) for p in X.points)

    return max(directed(A, B), directed(B, A))


# --- bounded Hausdorff ----------------------------------------------------------------


def sphere_directions(n: int, count: int) -> np.ndarray:
    """Deterministic, roughly uniform unit vectors in R^n."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        ang = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if n == 3:
        i = np.arange(count) + 0.5
        z = 1.0 - 2.0 * i / count
        phi = np.pi * (1.0 + math.sqrt(5.0)) * i
        r = np.sqrt(1.0 - z * z)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return cones.uniform_sphere(n, count, seed=12345)


def radial_grid(cfg: MetricsConfig) -> np.ndarray:
    inner = np.linspace(0.0, 1.0, 9)[:-1]
    return np.concatenate([inner, np.geomspace(1.0, cfg.r_max, cfg.radial_levels)])


@dataclass(frozen=True, eq=False)
class SampledSet:
    """Samples of a body within ``r_max`` of the origin, with their lifts to S^n."""

    samples: np.ndarray
    lifts: np.ndarray
    unbounded: bool
    source: VBody

    @property
    def max_norm(self) -> float:
        return float(np.max(np.linalg.norm(self.samples, axis=1)))


def _clip_lines(A, b, centers, D, r_max):
    """Entry and exit points of rays ``c + s d`` (0 <= s <= r_max) through ``{A x <= b}``."""
    out = []
    for c in centers:
        num = b - A @ c  # s <A d> <= num
        den = D @ A.T  # (m_dirs, m_facets)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = num[None, :] / den
        lo = np.where(den < -1e-15, ratio, -np.inf).max(axis=1, initial=-np.inf)
        hi = np.where(den > 1e-15, ratio, np.inf).min(axis=1, initial=np.inf)
        parallel_bad = np.any((np.abs(den) <= 1e-15) & (num[None, :] < -1e-12), axis=1)
        lo = np.maximum(lo, 0.0)
        hi = np.minimum(hi, r_max)
        ok = (lo <= hi) & ~parallel_bad
        out.append(c + lo[ok, None] * D[ok])
        out.append(c + hi[ok, None] * D[ok])
    return np.vstack(out) if out else np.zeros((0, A.shape[1]))


def sample_body(K: VBody, cfg: MetricsConfig) -> SampledSet:
    n = K.dim
    D = sphere_directions(n, cfg.grid_directions)
    radii = radial_grid(cfg)
    grid = (radii[:, None, None] * D[None, :, :]).reshape(-1, n)
    parts = [grid[bd.contains_many(K, grid)]]
    A, b = K.hrep
    centers = [np.zeros(n), K.points.mean(axis=0)]
    parts.append(_clip_lines(A, b, centers, D, cfg.r_max) if A.shape[0] else np.zeros((0, n)))
    parts.append(K.points)
    gens = bd.recession_cone(K).generators()
    if gens.shape[0]:
        skel = K.points[:, None, None, :] + radii[None, None, :, None] * gens[None, :, None, :]
        parts.append(skel.reshape(-1, n))
    S = np.vstack(parts)
    S = S[np.linalg.norm(S, axis=1) <= cfg.r_max * (1 + 1e-9)]
    if S.shape[0] == 0:
        S = K.points
    unbounded = not bd.recession_cone(K).is_origin
    return SampledSet(S, geo.stereo_inverse(S), unbounded, K)


def _directed(SA: SampledSet, SB: SampledSet, cfg: MetricsConfig) -> float:
    """Largest chordal distance from the lifted samples of A to the lifted closure of B."""
    B = SB.source
    X = SA.samples
    inside = bd.contains_many(B, X, tol=1e-9)
    X = X[~inside]
    best = 0.0
    if X.shape[0]:
        tree = cKDTree(SB.lifts)
        d, _ = tree.query(geo.stereo_inverse(X))
        if SB.unbounded:
            d = np.minimum(d, geo.chordal_to_pole(X))
        A, b = B.hrep
        if A.shape[0]:
            viol = X @ A.T - b  # positive for violated facets
            order = np.argsort(-viol, axis=1)[:, : min(4, A.shape[0])]
            for k in range(order.shape[1]):
                f = order[:, k]
                proj = X - (viol[np.arange(X.shape[0]), f])[:, None] * A[f]
                ok = bd.contains_many(B, proj, tol=1e-7)
                if np.any(ok):
                    d[ok] = np.minimum(d[ok], geo.chordal_distance(X[ok], proj[ok]))
        best = float(np.max(d))
    if SA.unbounded and not SB.unbounded:
        best = max(best, float(geo.chordal_to_pole(SB.max_norm)))
    return best


def bounded_hausdorff(A: VBody, B: VBody, cfg: MetricsConfig | None = None) -> float:
    """Sampled Hausdorff distance between the stereographic lifts of ``A`` and ``B``."""
    cfg = cfg or MetricsConfig()
    bd._check_dims(A, B)
    SA, SB = sample_body(A, cfg), sample_body(B, cfg)
    return max(_directed(SA, SB, cfg), _directed(SB, SA, cfg))


def cone_body(K: VBody) -> VBody:
    """The recession cone of ``K`` as a body with apex ``o``."""
    return VBody.from_cone(bd.recession_cone(K))


def distance_report(K0: VBody, K1: VBody, cfg: MetricsConfig | None = None) -> dict:
    d_bh = bounded_hausdorff(K0, K1, cfg)
    d_rc = bounded_hausdorff(cone_body(K0), cone_body(K1), cfg)
    return {"d_bh": d_bh, "d_rc": d_rc, "d_a": d_bh + d_rc}


def asymptotic_distance(K0: VBody, K1: VBody, cfg: MetricsConfig | None = None) -> float:
    """Bounded-Hausdorff distance of the bodies plus that of their recession cones."""
    return distance_report(K0, K1, cfg)["d_a"]


def nc_hausdorff_radius(K: VBody, u) -> float:
    """Largest geodesic distance from ``-u`` to the unit normals of ``K``.

    With ``C`` the closed normal cone and ``p = -u``: when ``u`` has a nonzero
    projection onto ``C`` the farthest unit normal is that projection's
    direction; otherwise every unit normal makes an obtuse angle with ``u``
    and the worst generator decides (lines sit at a right angle).
    """
    u = geo.normalize(u)
    C = bd.normal_cone_closure(K)
    p = -u
    if not cones.contains(C, p, 1e-8):
        raise Unsupported("-u is not an outward normal of the body")
    proj = cones.cone_projection(C, u)
    norm = float(np.linalg.norm(proj))
    if norm > 1e-9:
        return math.acos(max(-1.0, -norm))
    angles = [math.acos(min(1.0, max(-1.0, float(g @ p)))) for g in C.rays]
    if C.lines.shape[0]:
        angles.append(math.pi / 2)
    return max(angles, default=0.0)

