"""Deformations of unbounded convex bodies toward model shapes.

* apex translation moves a body so that its apex passes through ``o``;
* the hyperboloid flow adds ``H^t_u`` (``u`` the central direction) and ends at a half-space;
* the paraboloid flow squeezes a line-free body onto its central axis while adding ``t P_u``;
* the cylinder flow interpolates the compact cross-section toward the unit ball.

Smooth model bodies are replaced by polyhedral discretizations controlled by
:class:`ModelBodyConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Delaunay, QhullError

from . import bodies as bd
from . import geometry as geo
from . import metrics as mt
from .bodies import VBody
from .cones import LinearSubspace
from .errors import ApexNotAtOrigin, NotCylinder, NotInKPlus, NotIrreducible, PreconditionError


@dataclass(frozen=True)
class ModelBodyConfig:
    """Discretization of the smooth model bodies.

    ``resolution`` is the sample count per angular ring (and per radial
    profile); ``radial_extent`` bounds the horizontal reach of the samples.
    """

    resolution: int = 64
    radial_extent: float = 1e3

    def __post_init__(self):
        if self.resolution < 8 or self.resolution % 2:
            raise ValueError("resolution must be an even integer >= 8")
        if not self.radial_extent > 0:
            raise ValueError("radial_extent must be positive")


@dataclass(frozen=True)
class Apex:
    """The affine set ``point + subspace`` and its closest point ``p`` to ``o``."""

    point: np.ndarray
    subspace: LinearSubspace
    p: np.ndarray


@dataclass
class FlowTrace:
    times: list = field(default_factory=list)
    tau: list = field(default_factory=list)
    nc_radius: list = field(default_factory=list)
    step_da: list = field(default_factory=list)
    bodies: list | None = None

    def rows(self):
        return list(zip(self.times, self.tau, self.nc_radius, self.step_da))


# --- apex -------------------------------------------------------------------------------


def solid_centroid(Q: np.ndarray) -> np.ndarray:
    """Centroid of the solid polytope ``conv(Q)`` inside its affine hull."""
    c = Q.mean(axis=0)
    B = geo.orthonormal_basis(Q - c, Q.shape[1])
    k = B.shape[0]
    if k == 0:
        return c
    Y = (Q - c) @ B.T
    if k == 1:
        return c + 0.5 * (Y.min() + Y.max()) * B[0]
    try:
        tri = Delaunay(Y)
    except QhullError:
        return c
    simp = Y[tri.simplices]  # (s, k+1, k)
    vol = np.abs(np.linalg.det(simp[:, 1:, :] - simp[:, :1, :])) / math.factorial(k)
    cen = simp.mean(axis=1)
    return c + (vol @ cen / vol.sum()) @ B


def apex(K: VBody) -> Apex:
    """Centroid of the compact part of the face opposite the central direction, plus its lines."""
    u = bd.central_direction(K)
    F = bd.face(K, -u, tol=1e-7).body
    olF, L = bd.motzkin_decompose(F)
    cm = solid_centroid(olF.points)
    p = L.project_perp(cm)
    return Apex(cm, L, p)


def apex_translation_flow(K: VBody, t: float) -> VBody:
    """``K - t p`` with ``p`` the point of the apex closest to ``o``."""
    return K.translate(-t * apex(K).p)


# --- model bodies -----------------------------------------------------------------------


def _profile_radii(cfg: ModelBodyConfig) -> np.ndarray:
    count = cfg.resolution // 2
    start = min(0.05, cfg.radial_extent / 2)
    return np.concatenate([[0.0], np.geomspace(start, cfg.radial_extent, count - 1)])


def _horizontal_directions(n: int, cfg: ModelBodyConfig) -> np.ndarray:
    """Unit directions in R^{n-1} (the complement of the axis)."""
    if n == 2:
        return np.array([[1.0], [-1.0]])
    return mt.sphere_directions(n - 1, cfg.resolution)


def _frame(u) -> np.ndarray:
    """Rows: an orthonormal basis of u-perp followed by u."""
    return geo.rotation_to(u).T


def halfspace_body(u) -> VBody:
    """``{<x, u> >= 0}``: inward normal ``u``."""
    u = geo.normalize(u)
    Q = _frame(u)
    return VBody(u.shape[0], np.zeros((1, u.shape[0])), u[None, :], Q[:-1], assume_solid=True)


def hyperboloid_height(y, t: float) -> np.ndarray:
    """Height of the hyperboloid boundary above horizontal coordinates ``y``."""
    y = np.asarray(y, dtype=float)
    return (np.sqrt(1.0 + np.sum(y * y, axis=-1)) - 1.0) * (1.0 - t) / t


def hyperboloid_body(t: float, u, cfg: ModelBodyConfig | None = None) -> VBody:
    """Polyhedral ``H^t_u``: half-line at ``t=0``, half-space at ``t=1``.

    In between, boundary samples plus a ring of recession rays on the
    asymptotic cone (half-angle ``arctan(t / (1 - t))`` about ``u``).
    """
    cfg = cfg or ModelBodyConfig()
    u = geo.normalize(u)
    n = u.shape[0]
    if t <= 0.0:
        return VBody(n, np.zeros((1, n)), u[None, :])
    if t >= 1.0:
        return halfspace_body(u)
    Q = _frame(u)
    W = _horizontal_directions(n, cfg)
    Y = (_profile_radii(cfg)[:, None, None] * W[None, :, :]).reshape(-1, n - 1)
    local = np.column_stack([Y, hyperboloid_height(Y, t)])
    phi = math.atan2(t, 1.0 - t)
    rays_local = np.column_stack([math.sin(phi) * W, np.full(W.shape[0], math.cos(phi))])
    return VBody(n, local @ Q, rays_local @ Q, assume_solid=True)


def paraboloid_body(u, cfg: ModelBodyConfig | None = None) -> VBody:
    """Polyhedral ``{x_u >= |x_perp|^2}`` rotated so its axis is ``u``."""
    cfg = cfg or ModelBodyConfig()
    u = geo.normalize(u)
    n = u.shape[0]
    Q = _frame(u)
    W = _horizontal_directions(n, cfg)
    Y = (_profile_radii(cfg)[:, None, None] * W[None, :, :]).reshape(-1, n - 1)
    local = np.column_stack([Y, np.sum(Y * Y, axis=1)])
    return VBody(n, local @ Q, u[None, :], assume_solid=True)


def ball_body(L: LinearSubspace, cfg: ModelBodyConfig | None = None) -> VBody:
    """Inscribed polytope of the unit ball of the complement of ``L`` (lines not included)."""
    cfg = cfg or ModelBodyConfig()
    comp = L.complement().basis
    k = comp.shape[0]
    if k == 0:
        return VBody(L.dim, np.zeros((1, L.dim)))
    if k == 1:
        W = np.array([[1.0], [-1.0]])
    elif k == 2:
        ang = 2.0 * np.pi * np.arange(cfg.resolution) / cfg.resolution
        W = np.column_stack([np.cos(ang), np.sin(ang)])
    else:
        W = mt.sphere_directions(k, cfg.resolution * cfg.resolution // 4)
    return VBody(L.dim, W @ comp)


# --- flows ------------------------------------------------------------------------------


def _require_irreducible(K: VBody):
    if bd.classify(K).tag != "Irreducible":
        raise NotIrreducible("the flow needs an irreducible body (recession cone relatively proper)")


def theorem1_flow(K: VBody, t: float, cfg: ModelBodyConfig | None = None, u=None) -> VBody:
    """``K + H^t_u`` with ``u`` the central direction of ``K``."""
    _require_irreducible(K)
    u = bd.central_direction(K) if u is None else geo.normalize(u)
    return bd.minkowski_sum(K, hyperboloid_body(t, u, cfg))


def squeeze(x, t: float, u) -> np.ndarray:
    """``(1 - t) S_{1/(1-t), u}(x)`` written as ``(1 - t) x + t <x, u> u`` (valid at ``t = 1``)."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    return (1.0 - t) * x + t * np.multiply.outer(x @ u, u)


def _require_k_plus_based(K: VBody, tol: float = 1e-7) -> np.ndarray:
    if not bd.is_K_plus(K):
        raise NotInKPlus("body contains a line or is bounded; the paraboloid flow needs a line-free unbounded body")
    _require_irreducible(K)
    A = apex(K)
    if np.linalg.norm(A.p) > tol * K.scale:
        raise ApexNotAtOrigin(f"apex is at {A.p.tolist()}, translate it to the origin first")
    return bd.central_direction(K)


def theorem2_flow(K: VBody, t: float, cfg: ModelBodyConfig | None = None, u=None) -> VBody:
    """``(1-t) S_{1/(1-t),u}(K) + t P_u`` for a line-free body with apex at ``o``."""
    u = _require_k_plus_based(K) if u is None else geo.normalize(u)
    P = paraboloid_body(u, cfg)
    if t <= 0.0:
        return K
    if t >= 1.0:
        return P
    image = VBody(K.dim, squeeze(K.points, t, u), squeeze(K.rays, t, u))
    return bd.minkowski_sum(image, P.scaled(t))


def theorem3_flow(K: VBody, t: float, cfg: ModelBodyConfig | None = None) -> VBody:
    """Cross-section ``(1-t) pi(K) + t B``, with the linearity space added back."""
    c = bd.classify(K)
    if c.tag != "Cylinder":
        raise NotCylinder("the cylinder flow needs a body whose recession cone is a linear subspace")
    olK, L = bd.motzkin_decompose(K)
    if t <= 0.0:
        return K
    ball = ball_body(L, cfg)
    section = bd.minkowski_sum(olK.scaled(1.0 - t), ball.scaled(t)) if t < 1.0 else ball
    return VBody(K.dim, section.points, None, L.basis, assume_solid=K.assume_solid)


FLOWS = {1: theorem1_flow, 2: theorem2_flow, 3: theorem3_flow}


def run_trace(K: VBody, which: int, steps: int, cfg: ModelBodyConfig | None = None,
              metrics_cfg: mt.MetricsConfig | None = None, step_distance: bool = True,
              keep_bodies: bool = False) -> FlowTrace:
    """Sample a flow on a uniform grid of ``steps + 1`` times.

    ``nc_radius`` is measured against the central direction of the input
    body and is NaN for the cylinder flow (no central direction).  With
    ``step_distance=False`` the asymptotic distances are skipped (NaN).
    """
    if which not in FLOWS:
        raise PreconditionError(f"unknown flow {which}; choose 1, 2 or 3")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    cfg = cfg or ModelBodyConfig()
    metrics_cfg = metrics_cfg or mt.COARSE
    if which == 2:
        u = _require_k_plus_based(K)
    elif which == 1:
        _require_irreducible(K)
        u = bd.central_direction(K)
    else:
        u = None
    trace = FlowTrace(bodies=[] if keep_bodies else None)
    prev = None
    for t in np.linspace(0.0, 1.0, steps + 1):
        Kt = FLOWS[which](K, float(t), cfg) if which == 3 else FLOWS[which](K, float(t), cfg, u=u)
        trace.times.append(float(t))
        trace.tau.append(bd.total_curvature(Kt))
        trace.nc_radius.append(mt.nc_hausdorff_radius(Kt, u) if u is not None else float("nan"))
        if prev is None:
            trace.step_da.append(0.0)
        elif step_distance:
            trace.step_da.append(mt.asymptotic_distance(prev, Kt, metrics_cfg))
        else:
            trace.step_da.append(float("nan"))
        prev = Kt
        if keep_bodies:
            trace.bodies.append(Kt)
    return trace
