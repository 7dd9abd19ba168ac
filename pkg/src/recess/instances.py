"""Random cones and bodies for property tests and experiments.

All generators take a ``numpy.random.Generator`` so callers control seeding.
"""

from __future__ import annotations

import numpy as np

from . import geometry as geo
from .bodies import VBody
from .cones import PolyhedralCone


def random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    return geo.normalize(rng.standard_normal(n))


def random_subspace_basis(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((0, n))
    q, _ = np.linalg.qr(rng.standard_normal((n, m)))
    return q.T


def pointed_rays(rng: np.random.Generator, n: int, k: int, spread: float = 1.2, axis=None) -> np.ndarray:
    """``k`` unit rays within an open cone around a random (or given) axis.

    Perturbations are orthogonal to the axis and bounded by ``spread``, so the
    rays stay inside a cone of half-angle ``arctan(spread) < pi/2``.
    """
    axis = random_unit(rng, n) if axis is None else geo.normalize(axis)
    g = rng.standard_normal((k, n))
    g = g - np.outer(g @ axis, axis)
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    g = g / np.maximum(norms, 1e-12) * rng.uniform(0.0, spread, (k, 1))
    r = axis + g
    return r / np.linalg.norm(r, axis=1, keepdims=True)


def random_cone(rng: np.random.Generator, n: int, max_rays: int = 6, line_prob: float = 0.2) -> PolyhedralCone:
    """A generic cone: up to ``max_rays`` rays, sometimes with a line."""
    k = int(rng.integers(1, max_rays + 1))
    lines = random_subspace_basis(rng, n, 1) if (n >= 2 and rng.random() < line_prob) else np.zeros((0, n))
    return PolyhedralCone(n, rng.standard_normal((k, n)), lines)


def random_pointed_cone(rng: np.random.Generator, n: int, max_rays: int = 6, full: bool = False) -> PolyhedralCone:
    lo = n if full else 1
    k = int(rng.integers(lo, max(lo, max_rays) + 1))
    return PolyhedralCone(n, pointed_rays(rng, n, k))


def random_points(rng: np.random.Generator, n: int, k: int | None = None, scale: float = 1.0) -> np.ndarray:
    k = int(rng.integers(n + 1, n + 5)) if k is None else k
    return scale * rng.standard_normal((k, n))


def random_irreducible(rng: np.random.Generator, n: int, max_rays: int = 4, line_prob: float = 0.0) -> VBody:
    """Solid body whose recession cone is relatively proper.

    With probability ``line_prob`` (and ``n >= 3``) the cone also carries a line.
    """
    pts = random_points(rng, n)
    if n >= 3 and rng.random() < line_prob:
        line = random_subspace_basis(rng, n, 1)
        comp = geo.complement_basis(line, n)
        k = int(rng.integers(1, max_rays + 1))
        rays = pointed_rays(rng, n - 1, k) @ comp
        return VBody(n, pts, rays, line, assume_solid=True)
    k = int(rng.integers(1, max_rays + 1))
    return VBody(n, pts, pointed_rays(rng, n, k), assume_solid=True)


def random_k_plus(rng: np.random.Generator, n: int, max_rays: int = 4, based: bool = True) -> VBody:
    """Line-free unbounded solid body, translated so its apex is ``o`` when ``based``."""
    from .flows import apex_translation_flow

    k = int(rng.integers(1, max_rays + 1))
    K = VBody(n, random_points(rng, n), pointed_rays(rng, n, k), assume_solid=True)
    return apex_translation_flow(K, 1.0) if based else K


def random_cylinder(rng: np.random.Generator, n: int, m: int | None = None) -> VBody:
    """Compact cross-section plus a random ``m``-dimensional linearity space."""
    m = int(rng.integers(1, n)) if m is None else m
    L = random_subspace_basis(rng, n, m)
    comp = geo.complement_basis(L, n)
    k = n - m
    pts = rng.standard_normal((k + 1 + int(rng.integers(0, 4)), k)) @ comp
    return VBody(n, pts + rng.standard_normal(n), None, L, assume_solid=True)


def random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def parabola_body(t: float, half_width: float = 1e5, count: int = 60) -> VBody:
    """Inscribed polygon of ``{y >= t x^2}`` with geometric abscissae up to ``half_width``, plus the ray ``e2``."""
    xs = np.geomspace(1e-2, half_width, count)
    xs = np.concatenate([-xs[::-1], [0.0], xs])
    return VBody(2, np.column_stack([xs, t * xs**2]), [[0.0, 1.0]], assume_solid=True)
