"""SVG snapshots of planar bodies.

A frame shows the body clipped to a square window, the fan of its recession
directions drawn from the first vertex, and the central direction as an
arrow from the origin.
"""

from __future__ import annotations

import itertools

import numpy as np

from .bodies import VBody

SIZE = 400


def window_for(K: VBody, margin: float = 0.2) -> float:
    """Half-width of a square window fitting the points with a relative margin."""
    return (1.0 + margin) * max(1.0, float(np.max(np.abs(K.points))))


def clipped_polygon(K: VBody, W: float) -> np.ndarray:
    """Vertices (counter-clockwise) of ``K ∩ [-W, W]^2``."""
    A, b = K.hrep
    box = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    A = np.vstack([A, box])
    b = np.concatenate([b, np.full(4, W)])
    verts = []
    for i, j in itertools.combinations(range(A.shape[0]), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[[i, j]])
        if np.all(A @ x <= b + 1e-9 * max(1.0, W)):
            verts.append(x)
    if not verts:
        return np.zeros((0, 2))
    V = np.unique(np.round(np.array(verts), 12), axis=0)
    c = V.mean(axis=0)
    return V[np.argsort(np.arctan2(V[:, 1] - c[1], V[:, 0] - c[0]))]


def render_frame(K: VBody, cd=None, W: float | None = None, title: str = "") -> str:
    if K.dim != 2:
        raise ValueError("SVG frames are drawn for planar bodies only")
    W = window_for(K) if W is None else W
    s = SIZE / (2.0 * W)

    def xy(p):
        return (p[0] + W) * s, (W - p[1]) * s

    def segment(a, b, style):
        (x1, y1), (x2, y2) = xy(a), xy(b)
        return f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" {style}/>'

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if title:
        out.append(f"<title>{title}</title>")
    poly = clipped_polygon(K, W)
    if poly.shape[0] >= 3:
        pts = " ".join("{:.3f},{:.3f}".format(*xy(p)) for p in poly)
        out.append(f'<polygon points="{pts}" fill="#9ecae1" stroke="#08519c"/>')
    elif poly.shape[0] == 2:
        out.append(segment(poly[0], poly[1], 'stroke="#08519c"'))
    base = K.points[0]
    for g in np.vstack([K.rays, K.lines, -K.lines]):
        out.append(segment(base, base + 2 * W * g, 'stroke="#fd8d3c" stroke-dasharray="4 3"'))
    if cd is not None:
        tip = 0.5 * W * np.asarray(cd, dtype=float)
        out.append(segment(np.zeros(2), tip, 'stroke="#d62728" stroke-width="2"'))
        out.append('<circle cx="{:.3f}" cy="{:.3f}" r="3" fill="#d62728"/>'.format(*xy(tip)))
    out.append("</svg>")
    return "\n".join(out) + "\n"
