"""Incremental double description for polyhedral cones.

Converts ``{x : A x <= 0}`` into generator form ``cone(rays) + span(lines)``.
Constraints are inserted one at a time; while the current cone still has
lines, a constraint that is not orthogonal to them consumes one line (which
becomes a ray).  Otherwise rays are split by sign and every adjacent
positive/negative pair contributes one new ray on the constraint hyperplane.
Adjacency uses the algebraic rank test on the constraints tight at both rays.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

from .errors import Degenerate, DimensionCap
from .geometry import TOL_GEOM, TOL_ZERO

DEFAULT_CAP = 6


def _unit_rows(m: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1)
    keep = norms > TOL_ZERO
    return m[keep] / norms[keep, None]


def dedup_rows(rows: np.ndarray, tol: float = TOL_GEOM) -> np.ndarray:
    """Drop rows that repeat an earlier kept row within ``tol`` (max-norm)."""
    if rows.shape[0] <= 1:
        return rows
    pairs = cKDTree(rows).query_pairs(tol, p=np.inf, output_type="ndarray")
    if pairs.shape[0] == 0:
        return rows
    dropped = np.zeros(rows.shape[0], dtype=bool)
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    for i, j in pairs:
        if not dropped[i]:
            dropped[j] = True
    return rows[~dropped]


def _orthonormalize(lines: np.ndarray, tol: float) -> np.ndarray:
    if lines.shape[0] == 0:
        return lines
    u, s, vt = np.linalg.svd(lines, full_matrices=False)
    return vt[s > tol]


def double_description(A, dim: int, cap: int = DEFAULT_CAP, tol: float = TOL_GEOM):
    """Generators of the cone ``{x in R^dim : A x <= 0}``.

    Returns ``(rays, lines)``: unit rays (extreme modulo the lines) and an
    orthonormal basis of the lineality space.  An empty ``A`` gives the whole
    space.
    """
    if dim > cap:
        raise DimensionCap(f"double description capped at dimension {cap}, got {dim}")
    A = np.asarray(A, dtype=float).reshape(-1, dim) if np.size(A) else np.zeros((0, dim))
    if A.shape[0] and np.all(np.linalg.norm(A, axis=1) <= TOL_ZERO):
        raise Degenerate("all constraint normals are zero")
    A = _unit_rows(A)

    lines = np.eye(dim)
    rays = np.zeros((0, dim))
    done = np.zeros((0, dim))

    for a in A:
        if lines.shape[0]:
            s = lines @ a
            j = int(np.argmax(np.abs(s)))
            if abs(s[j]) > tol:
                l, sj = lines[j], s[j]
                others = np.delete(lines, j, axis=0)
                others = others - np.outer(np.delete(s, j) / sj, l)
                if rays.shape[0]:
                    rays = rays - np.outer((rays @ a) / sj, l)
                rays = _unit_rows(np.vstack([rays, -np.sign(sj) * l]))
                lines = _orthonormalize(others, tol)
                done = np.vstack([done, a])
                continue

        v = rays @ a
        pos = np.flatnonzero(v > tol)
        neg = np.flatnonzero(v < -tol)
        if pos.size == 0:
            done = np.vstack([done, a])
            continue
        keep = rays[v <= tol]
        new = []
        if neg.size:
            d = dim - lines.shape[0]
            tight = np.abs(rays @ done.T) <= tol if done.shape[0] else np.zeros((rays.shape[0], 0), bool)
            for p in pos:
                for q in neg:
                    if _adjacent(tight, done, p, q, d, tol):
                        w = v[p] * rays[q] - v[q] * rays[p]
                        nw = np.linalg.norm(w)
                        if nw > TOL_ZERO:
                            new.append(w / nw)
        rays = np.vstack([keep, *new]) if new else keep
        done = np.vstack([done, a])

    if rays.shape[0] and lines.shape[0]:
        rays = rays - (rays @ lines.T) @ lines
    rays = dedup_rows(_unit_rows(rays), tol=1e3 * tol)
    return rays, lines


def _adjacent(tight: np.ndarray, done: np.ndarray, p: int, q: int, d: int, tol: float) -> bool:
    if d <= 2:
        # in a pointed quotient of dimension <= 2 every pair of extreme rays is adjacent
        return True
    common = tight[p] & tight[q]
    if int(common.sum()) < d - 2:
        return False
    sub = done[common]
    sv = np.linalg.svd(sub, compute_uv=False)
    r = int(np.sum(sv > 1e2 * tol))
    return r == d - 2
