"""Dense vector primitives shared by every other module.

Tolerance ladder (all absolute, for unit-scale data):

* ``TOL_ZERO`` (1e-12): a vector this short is treated as zero.
* ``TOL_GEOM`` (1e-9): incidence and membership decisions.  The
  ``RECESS_TOL`` environment variable overrides it at import time.
* Monte-Carlo tolerances are passed explicitly where they are used.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.optimize import lsq_linear, nnls

from .errors import DimMismatch, NonFinite, ZeroVector

TOL_ZERO = 1e-12
TOL_GEOM = float(os.environ.get("RECESS_TOL", "1e-9"))


def as_vector(x, dim: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"non-finite coordinates: {v}")
    if dim is not None and v.shape[0] != dim:
        raise DimMismatch(f"expected a vector of dimension {dim}, got {v.shape[0]}")
    return v


def as_matrix(rows, dim: int) -> np.ndarray:
    """Stack ``rows`` into a ``(k, dim)`` float array (``k`` may be 0)."""
    if rows is None:
        return np.zeros((0, dim))
    m = np.asarray(rows, dtype=float)
    if m.size == 0:
        return np.zeros((0, dim))
    m = np.atleast_2d(m)
    if m.shape[1] != dim:
        raise DimMismatch(f"expected rows of length {dim}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("non-finite coordinates in generator list")
    return m


def normalize(v, tol: float = TOL_ZERO) -> np.ndarray:
    """Return ``v / |v|``; raise :class:`ZeroVector` when ``|v| <= tol``."""
    v = as_vector(v)
    norm = float(np.linalg.norm(v))
    if norm <= tol:
        raise ZeroVector(f"cannot normalize vector of norm {norm:g}")
    return v / norm


def stretch(x, lam: float, u) -> np.ndarray:
    """Stretch ``x`` by the factor ``lam`` along the unit direction ``u``."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    return x + (lam - 1.0) * np.multiply.outer(x @ u, u)


def reflect(x, u) -> np.ndarray:
    """Mirror ``x`` across the hyperplane through ``o`` orthogonal to unit ``u``."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    return x - 2.0 * np.multiply.outer(x @ u, u)


def stereo_inverse(x) -> np.ndarray:
    """Lift points of R^n to S^n (stereographic projection from the pole e_{n+1}).

    Accepts a single vector or an ``(m, n)`` array of row vectors.
    """
    x = np.asarray(x, dtype=float)
    sq = np.sum(x * x, axis=-1, keepdims=True)
    return np.concatenate([2.0 * x, sq - 1.0], axis=-1) / (sq + 1.0)


def stereo(z) -> np.ndarray:
    """Stereographic projection S^n minus the pole -> R^n."""
    z = np.asarray(z, dtype=float)
    return z[..., :-1] / (1.0 - z[..., -1:])


def pole(n: int) -> np.ndarray:
    """The projection pole of S^n, as a point of R^{n+1}."""
    p = np.zeros(n + 1)
    p[-1] = 1.0
    return p


def chordal_distance(a, b) -> np.ndarray:
    """Chordal distance between the lifts of ``a`` and ``b`` on S^n.

    Uses ``2|a-b| / sqrt((1+|a|^2)(1+|b|^2))`` which avoids forming the lifts
    and stays accurate for nearby far-away points.  Broadcasts over rows.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    diff = np.linalg.norm(a - b, axis=-1)
    return 2.0 * diff / np.sqrt((1.0 + np.sum(a * a, axis=-1)) * (1.0 + np.sum(b * b, axis=-1)))


def chordal_to_pole(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return 2.0 / np.sqrt(1.0 + np.sum(a * a, axis=-1))


def product_min_eigenvalue(A, B) -> float:
    """Smallest real part among the eigenvalues of ``A @ B``.

    Imaginary parts are discarded as roundoff; when ``A`` is
    positive definite the spectrum of ``AB`` is real (it is similar to the
    symmetric ``A^{1/2} B A^{1/2}``).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise NonFinite("matrices must have finite entries")
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimMismatch(f"need two square matrices of equal size, got {A.shape} and {B.shape}")
    eig = np.linalg.eigvals(A @ B)
    return float(np.min(eig.real))


def nonneg_lstsq(A, b, tol: float = 1e-10):
    """``argmin ||A x - b||`` over ``x >= 0``, returning ``(x, residual_norm)``.

    The fast active-set ``nnls`` is tried first and its answer is accepted
    only if it passes the optimality (KKT) conditions; some SciPy releases
    return non-optimal points and a wrong residual on small dense problems.
    Otherwise the bounded-variable solver is used.  The residual is always
    recomputed from ``x``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    x, _ = nnls(A, b)
    r = A @ x - b
    g = A.T @ r
    scale = tol * max(1.0, float(np.linalg.norm(b))) * max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.all(g >= -scale) and np.all(np.abs(g[x > 0]) <= scale):
        return x, float(np.linalg.norm(r))
    x = lsq_linear(A, b, bounds=(0.0, np.inf), method="bvls").x
    return x, float(np.linalg.norm(A @ x - b))


def orthonormal_basis(vectors, dim: int, tol: float = TOL_GEOM) -> np.ndarray:
    """Orthonormal rows spanning the row span of ``vectors``."""
    m = as_matrix(vectors, dim)
    if m.shape[0] == 0:
        return np.zeros((0, dim))
    if m.shape[0] <= dim and np.allclose(m @ m.T, np.eye(m.shape[0]), rtol=0.0, atol=1e-12):
        # already orthonormal: keep the rows so canonicalization is idempotent
        return _fix_signs(m.copy())
    scale = max(1.0, float(np.max(np.abs(m))))
    basis = scipy.linalg.orth(m.T, rcond=tol / scale)
    if basis.size == 0:
        return np.zeros((0, dim))
    return _fix_signs(basis.T)


def complement_basis(basis, dim: int) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of ``basis``."""
    basis = as_matrix(basis, dim)
    if basis.shape[0] == 0:
        return np.eye(dim)
    comp = scipy.linalg.null_space(basis)
    return _fix_signs(comp.T)


def _fix_signs(rows: np.ndarray) -> np.ndarray:
    # deterministic orientation: first sizeable coordinate positive
    out = rows.copy()
    for i, r in enumerate(out):
        j = int(np.argmax(np.abs(r) > 1e-8))
        if r[j] < 0:
            out[i] = -r
    return out


def project_out(x, basis) -> np.ndarray:
    """Remove the components of ``x`` (vector or rows) along orthonormal ``basis``."""
    x = np.asarray(x, dtype=float)
    basis = np.asarray(basis, dtype=float)
    if basis.size == 0:
        return x.copy()
    return x - (x @ basis.T) @ basis


def rank(vectors, dim: int, tol: float = TOL_GEOM) -> int:
    m = as_matrix(vectors, dim)
    if m.shape[0] == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def sphere_area(n: int) -> float:
    """Hausdorff measure of the unit sphere S^{n-1} in R^n (counting measure for n=1)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def rotation_to(u) -> np.ndarray:
    """An orthogonal matrix ``Q`` with ``Q @ e_n = u``; columns 0..n-2 span u-perp."""
    u = normalize(u)
    n = u.shape[0]
    perp = complement_basis(u[None, :], n)
    Q = np.column_stack([*perp, u]) if n > 1 else u.reshape(1, 1)
    return Q


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``<x, normal> = offset`` with a unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", normalize(self.normal))

    def contains(self, x, tol: float = TOL_GEOM) -> bool:
        return abs(float(np.dot(as_vector(x), self.normal)) - self.offset) <= tol

    def signed_distance(self, x) -> float:
        return float(np.dot(as_vector(x), self.normal)) - self.offset
