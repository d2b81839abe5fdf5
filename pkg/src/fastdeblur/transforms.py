"""Boundary-corrected transforms with an O(n log n) inverse.

Each basis is an ``n x n`` matrix ``T`` whose interior block (rows and columns
``1..n-2``, zero based) is a trigonometric matrix ``M = X^{-1}``, bordered by

* first column ``q`` and last column ``J q`` (``J`` reverses a vector),
* first row ``c_a`` and last row ``c_b`` on the interior columns.

``q`` has unit 2-norm and a zero last entry, so the corners read ``q[0]`` and
the off-corners are zero. Dropping the two boundary rows leaves a matrix that
is inverted in closed form with one transform ``X``; the rows are restored as
a rank-two Sherman-Morrison-Woodbury correction whose 2x2 capacitance matrix
is factored once at build time.

=================  ==========  ==========================  ===================
basis              interior    grid ``x_i``, i=0..n-1      ``q`` before scaling
=================  ==========  ==========================  ===================
antireflective     DST-I ``Q``  ``i pi/(n-1)``              ``1 - i/(n-1)``
hoc-cosine         ``C^T``      ``(2i-1) pi/(2n-4)``        ``(b - x_i)^2``
hoc-fourier        ``F^H``      ``(i-1) 2 pi/(n-2)``        ``(b - x_i)^2``
=================  ==========  ==========================  ===================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DegenerateTransformError, DimensionError, SizeError
from .trig import cosine_apply, fourier_apply, sine_apply

__all__ = [
    "BoundaryBasis",
    "StructuredTransform",
    "CAPACITANCE_COND_LIMIT",
    "build_transform",
    "extended_grid",
    "transform_apply",
    "transform_apply_inverse",
    "factor_capacitance",
]

CAPACITANCE_COND_LIMIT = 1e12
MIN_ORDER = 5


class BoundaryBasis(str, Enum):
    ANTIREFLECTIVE = "antireflective"
    HOC_COSINE = "hoc-cosine"
    HOC_FOURIER = "hoc-fourier"


def _check_order(n):
    if int(n) != n or n < MIN_ORDER:
        raise SizeError(f"boundary-corrected transforms need n >= {MIN_ORDER}, got {n}")
    return int(n)


def extended_grid(basis, n):
    """Return ``((a, b), x)``: the sampling interval and the ``n`` grid points.

    Examples
    --------
    >>> (a, b), x = extended_grid("hoc-fourier", 6)
    >>> round(a / np.pi, 12), round(b / np.pi, 12)
    (-0.5, 2.0)
    """
    basis = BoundaryBasis(basis)
    n = _check_order(n)
    i = np.arange(n)
    if basis is BoundaryBasis.ANTIREFLECTIVE:
        return (0.0, np.pi), i * np.pi / (n - 1)
    if basis is BoundaryBasis.HOC_COSINE:
        h = np.pi / (2 * n - 4)
        return (-h, (2 * n - 3) * h), (2 * i - 1) * h
    h = 2 * np.pi / (n - 2)
    return (-h, 2 * np.pi), (i - 1) * h


def factor_capacitance(k):
    """Invert the 2x2 capacitance matrix, refusing ill-conditioned ones."""
    k = np.asarray(k)
    if not np.all(np.isfinite(k)):
        raise DegenerateTransformError("capacitance matrix is not finite")
    cond = np.linalg.cond(k)
    if not np.isfinite(cond) or cond > CAPACITANCE_COND_LIMIT:
        raise DegenerateTransformError(
            f"capacitance matrix is singular or ill-conditioned (cond={cond:.3g})")
    return np.linalg.inv(k)


@dataclass(frozen=True, eq=False)
class StructuredTransform:
    """Precomputed data for applying ``T`` and ``T^{-1}``.

    Attributes
    ----------
    q : ndarray
        First column (unit 2-norm, zero last entry).
    c_a, c_b : ndarray
        Boundary rows restricted to the interior columns, length ``n - 2``.
    alpha : float
        ``1 / q[0]``.
    v, w : ndarray
        Interior parts of the decoupled inverse applied to the first and last
        canonical vectors: ``v = -X q_int / q[0]`` and ``w = -X J q_int / q[0]``.
    row_a, row_b : ndarray
        ``c_a^T X`` and ``c_b^T X``.
    k_inv : ndarray
        Inverse of the 2x2 capacitance matrix ``I + coupling``.
    coupling : ndarray
        ``[[c_a.v, c_a.w], [c_b.v, c_b.w]]``.
    """

    basis: BoundaryBasis
    n: int
    q: np.ndarray
    c_a: np.ndarray
    c_b: np.ndarray
    alpha: float
    v: np.ndarray
    w: np.ndarray
    row_a: np.ndarray
    row_b: np.ndarray
    k_inv: np.ndarray
    coupling: np.ndarray
    grid: np.ndarray
    interval: tuple = field(default=(0.0, np.pi))

    @property
    def dtype(self):
        return np.complex128 if self.basis is BoundaryBasis.HOC_FOURIER else np.float64

    def interior(self, x, axis=-1):
        """Apply the interior block ``M``."""
        return _interior(self.basis, x, axis)

    def interior_inverse(self, x, axis=-1):
        """Apply ``X = M^{-1}``."""
        return _interior_inverse(self.basis, x, axis)

    def apply(self, v, axis=-1):
        return transform_apply(self, v, axis=axis)

    def solve(self, y, axis=-1):
        return transform_apply_inverse(self, y, axis=axis)


def _interior(basis, x, axis=-1):
    if basis is BoundaryBasis.ANTIREFLECTIVE:
        return sine_apply(x, axis=axis)
    if basis is BoundaryBasis.HOC_COSINE:
        return cosine_apply(x, "inverse", axis=axis)
    return fourier_apply(x, "inverse", axis=axis)


def _interior_inverse(basis, x, axis=-1):
    if basis is BoundaryBasis.ANTIREFLECTIVE:
        return sine_apply(x, axis=axis)
    if basis is BoundaryBasis.HOC_COSINE:
        return cosine_apply(x, "forward", axis=axis)
    return fourier_apply(x, "forward", axis=axis)


def _boundary_data(basis, n, grid, interval):
    size = n - 2
    j = np.arange(size)
    a, b = interval
    if basis is BoundaryBasis.ANTIREFLECTIVE:
        p = 1.0 - np.arange(n) / (n - 1)
        zeros = np.zeros(size)
        return p / np.linalg.norm(p), zeros, zeros.copy()
    q = (b - grid) ** 2
    q[-1] = 0.0
    q /= np.linalg.norm(q)
    if basis is BoundaryBasis.HOC_COSINE:
        scale = np.where(j == 0, np.sqrt(1.0 / size), np.sqrt(2.0 / size))
        c_a = scale * np.cos(j * a)
        c_b = np.where(j % 2 == 0, c_a, -c_a)
        return q, c_a, c_b
    c_a = np.exp(1j * j * a) / np.sqrt(size)
    c_b = np.full(size, 1.0 / np.sqrt(size), dtype=complex)
    return q, c_a, c_b


@lru_cache(maxsize=64)
def build_transform(basis, n) -> StructuredTransform:
    """Build and cache the transform of the given basis and order.

    Costs three trigonometric transforms of length ``n - 2``.
    """
    basis = BoundaryBasis(basis)
    n = _check_order(n)
    interval, grid = extended_grid(basis, n)
    q, c_a, c_b = _boundary_data(basis, n, grid, interval)
    q_int = q[1:-1]
    alpha = 1.0 / q[0]
    both = _interior_inverse(basis, np.stack([q_int, q_int[::-1]]))
    v, w = -alpha * both[0], -alpha * both[1]
    # X^T c: Q and C^T are explicit, F is symmetric
    if basis is BoundaryBasis.ANTIREFLECTIVE:
        rows = sine_apply(np.stack([c_a, c_b]))
    elif basis is BoundaryBasis.HOC_COSINE:
        rows = cosine_apply(np.stack([c_a, c_b]), "inverse")
    else:
        rows = fourier_apply(np.stack([c_a, c_b]), "forward")
    coupling = np.array([[c_a @ v, c_a @ w], [c_b @ v, c_b @ w]])
    k_inv = factor_capacitance(np.eye(2) + coupling)

    row_a, row_b = rows[0].copy(), rows[1].copy()
    for arr in (q, c_a, c_b, v, w, row_a, row_b, k_inv, coupling, grid):
        arr.setflags(write=False)
    return StructuredTransform(basis, n, q, c_a, c_b, float(alpha), v, w,
                               row_a, row_b, k_inv, coupling, grid, interval)


def _as_last(t, x, axis):
    x = np.asarray(x)
    if x.ndim == 0:
        raise DimensionError("expected an array, got a scalar")
    if x.shape[axis] != t.n:
        raise DimensionError(f"transform has order {t.n}, got length {x.shape[axis]}")
    return np.moveaxis(x, axis, -1)


def transform_apply(t: StructuredTransform, v, axis=-1):
    """Return ``T v`` along ``axis``."""
    x = _as_last(t, v, axis)
    dtype = np.result_type(x, t.dtype, float)
    inner = x[..., 1:-1]
    y = np.empty(x.shape, dtype=dtype)
    y[..., 1:-1] = t.interior(inner)
    y[..., 1:-1] += x[..., :1] * t.q[1:-1] + x[..., -1:] * t.q[-2:0:-1]
    y[..., 0] = x[..., 0] * t.q[0] + inner @ t.c_a
    y[..., -1] = x[..., -1] * t.q[0] + inner @ t.c_b
    return np.moveaxis(y, -1, axis)


def transform_apply_inverse(t: StructuredTransform, y, axis=-1):
    """Return ``T^{-1} y`` along ``axis`` via the rank-two correction."""
    x = _as_last(t, y, axis)
    dtype = np.result_type(x, t.dtype, float)
    first, last = x[..., :1], x[..., -1:]
    inner = x[..., 1:-1]
    u = np.empty(x.shape, dtype=dtype)
    u[..., 1:-1] = t.interior_inverse(inner) + first * t.v + last * t.w
    u[..., :1] = t.alpha * first
    u[..., -1:] = t.alpha * last
    # boundary rows of T applied to u, via the cached c^T X
    first, last = first[..., 0], last[..., 0]
    r_a = inner @ t.row_a + first * t.coupling[0, 0] + last * t.coupling[0, 1]
    r_b = inner @ t.row_b + first * t.coupling[1, 0] + last * t.coupling[1, 1]
    s_a = t.k_inv[0, 0] * r_a + t.k_inv[0, 1] * r_b
    s_b = t.k_inv[1, 0] * r_a + t.k_inv[1, 1] * r_b
    s_a, s_b = s_a[..., None], s_b[..., None]
    u[..., 1:-1] -= s_a * t.v + s_b * t.w
    u[..., :1] -= s_a * t.alpha
    u[..., -1:] -= s_b * t.alpha
    return np.moveaxis(u, -1, axis)
