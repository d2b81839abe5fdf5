"""Two-dimensional operators built from tensor products of 1D transforms.

The basis is ``T = T_rows (x) T_cols``: apply the 1D transform down every
column, then along every row. The eigenvalue matrix is assembled in three
pieces:

* interior entries sample the 2D symbol ``z(x, y)`` on the two node grids;
* edge entries (one axis at a pinned node) use the 1D operator of the
  marginal PSF. The first and last columns use the row marginal
  ``weights.sum(axis=1)`` and the first and last rows use the column marginal;
* the four corners are 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EmptyInputError, ParameterError, SizeError, UnsupportedPsfError
from .operators import (
    BoundaryCondition,
    SpectralBasis,
    build_operator,
    laplacian_symbol,
    node_indices,
    spectral_basis,
)
from .psf import DIRECT_MAX_TAPS, SUM_TOLERANCE, SYMMETRY_TOLERANCE, Psf
from .regularization import smoothing_eigenvalues, tikhonov_solve
from .trig import fourier_apply

__all__ = [
    "Psf2D",
    "Operator2D",
    "tensor_apply",
    "eigenvalues_2d",
    "build_operator_2d",
    "blur_apply_2d",
    "tikhonov_solve_2d",
    "disk_psf",
    "gaussian_psf_2d",
    "separable_psf",
]


@dataclass(frozen=True, eq=False)
class Psf2D:
    """A normalized ``(2 m1 + 1) x (2 m2 + 1)`` mask centred in the middle."""

    weights: np.ndarray
    normalize: bool = False

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2:
            raise DimensionError(f"a 2D PSF needs a matrix, got shape {w.shape}")
        if w.size == 0:
            raise EmptyInputError("PSF has no weights")
        if w.shape[0] % 2 == 0 or w.shape[1] % 2 == 0:
            raise DimensionError(f"PSF dimensions must be odd, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ParameterError("PSF weights must be finite")
        total = w.sum()
        if self.normalize:
            if total == 0:
                raise ParameterError("cannot normalize a PSF whose weights sum to zero")
            w /= total
        elif abs(total - 1.0) > SUM_TOLERANCE:
            raise ParameterError(f"PSF weights sum to {total!r}; expected 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def half_widths(self):
        return self.weights.shape[0] // 2, self.weights.shape[1] // 2

    @property
    def symmetric(self) -> bool:
        """Quadrantal symmetry: unchanged by flipping either axis."""
        w = self.weights
        tol = SYMMETRY_TOLERANCE * np.abs(w).max()
        return bool(np.all(np.abs(w - w[::-1, :]) <= tol) and np.all(np.abs(w - w[:, ::-1]) <= tol))

    def row_marginal(self) -> Psf:
        """1D PSF along axis 0, summing across columns."""
        return Psf(self.weights.sum(axis=1), normalize=True)

    def col_marginal(self) -> Psf:
        """1D PSF along axis 1, summing down rows."""
        return Psf(self.weights.sum(axis=0), normalize=True)

    def rotated(self) -> "Psf2D":
        """PSF rotated by 180 degrees, used for reblurring."""
        return Psf2D(self.weights[::-1, ::-1])


def disk_psf(radius: float) -> Psf2D:
    """Uniform disk: ones where ``j^2 + k^2 <= radius^2``."""
    if not radius >= 0:
        raise ParameterError("radius must be nonnegative")
    m = int(np.floor(radius))
    j = np.arange(-m, m + 1)
    return Psf2D((j[:, None] ** 2 + j[None, :] ** 2 <= radius ** 2).astype(float), normalize=True)


def gaussian_psf_2d(sigma: float, m: int | None = None) -> Psf2D:
    if not sigma > 0:
        raise ParameterError("sigma must be positive")
    if m is None:
        m = int(np.ceil(3 * sigma))
    j = np.arange(-m, m + 1)
    return Psf2D(np.exp(-0.5 * (j[:, None] ** 2 + j[None, :] ** 2) / sigma ** 2), normalize=True)


def separable_psf(rows: Psf, cols: Psf) -> Psf2D:
    return Psf2D(np.outer(rows.weights, cols.weights), normalize=True)


def tensor_apply(basis_rows: SpectralBasis, basis_cols: SpectralBasis, arr, direction="forward"):
    """Apply ``T_rows (x) T_cols`` (or its inverse) to a 2D array."""
    arr = np.asarray(arr)
    if arr.ndim != 2 or arr.shape != (basis_rows.n, basis_cols.n):
        raise DimensionError(
            f"expected shape {(basis_rows.n, basis_cols.n)}, got {arr.shape}")
    if direction == "forward":
        return basis_cols.forward(basis_rows.forward(arr, axis=0), axis=1)
    if direction == "inverse":
        return basis_cols.inverse(basis_rows.inverse(arr, axis=0), axis=1)
    raise ParameterError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def _symbol_2d(weights, period1, k1, period2, k2):
    """``z(2 pi k1/period1, 2 pi k2/period2)`` on the outer grid of indices."""
    m1, m2 = weights.shape[0] // 2, weights.shape[1] // 2
    if max(weights.shape) <= DIRECT_MAX_TAPS:
        roots1 = np.exp(2j * np.pi * np.arange(period1) / period1)
        roots2 = np.exp(2j * np.pi * np.arange(period2) / period2)
        e1 = roots1[np.multiply.outer(k1, np.arange(-m1, m1 + 1)) % period1]
        e2 = roots2[np.multiply.outer(k2, np.arange(-m2, m2 + 1)) % period2]
        return e1 @ weights @ e2.T
    folded = np.zeros((period1, period2))
    rows = np.arange(-m1, m1 + 1) % period1
    cols = np.arange(-m2, m2 + 1) % period2
    np.add.at(folded, (rows[:, None], cols[None, :]), weights)
    z = fourier_apply(fourier_apply(folded, "inverse", axis=0), "inverse", axis=1)
    z *= np.sqrt(period1 * period2)
    return z[np.ix_(np.asarray(k1) % period1, np.asarray(k2) % period2)]


def _check_2d(psf2, dims, bc):
    n1, n2 = (int(v) for v in dims)
    if bc.needs_symmetric_psf and not psf2.symmetric:
        raise UnsupportedPsfError(f"{bc.value} boundary conditions need a quadrantally symmetric PSF")
    pad = 2 if bc.boundary_corrected else 0
    for axis, (n, width) in enumerate(zip((n1, n2), psf2.weights.shape)):
        if width > n - pad:
            raise SizeError(f"PSF support {width} exceeds {n - pad} along axis {axis}")
    return n1, n2


def eigenvalues_2d(psf2: Psf2D, dims, bc):
    """Eigenvalue matrix of the 2D blurring operator."""
    bc = BoundaryCondition(bc)
    n1, n2 = _check_2d(psf2, dims, bc)
    p1, k1, pin1 = node_indices(bc, n1)
    p2, k2, pin2 = node_indices(bc, n2)
    complex_out = bc.complex_basis
    d = np.empty((n1, n2), dtype=complex if complex_out else float)
    inner1, inner2 = ~pin1, ~pin2
    z = _symbol_2d(psf2.weights, p1, k1[inner1], p2, k2[inner2])
    d[np.ix_(inner1, inner2)] = z if complex_out else z.real
    if bc.boundary_corrected:
        rows = build_operator(psf2.row_marginal(), n1, bc).eigenvalues
        cols = build_operator(psf2.col_marginal(), n2, bc).eigenvalues
        d[:, 0] = rows
        d[:, -1] = rows
        d[0, :] = cols
        d[-1, :] = cols
        d[0, 0] = d[0, -1] = d[-1, 0] = d[-1, -1] = 1.0
    return d


@dataclass(frozen=True, eq=False)
class Operator2D:
    """``A = T diag(d) T^{-1}`` on ``n1 x n2`` arrays."""

    bc: BoundaryCondition
    dims: tuple
    eigenvalues: np.ndarray
    psf: Psf2D
    basis_rows: SpectralBasis
    basis_cols: SpectralBasis
    nodes_rows: np.ndarray
    nodes_cols: np.ndarray

    @property
    def shape(self):
        return self.dims

    @property
    def is_complex(self) -> bool:
        return self.bc.complex_basis

    def forward_transform(self, x):
        return tensor_apply(self.basis_rows, self.basis_cols, x, "forward")

    def inverse_transform(self, y):
        return tensor_apply(self.basis_rows, self.basis_cols, y, "inverse")

    def laplacian_eigenvalues(self):
        return laplacian_symbol(self.nodes_rows)[:, None] + laplacian_symbol(self.nodes_cols)[None, :]

    def apply(self, f, keep_complex=False):
        return blur_apply_2d(self, f, keep_complex=keep_complex)


def build_operator_2d(psf2: Psf2D, dims, bc) -> Operator2D:
    bc = BoundaryCondition(bc)
    n1, n2 = _check_2d(psf2, dims, bc)
    d = eigenvalues_2d(psf2, (n1, n2), bc)
    d.setflags(write=False)
    p1, k1, _ = node_indices(bc, n1)
    p2, k2, _ = node_indices(bc, n2)
    return Operator2D(bc, (n1, n2), d, psf2, spectral_basis(bc, n1), spectral_basis(bc, n2),
                      2 * np.pi * k1 / p1, 2 * np.pi * k2 / p2)


def blur_apply_2d(op2: Operator2D, f, keep_complex=False):
    f = np.asarray(f)
    if f.shape != op2.dims:
        raise DimensionError(f"operator acts on {op2.dims} arrays, got {f.shape}")
    out = op2.forward_transform(op2.eigenvalues * op2.inverse_transform(f))
    if not keep_complex and not np.iscomplexobj(f):
        return np.real(out).copy()
    return out


def tikhonov_solve_2d(op2: Operator2D, smoother, g, mu, keep_complex=False):
    """Spectral Tikhonov solution; ``smoother`` is a kind name or operator."""
    if isinstance(smoother, str):
        smoother = smoothing_eigenvalues(smoother, op2)
    return tikhonov_solve(op2, smoother, g, mu, keep_complex=keep_complex)
