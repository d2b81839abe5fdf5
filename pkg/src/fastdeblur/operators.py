"""Blurring operators as spectral triples ``T diag(d) T^{-1}``.

======================  ================  ==================================
boundary condition      ``T``             nodes (zero based)
======================  ================  ==================================
periodic                ``F^H``           ``2 pi i / n``
reflective              ``C^T``           ``pi i / n``
antireflective          ``T_AR``          ``0, pi j/(n-1) (j=1..n-2), 0``
hoc-cosine              ``T_C``           ``0, pi k/(n-2) (k=0..n-3), 0``
hoc-fourier             ``T_F``           ``0, 2 pi k/(n-2) (k=0..n-3), 0``
======================  ================  ==================================

The eigenvalues are ``d_i = z(node_i)``. For the three boundary-corrected
conditions the first and last nodes carry the preserved polynomial part and
their eigenvalues are pinned to exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DimensionError, SizeError, UnsupportedPsfError
from .psf import Psf, symbol_on_grid
from .transforms import (
    BoundaryBasis,
    MIN_ORDER,
    StructuredTransform,
    build_transform,
    transform_apply,
    transform_apply_inverse,
)
from .trig import cosine_apply, fourier_apply

__all__ = [
    "BoundaryCondition",
    "SpectralBasis",
    "BlurOperator",
    "spectral_basis",
    "eigenvalue_grid",
    "node_indices",
    "build_operator",
    "blur_apply",
    "laplacian_symbol",
]


class BoundaryCondition(str, Enum):
    PERIODIC = "periodic"
    REFLECTIVE = "reflective"
    ANTIREFLECTIVE = "antireflective"
    HOC_COSINE = "hoc-cosine"
    HOC_FOURIER = "hoc-fourier"

    @property
    def needs_symmetric_psf(self) -> bool:
        return self in (BoundaryCondition.REFLECTIVE, BoundaryCondition.ANTIREFLECTIVE,
                        BoundaryCondition.HOC_COSINE)

    @property
    def boundary_corrected(self) -> bool:
        return self in _STRUCTURED

    @property
    def complex_basis(self) -> bool:
        return self in (BoundaryCondition.PERIODIC, BoundaryCondition.HOC_FOURIER)


_STRUCTURED = {
    BoundaryCondition.ANTIREFLECTIVE: BoundaryBasis.ANTIREFLECTIVE,
    BoundaryCondition.HOC_COSINE: BoundaryBasis.HOC_COSINE,
    BoundaryCondition.HOC_FOURIER: BoundaryBasis.HOC_FOURIER,
}


def _check_size(bc, n):
    if int(n) != n or n < 1:
        raise SizeError(f"operator order must be a positive integer, got {n}")
    if bc.boundary_corrected and n < MIN_ORDER:
        raise SizeError(f"{bc.value} operators need n >= {MIN_ORDER}, got {n}")
    return int(n)


def node_indices(bc, n):
    """Return ``(period, k, pinned)`` with ``node_i = 2 pi k_i / period``.

    ``pinned`` marks the indices whose eigenvalue is fixed to 1.
    """
    bc = BoundaryCondition(bc)
    n = _check_size(bc, n)
    pinned = np.zeros(n, dtype=bool)
    k = np.zeros(n, dtype=np.int64)
    if bc is BoundaryCondition.PERIODIC:
        return n, np.arange(n), pinned
    if bc is BoundaryCondition.REFLECTIVE:
        return 2 * n, np.arange(n), pinned
    pinned[[0, -1]] = True
    if bc is BoundaryCondition.ANTIREFLECTIVE:
        k[1:-1] = np.arange(1, n - 1)
        return 2 * (n - 1), k, pinned
    k[1:-1] = np.arange(n - 2)
    if bc is BoundaryCondition.HOC_COSINE:
        return 2 * (n - 2), k, pinned
    return n - 2, k, pinned


def eigenvalue_grid(bc, n):
    """Nodes at which the symbol is sampled to give the eigenvalues.

    Examples
    --------
    >>> np.round(eigenvalue_grid("antireflective", 5) / np.pi, 12)
    array([0.  , 0.25, 0.5 , 0.75, 0.  ])
    """
    period, k, _ = node_indices(bc, n)
    return 2 * np.pi * k / period


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """The eigenvector matrix ``T`` of an operator family, with its inverse."""

    bc: BoundaryCondition
    n: int
    structured: StructuredTransform | None = None

    @property
    def is_complex(self) -> bool:
        return self.bc.complex_basis

    def forward(self, x, axis=-1):
        """Apply ``T``."""
        if self.structured is not None:
            return transform_apply(self.structured, x, axis=axis)
        if self.bc is BoundaryCondition.PERIODIC:
            return fourier_apply(x, "inverse", axis=axis)
        return cosine_apply(x, "inverse", axis=axis)

    def inverse(self, y, axis=-1):
        """Apply ``T^{-1}``."""
        if self.structured is not None:
            return transform_apply_inverse(self.structured, y, axis=axis)
        if self.bc is BoundaryCondition.PERIODIC:
            return fourier_apply(y, "forward", axis=axis)
        return cosine_apply(y, "forward", axis=axis)


@lru_cache(maxsize=64)
def spectral_basis(bc, n) -> SpectralBasis:
    bc = BoundaryCondition(bc)
    n = _check_size(bc, n)
    structured = build_transform(_STRUCTURED[bc], n) if bc.boundary_corrected else None
    return SpectralBasis(bc, n, structured)


def laplacian_symbol(nodes):
    """Symbol ``2 - 2 cos t`` of the second-difference stencil ``(-1, 2, -1)``."""
    return 2.0 - 2.0 * np.cos(nodes)


@dataclass(frozen=True, eq=False)
class BlurOperator:
    """``A = T diag(d) T^{-1}`` for one boundary condition and one PSF."""

    bc: BoundaryCondition
    n: int
    eigenvalues: np.ndarray
    nodes: np.ndarray
    psf: Psf
    basis: SpectralBasis

    @property
    def shape(self):
        return (self.n,)

    @property
    def is_complex(self) -> bool:
        return self.basis.is_complex

    def forward_transform(self, x):
        return self.basis.forward(x)

    def inverse_transform(self, y):
        return self.basis.inverse(y)

    def laplacian_eigenvalues(self):
        return laplacian_symbol(self.nodes)

    def apply(self, f, keep_complex=False):
        return blur_apply(self, f, keep_complex=keep_complex)


def build_operator(psf: Psf, n: int, bc) -> BlurOperator:
    """Compute the eigenvalues of the blurring operator in O(n log n).

    Raises
    ------
    UnsupportedPsfError
        Nonsymmetric PSF with a boundary condition that needs symmetry.
    SizeError
        The PSF support does not fit: ``2m + 1`` must not exceed ``n - 2``
        for boundary-corrected conditions and ``n`` otherwise.
    """
    bc = BoundaryCondition(bc)
    n = _check_size(bc, n)
    if bc.needs_symmetric_psf and not psf.symmetric:
        raise UnsupportedPsfError(f"{bc.value} boundary conditions need a symmetric PSF")
    room = n - 2 if bc.boundary_corrected else n
    if psf.support > room:
        raise SizeError(f"PSF support {psf.support} exceeds {room} for {bc.value} of order {n}")
    period, k, pinned = node_indices(bc, n)
    d = symbol_on_grid(psf, period, k)
    if bc.complex_basis:
        d = d.astype(complex)
    d[pinned] = 1.0
    d.setflags(write=False)
    nodes = 2 * np.pi * k / period
    nodes.setflags(write=False)
    return BlurOperator(bc, n, d, nodes, psf, spectral_basis(bc, n))


def blur_apply(op: BlurOperator, f, keep_complex=False):
    """Return ``A f``.

    Real input gives real output. For the complex bases the imaginary part of
    the raw product is rounding residue; pass ``keep_complex=True`` to see it.
    """
    f = np.asarray(f)
    if f.ndim != 1 or f.shape[0] != op.n:
        raise DimensionError(f"operator has order {op.n}, got shape {f.shape}")
    out = op.basis.forward(op.eigenvalues * op.basis.inverse(f))
    if not keep_complex and not np.iscomplexobj(f):
        return np.real(out).copy()
    return out
