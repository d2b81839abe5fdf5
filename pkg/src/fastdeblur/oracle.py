"""Dense reference constructions for testing the fast paths.

Everything here is O(n^2) to O(n^3) and assembled entry by entry from closed
formulas, sharing no code with the fast modules beyond the PSF container.
The structured transforms are built by sampling each basis function on the
whole extended grid: the interior rows give the trigonometric block and the
two end points give the boundary rows.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalError, SizeError, UnsupportedPsfError
from .psf import Psf

__all__ = [
    "dense_trig",
    "boundary_column",
    "dense_transform",
    "dense_basis",
    "dense_nodes",
    "dense_symbol",
    "dense_eigenvalues",
    "dense_blur_matrix",
    "dense_laplacian",
    "dense_tikhonov",
    "eigs_via_e1_ratio",
    "dense_tensor",
    "dense_eigenvalues_2d",
    "dense_blur_matrix_2d",
]

_CORRECTED = ("antireflective", "hoc-cosine", "hoc-fourier")


def dense_trig(kind: str, m: int, direction: str = "forward"):
    """Entry-wise unitary DFT, orthonormal DCT-II or DST-I of order ``m``."""
    i = np.arange(m)[:, None]
    j = np.arange(m)[None, :]
    # integer phases are reduced modulo the period so large orders stay exact
    if kind == "fourier":
        mat = np.exp(-2j * np.pi * ((i * j) % m) / m) / np.sqrt(m)
        return mat if direction == "forward" else mat.conj().T
    if kind == "cosine":
        scale = np.where(i == 0, np.sqrt(1.0 / m), np.sqrt(2.0 / m))
        mat = scale * np.cos(((i * (2 * j + 1)) % (4 * m)) * np.pi / (2 * m))
        return mat if direction == "forward" else mat.T
    if kind == "sine":
        return np.sqrt(2.0 / (m + 1)) * np.sin((((i + 1) * (j + 1)) % (2 * m + 2)) * np.pi / (m + 1))
    raise ValueError(f"unknown transform kind {kind!r}")


def _grid(basis, n):
    i = np.arange(n)
    if basis == "antireflective":
        return 0.0, np.pi, i * np.pi / (n - 1)
    if basis == "hoc-cosine":
        h = np.pi / (2 * n - 4)
        return -h, (2 * n - 3) * h, (2 * i - 1) * h
    h = 2 * np.pi / (n - 2)
    return -h, 2 * np.pi, (i - 1) * h


def boundary_column(basis: str, n: int):
    """First column of the boundary-corrected transform, for any ``n >= 3``."""
    if basis not in _CORRECTED:
        raise ValueError(f"unknown basis {basis!r}")
    if n < 3 or (basis != "antireflective" and n < 4):
        raise SizeError("order too small for a boundary column")
    _, b, x = _grid(basis, n)
    if basis == "antireflective":
        q = 1.0 - x / np.pi
    else:
        q = (b - x) ** 2
        q[-1] = 0.0
    return q / np.linalg.norm(q)


def dense_transform(basis: str, n: int):
    """Explicit ``n x n`` boundary-corrected transform."""
    if basis not in _CORRECTED:
        raise ValueError(f"unknown basis {basis!r}")
    if n < 5:
        raise SizeError("boundary-corrected transforms need n >= 5")
    _, _, x = _grid(basis, n)
    size = n - 2
    dtype = complex if basis == "hoc-fourier" else float
    mat = np.zeros((n, n), dtype=dtype)
    q = boundary_column(basis, n)
    mat[:, 0] = q
    mat[:, -1] = q[::-1]
    for col in range(size):
        if basis == "antireflective":
            mat[:, col + 1] = np.sqrt(2.0 / (size + 1)) * np.sin((col + 1) * x)
        elif basis == "hoc-cosine":
            scale = np.sqrt((1.0 if col == 0 else 2.0) / size)
            mat[:, col + 1] = scale * np.cos(col * x)
        else:
            mat[:, col + 1] = np.exp(1j * col * x) / np.sqrt(size)
    # sin/cos at the end points give the exact zeros of the antireflective rows
    if basis == "antireflective":
        mat[0, 1:-1] = 0.0
        mat[-1, 1:-1] = 0.0
    return mat


def dense_basis(bc: str, n: int):
    """The eigenvector matrix ``T`` of a boundary condition."""
    if bc == "periodic":
        return dense_trig("fourier", n, "inverse")
    if bc == "reflective":
        return dense_trig("cosine", n, "inverse")
    return dense_transform(bc, n)


def dense_nodes(bc: str, n: int):
    """Symbol nodes, with the preserved-mode indices at 0."""
    if bc == "periodic":
        return 2 * np.pi * np.arange(n) / n
    if bc == "reflective":
        return np.pi * np.arange(n) / n
    nodes = np.zeros(n)
    if bc == "antireflective":
        nodes[1:-1] = np.pi * np.arange(1, n - 1) / (n - 1)
    elif bc == "hoc-cosine":
        nodes[1:-1] = np.pi * np.arange(n - 2) / (n - 2)
    elif bc == "hoc-fourier":
        nodes[1:-1] = 2 * np.pi * np.arange(n - 2) / (n - 2)
    else:
        raise ValueError(f"unknown boundary condition {bc!r}")
    return nodes


def dense_symbol(weights, t):
    """``sum_j h_j exp(i j t)`` by plain summation."""
    weights = np.asarray(weights, dtype=float)
    m = weights.size // 2
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape, dtype=complex)
    for idx, h in enumerate(weights):
        out += h * np.exp(1j * (idx - m) * t)
    return out


def _check(psf, n, bc):
    sym = np.allclose(psf.weights, psf.weights[::-1], rtol=0, atol=1e-12)
    if bc in ("reflective", "antireflective", "hoc-cosine") and not sym:
        raise UnsupportedPsfError(f"{bc} needs a symmetric PSF")
    room = n if bc in ("periodic", "reflective") else n - 2
    if psf.weights.size > room:
        raise SizeError("PSF support too wide")


def dense_eigenvalues(psf: Psf, n: int, bc: str):
    _check(psf, n, bc)
    return dense_symbol(psf.weights, dense_nodes(bc, n))


def _shift_matrix(offset, n, bc):
    """Matrix of ``f -> (f_{k+offset})_k`` with the boundary extension."""
    mat = np.zeros((n, n))
    for k in range(n):
        idx = k + offset
        if 0 <= idx < n:
            mat[k, idx] += 1.0
        elif bc == "periodic":
            mat[k, idx % n] += 1.0
        elif bc == "reflective":
            mat[k, -idx - 1 if idx < 0 else 2 * n - 1 - idx] += 1.0
        elif bc == "antireflective":
            # odd reflection about the end sample: f_{-j} = 2 f_0 - f_j
            if idx < 0:
                mat[k, 0] += 2.0
                mat[k, -idx] -= 1.0
            else:
                mat[k, n - 1] += 2.0
                mat[k, 2 * (n - 1) - idx] -= 1.0
        else:
            raise ValueError(f"no stencil assembly for {bc!r}")
    return mat


def dense_blur_matrix(psf: Psf, n: int, bc: str, route: str = "spectral"):
    """Explicit blurring matrix.

    ``route="spectral"`` forms ``T diag(d) T^{-1}``; ``route="stencil"``
    applies the PSF to the boundary-extended signal row by row and is
    available for periodic, reflective and antireflective conditions.
    """
    _check(psf, n, bc)
    if route == "stencil":
        mat = np.zeros((n, n))
        for idx, h in enumerate(psf.weights):
            if h != 0.0:
                mat += h * _shift_matrix(idx - psf.m, n, bc)
        return mat
    t = dense_basis(bc, n)
    d = dense_eigenvalues(psf, n, bc)
    return t @ np.diag(d) @ np.linalg.inv(t)


def dense_laplacian(bc: str, n: int):
    """``T diag(2 - 2 cos(node)) T^{-1}``."""
    t = dense_basis(bc, n)
    s = 2.0 - 2.0 * np.cos(dense_nodes(bc, n))
    return t @ np.diag(s) @ np.linalg.inv(t)


def dense_tikhonov(a, a_reblur, lap, g, mu):
    """Solve ``(A' A + mu L L) f = A' g`` by dense LU."""
    lhs = a_reblur @ a + mu * (lap @ lap)
    return np.linalg.solve(lhs, a_reblur @ g)


def eigs_via_e1_ratio(dense_a, kind: str):
    """Eigenvalues ``[X A e_1]_i / [X e_1]_i`` with ``X`` the forward transform."""
    n = dense_a.shape[0]
    x = dense_trig(kind, n, "forward")
    denom = x[:, 0]
    if np.any(np.abs(denom) == 0):
        raise NumericalError("transform of e_1 has a zero entry")
    return (x @ dense_a[:, 0]) / denom


def dense_tensor(t_rows, t_cols):
    """Kronecker product acting on the row-major flattening of an array."""
    return np.kron(t_rows, t_cols)


def dense_symbol_2d(weights, t1, t2):
    weights = np.asarray(weights, dtype=float)
    m1, m2 = weights.shape[0] // 2, weights.shape[1] // 2
    out = np.zeros((len(t1), len(t2)), dtype=complex)
    for a in range(weights.shape[0]):
        for b in range(weights.shape[1]):
            h = weights[a, b]
            if h != 0.0:
                out += h * np.outer(np.exp(1j * (a - m1) * t1), np.exp(1j * (b - m2) * t2))
    return out


def dense_eigenvalues_2d(weights, dims, bc: str):
    """2D symbol at every pair of nodes; pinned nodes sit at 0."""
    n1, n2 = dims
    return dense_symbol_2d(weights, dense_nodes(bc, n1), dense_nodes(bc, n2))


def dense_blur_matrix_2d(weights, dims, bc: str, route: str = "spectral"):
    """Explicit ``(n1 n2) x (n1 n2)`` blurring matrix on row-major vectors."""
    weights = np.asarray(weights, dtype=float)
    n1, n2 = dims
    if route == "stencil":
        m1, m2 = weights.shape[0] // 2, weights.shape[1] // 2
        mat = np.zeros((n1 * n2, n1 * n2))
        for a in range(weights.shape[0]):
            for b in range(weights.shape[1]):
                if weights[a, b] != 0.0:
                    mat += weights[a, b] * np.kron(_shift_matrix(a - m1, n1, bc),
                                                   _shift_matrix(b - m2, n2, bc))
        return mat
    t = dense_tensor(dense_basis(bc, n1), dense_basis(bc, n2))
    d = dense_eigenvalues_2d(weights, dims, bc).ravel()
    return t @ np.diag(d) @ np.linalg.inv(t)
