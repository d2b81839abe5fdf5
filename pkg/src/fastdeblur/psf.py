"""Point spread functions and their trigonometric symbol.

A one-dimensional PSF is stored as ``h_{-m}, ..., h_0, ..., h_m`` (odd length,
center in the middle). Its symbol is

    z(t) = sum_{j=-m}^{m} h_j exp(i j t)

and blurring acts as ``g_k = sum_j h_j f_{k+j}``; with that convention the
periodic operator is exactly ``F^H diag(z) F``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EmptyInputError, ParameterError
from .trig import fourier_apply

__all__ = [
    "Psf",
    "SUM_TOLERANCE",
    "symbol_eval",
    "symbol_on_grid",
    "reblur_psf",
    "identity_psf",
    "gaussian_psf",
    "motion_psf",
    "box_psf",
]

SUM_TOLERANCE = 1e-8
SYMMETRY_TOLERANCE = 1e-12
# direct summation below this many taps, zero-padded FFT above
DIRECT_MAX_TAPS = 64


def _validated_weights(weights, normalize):
    w = np.array(weights, dtype=float, copy=True)
    if w.ndim != 1:
        raise DimensionError(f"a 1D PSF needs a vector of weights, got shape {w.shape}")
    if w.size == 0:
        raise EmptyInputError("PSF has no weights")
    if w.size % 2 == 0:
        raise DimensionError(f"PSF length must be odd so it has a center, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise ParameterError("PSF weights must be finite")
    total = w.sum()
    if normalize:
        if total == 0 or not np.isfinite(total):
            raise ParameterError("cannot normalize a PSF whose weights sum to zero")
        w /= total
    elif abs(total - 1.0) > SUM_TOLERANCE:
        raise ParameterError(
            f"PSF weights sum to {total!r}; expected 1 (pass normalize=True to rescale)")
    w.setflags(write=False)
    return w


@dataclass(frozen=True, eq=False)
class Psf:
    """A normalized, centered 1D convolution mask.

    Parameters
    ----------
    weights : array_like
        ``h_{-m}, ..., h_m``. Must have odd length and sum to one within
        ``1e-8``.
    normalize : bool, optional
        Divide by the sum instead of rejecting an unnormalized mask.

    Examples
    --------
    >>> p = Psf([0.25, 0.5, 0.25])
    >>> p.m, p.symmetric
    (1, True)
    """

    weights: np.ndarray
    normalize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weights", _validated_weights(self.weights, self.normalize))

    @property
    def m(self) -> int:
        return self.weights.size // 2

    @property
    def support(self) -> int:
        return self.weights.size

    @property
    def symmetric(self) -> bool:
        w = self.weights
        scale = np.abs(w).max()
        return bool(np.all(np.abs(w - w[::-1]) <= SYMMETRY_TOLERANCE * scale))

    @property
    def offsets(self):
        return np.arange(-self.m, self.m + 1)

    def __eq__(self, other):
        if not isinstance(other, Psf):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f"Psf(m={self.m}, weights={np.array2string(self.weights, precision=4)})"


def symbol_eval(psf: Psf, t):
    """Evaluate ``z(t)``; real-valued when the PSF is symmetric.

    Examples
    --------
    >>> float(symbol_eval(Psf([0.25, 0.5, 0.25]), np.pi / 2))
    0.5
    """
    t = np.asarray(t, dtype=float)
    phases = np.exp(1j * np.multiply.outer(t, psf.offsets))
    z = phases @ psf.weights
    if psf.symmetric:
        return z.real
    return z


def symbol_on_grid(psf: Psf, period: int, indices):
    """Evaluate ``z(2 pi k / period)`` for integer ``k`` in O(n log n).

    Few-tap masks are summed directly against an exact table of roots of
    unity indexed by ``(j k) mod period``; wide masks are folded modulo the
    period and sent through one DFT.
    """
    period = int(period)
    k = np.asarray(indices, dtype=np.int64)
    if period < 1:
        raise ParameterError("period must be positive")
    if psf.support <= DIRECT_MAX_TAPS:
        roots = np.exp(2j * np.pi * np.arange(period) / period)
        z = np.zeros(k.shape, dtype=complex)
        for j, h in zip(psf.offsets, psf.weights):
            if h != 0.0:
                z += h * roots[(j * k) % period]
    else:
        folded = np.zeros(period)
        np.add.at(folded, psf.offsets % period, psf.weights)
        z = np.sqrt(period) * fourier_apply(folded, "inverse")[k % period]
    if psf.symmetric:
        return z.real
    return z


def reblur_psf(psf: Psf) -> Psf:
    """Return the PSF rotated by 180 degrees (``h_j <-> h_{-j}``)."""
    return Psf(psf.weights[::-1])


def identity_psf() -> Psf:
    return Psf([1.0])


def gaussian_psf(sigma: float, m: int | None = None) -> Psf:
    """Sampled Gaussian of standard deviation ``sigma`` (in samples).

    ``m`` defaults to ``ceil(3 sigma)``.
    """
    if not sigma > 0:
        raise ParameterError("sigma must be positive")
    if m is None:
        m = int(np.ceil(3 * sigma))
    j = np.arange(-m, m + 1)
    return Psf(np.exp(-0.5 * (j / sigma) ** 2), normalize=True)


def motion_psf(length: int) -> Psf:
    """One-sided uniform motion blur over ``length`` samples.

    The weights occupy offsets ``0..length-1``, so the mask is not symmetric
    for ``length > 1``.
    """
    length = int(length)
    if length < 1:
        raise ParameterError("motion length must be at least 1")
    w = np.zeros(2 * length - 1)
    w[length - 1:] = 1.0 / length
    return Psf(w, normalize=True)


def box_psf(m: int) -> Psf:
    """Uniform symmetric mask of half-width ``m``."""
    if m < 0:
        raise ParameterError("half-width must be nonnegative")
    return Psf(np.ones(2 * m + 1), normalize=True)
