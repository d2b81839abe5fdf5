"""Tikhonov regularization with reblurring, solved spectrally, and GCV.

When the blur ``A = T diag(d) T^{-1}`` and the smoother ``L = T diag(s) T^{-1}``
share a basis, the reblurred normal equations

    (A' A + mu L' L) f = A' g,      A' = T diag(conj(d)) T^{-1}

are diagonal in that basis and

    f = T diag(conj(d) / (|d|^2 + mu |s|^2)) T^{-1} g.

The functions work on any operator exposing ``eigenvalues``, ``shape``,
``forward_transform``, ``inverse_transform``, ``laplacian_eigenvalues`` and
``is_complex``, so 1D and 2D operators go through the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DegenerateGcvError,
    DimensionError,
    IncompatibleSmootherError,
    ParameterError,
)

__all__ = [
    "SmoothingKind",
    "SmoothingOperator",
    "FilterSpectrum",
    "RestorationReport",
    "MU_RANGE",
    "MU_COUNT",
    "MU_RTOL",
    "smoothing_eigenvalues",
    "filter_factors",
    "tikhonov_solve",
    "gcv_value",
    "gcv_curve",
    "gcv_select",
    "rre",
    "rre_curve",
    "restore",
]

MU_RANGE = (1e-12, 1e1)
MU_COUNT = 200
MU_RTOL = 1e-3
TIE_RTOL = 1e-12
IMAG_FLAG_RTOL = 1e-6
_NULL_TOL = 1e-14
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class SmoothingKind(str, Enum):
    IDENTITY = "identity"
    LAPLACIAN = "laplacian"


@dataclass(frozen=True, eq=False)
class SmoothingOperator:
    """Eigenvalues ``s`` of the smoother in the blur operator's basis."""

    kind: SmoothingKind
    eigenvalues: np.ndarray


@dataclass(frozen=True, eq=False)
class FilterSpectrum:
    """Filter factors ``phi = |d|^2 / (|d|^2 + mu |s|^2)``."""

    phi: np.ndarray
    mu: float


@dataclass(frozen=True, eq=False)
class RestorationReport:
    """Outcome of one restoration.

    Attributes
    ----------
    restored : ndarray
        Real-valued restoration.
    mu_used : float
    mu_source : str
        ``"fixed"`` or ``"gcv"``.
    rre : float or None
        Relative restoration error, present only when a truth was supplied.
    gcv_curve : ndarray or None
        ``(count, 2)`` array of ``(mu, G(mu))`` samples from the search.
    imag_norm : float
        Norm of the discarded imaginary part (zero for real bases).
    imag_flagged : bool
        ``imag_norm`` exceeds ``1e-6 * ||restored||``.
    """

    restored: np.ndarray
    mu_used: float
    mu_source: str
    rre: float | None = None
    gcv_curve: np.ndarray | None = None
    imag_norm: float = 0.0
    imag_flagged: bool = False


def smoothing_eigenvalues(kind, op) -> SmoothingOperator:
    """Build the smoother on the operator's own nodes.

    Raises
    ------
    IncompatibleSmootherError
        Some spectral index has both ``d_i = 0`` and ``s_i = 0``, so the
        regularized problem would not have a unique solution.
    """
    kind = SmoothingKind(kind)
    d = np.asarray(op.eigenvalues)
    if kind is SmoothingKind.IDENTITY:
        s = np.ones(d.shape)
    else:
        s = np.asarray(op.laplacian_eigenvalues(), dtype=float)
    joint = (np.abs(d) <= _NULL_TOL) & (np.abs(s) <= _NULL_TOL)
    if np.any(joint):
        raise IncompatibleSmootherError(
            f"blur and smoother share {int(joint.sum())} null direction(s)")
    s.setflags(write=False)
    return SmoothingOperator(kind, s)


def _check_mu(mu):
    if not (np.isfinite(mu) and mu > 0):
        raise ParameterError(f"regularization parameter must be positive, got {mu}")
    return float(mu)


def filter_factors(d, s, mu) -> FilterSpectrum:
    """Tikhonov filter factors; zero where ``d`` vanishes."""
    mu = _check_mu(mu)
    ad = np.abs(np.asarray(d)) ** 2
    as_ = np.abs(np.asarray(s)) ** 2
    denom = ad + mu * as_
    phi = np.divide(ad, denom, out=np.zeros_like(ad), where=denom > 0)
    return FilterSpectrum(phi, mu)


def _spectral_filter(d, s, mu):
    # conj(d)/(|d|^2 + mu|s|^2) equals phi/d where d != 0 and stays finite at d = 0
    return np.conj(d) / (np.abs(d) ** 2 + mu * np.abs(s) ** 2)


def _check_data(op, g):
    g = np.asarray(g)
    if g.shape != tuple(op.shape):
        raise DimensionError(f"data shape {g.shape} does not match operator {tuple(op.shape)}")
    return g


def tikhonov_solve(op, smoother: SmoothingOperator, g, mu, keep_complex=False):
    """Regularized solution of the reblurred normal equations.

    For real data the result is projected to its real part unless
    ``keep_complex`` is set.
    """
    mu = _check_mu(mu)
    g = _check_data(op, g)
    g_hat = op.inverse_transform(g)
    f = op.forward_transform(_spectral_filter(op.eigenvalues, smoother.eigenvalues, mu) * g_hat)
    if keep_complex or np.iscomplexobj(g):
        return f
    return np.real(f).copy()


class _GcvTerms:
    """Quantities shared by every ``G(mu)`` evaluation for fixed data."""

    def __init__(self, op, smoother, g):
        g = _check_data(op, g)
        self.ad = (np.abs(np.asarray(op.eigenvalues)) ** 2).ravel()
        self.as_ = (np.abs(np.asarray(smoother.eigenvalues)) ** 2).ravel()
        if not np.any(self.as_ > 0):
            raise DegenerateGcvError("smoother has no nonzero eigenvalue; GCV is undefined")
        self.gh2 = (np.abs(op.inverse_transform(g)) ** 2).ravel()

    def values(self, mus):
        mus = np.atleast_1d(np.asarray(mus, dtype=float))
        out = np.empty(mus.shape)
        chunk = max(1, (1 << 22) // self.ad.size)
        for start in range(0, mus.size, chunk):
            mu = mus[start:start + chunk, None]
            sigma = self.as_ / (self.ad + mu * self.as_)
            out[start:start + chunk] = (sigma ** 2 @ self.gh2) / sigma.sum(axis=1) ** 2
        return out


def gcv_value(op, smoother, g, mu) -> float:
    """``G(mu) = sum sigma_i^2 |g_hat_i|^2 / (sum sigma_i)^2``.

    Here ``sigma_i = |s_i|^2 / (|d_i|^2 + mu |s_i|^2)`` and
    ``g_hat = T^{-1} g``.
    """
    mu = _check_mu(mu)
    return float(_GcvTerms(op, smoother, g).values([mu])[0])


def gcv_curve(op, smoother, g, mus):
    """``G`` at every ``mu`` in ``mus`` (one transform in total)."""
    mus = np.asarray(mus, dtype=float)
    if np.any(~np.isfinite(mus)) or np.any(mus <= 0):
        raise ParameterError("every mu must be positive")
    return _GcvTerms(op, smoother, g).values(mus)


def _golden_log(func, lo, hi, rtol):
    """Minimize ``func`` over ``[lo, hi]`` by golden section in ``log mu``."""
    a, b = np.log(lo), np.log(hi)
    tol = np.log1p(rtol)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = func(np.exp(c)), func(np.exp(d))
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = func(np.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = func(np.exp(d))
    return float(np.exp(0.5 * (a + b)))


def gcv_select(op, smoother, g, lo=MU_RANGE[0], hi=MU_RANGE[1], count=MU_COUNT,
               rtol=MU_RTOL):
    """Pick ``mu`` by minimizing GCV.

    ``G`` is sampled on ``count`` log-spaced points in ``[lo, hi]``; the best
    sample is refined by golden section between its neighbours to relative
    tolerance ``rtol``. If the minimum is shared by several samples (equal
    within ``1e-12`` relative, or all zero) the geometric midpoint of the tied
    samples is returned without refinement.

    Returns
    -------
    mu : float
    curve : ndarray
        ``(count, 2)`` array of ``(mu, G(mu))``.
    """
    if not (0 < lo < hi) or not np.isfinite(hi):
        raise ParameterError(f"invalid search range [{lo}, {hi}]")
    if count < 2:
        raise ParameterError("the search grid needs at least two points")
    terms = _GcvTerms(op, smoother, g)
    mus = np.logspace(np.log10(lo), np.log10(hi), int(count))
    values = terms.values(mus)
    curve = np.column_stack([mus, values])
    best = values.min()
    tied = np.flatnonzero(values <= best + TIE_RTOL * abs(best))
    if tied.size > 1:
        return float(np.sqrt(mus[tied[0]] * mus[tied[-1]])), curve
    i = int(tied[0])
    left, right = mus[max(i - 1, 0)], mus[min(i + 1, mus.size - 1)]
    mu = _golden_log(lambda x: terms.values([x])[0], left, right, rtol)
    if terms.values([mu])[0] > best:
        mu = float(mus[i])
    return mu, curve


def rre(truth, restored) -> float:
    """Relative restoration error ``||truth - restored|| / ||truth||``."""
    truth = np.asarray(truth)
    restored = np.asarray(restored)
    if truth.shape != restored.shape:
        raise DimensionError(f"shapes differ: {truth.shape} vs {restored.shape}")
    norm = np.linalg.norm(truth)
    if norm == 0:
        raise ParameterError("relative error is undefined for a zero truth")
    return float(np.linalg.norm(truth - restored) / norm)


def rre_curve(op, smoother, g, truth, mus):
    """RRE of the real-part restoration at each ``mu``."""
    g = _check_data(op, g)
    g_hat = op.inverse_transform(g)
    out = np.empty(len(mus))
    for k, mu in enumerate(mus):
        filt = _spectral_filter(op.eigenvalues, smoother.eigenvalues, _check_mu(mu))
        out[k] = rre(truth, np.real(op.forward_transform(filt * g_hat)))
    return out


def restore(op, g, smoother="identity", mu="gcv", truth=None, lo=MU_RANGE[0],
            hi=MU_RANGE[1], count=MU_COUNT) -> RestorationReport:
    """Regularized restoration with a fixed or GCV-selected ``mu``."""
    if isinstance(smoother, SmoothingOperator):
        lap = smoother
    else:
        lap = smoothing_eigenvalues(smoother, op)
    curve = None
    if isinstance(mu, str):
        if mu != "gcv":
            raise ParameterError(f"mu must be a positive number or 'gcv', got {mu!r}")
        mu_used, curve = gcv_select(op, lap, g, lo=lo, hi=hi, count=count)
        source = "gcv"
    else:
        mu_used, source = _check_mu(mu), "fixed"
    raw = tikhonov_solve(op, lap, g, mu_used, keep_complex=True)
    restored = np.real(raw).copy()
    imag_norm = float(np.linalg.norm(np.imag(raw))) if np.iscomplexobj(raw) else 0.0
    flagged = imag_norm > IMAG_FLAG_RTOL * np.linalg.norm(restored)
    error = rre(truth, restored) if truth is not None else None
    return RestorationReport(restored, float(mu_used), source, error, curve, imag_norm,
                             bool(flagged))
