"""Synthetic field-of-view experiments comparing boundary conditions.

The observation is simulated without any boundary assumption: a scene that
extends ``m`` samples past the field of view on every side is blurred by the
PSF and cropped. Each boundary condition then has to guess the missing
samples, so its model error shows up in the restoration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import signal

from .errors import DimensionError, SizeError
from .multidim import Psf2D, build_operator_2d
from .noise import add_noise
from .operators import build_operator
from .psf import Psf
from .regularization import (
    MU_COUNT,
    MU_RANGE,
    gcv_select,
    rre,
    rre_curve,
    smoothing_eigenvalues,
    tikhonov_solve,
)

__all__ = [
    "extended_blur",
    "field_of_view",
    "boundary_signal",
    "boundary_image",
    "ComparisonRow",
    "compare_boundary_conditions",
]


def _half_widths(psf):
    if isinstance(psf, Psf2D):
        return psf.half_widths
    return (psf.m,)


def extended_blur(scene, psf):
    """Blur an extended scene and keep only the samples it fully determines.

    Computes ``g_k = sum_j h_j f_{k+j}`` for every ``k`` whose stencil lies
    inside ``scene``; the output is smaller by ``2 m`` along each axis.
    """
    scene = np.asarray(scene, dtype=float)
    if scene.ndim != psf.weights.ndim:
        raise DimensionError(f"scene has {scene.ndim} axes, PSF has {psf.weights.ndim}")
    if any(s < w for s, w in zip(scene.shape, psf.weights.shape)):
        raise SizeError("scene is smaller than the PSF")
    return signal.correlate(scene, psf.weights, mode="valid", method="direct")


def field_of_view(scene, psf):
    """Crop ``m`` samples from each side: the truth the data can see."""
    scene = np.asarray(scene)
    index = tuple(slice(m, s - m) for m, s in zip(_half_widths(psf), scene.shape))
    return scene[index]


def boundary_signal(n: int, m: int):
    """Test signal of length ``n + 2 m`` with steep, curved ends.

    A ramp, a cosine and two bumps: the ends have large slope and curvature,
    which is where the boundary conditions differ.
    """
    t = (np.arange(n + 2 * m) - m) / (n - 1)
    return (0.5 + 2.0 * t + 0.5 * np.cos(6 * np.pi * t)
            + 0.3 * np.exp(-(((t - 0.35) / 0.03) ** 2))
            + 0.21 * np.exp(-(((t - 0.7) / 0.045) ** 2)))


def boundary_image(n: int, m: int):
    """Smooth ``(n + 2 m)``-square test image that is busy at the borders."""
    t = np.arange(-m, n + m) / (n - 1)
    x, y = np.meshgrid(t, t, indexing="ij")
    return (1.0 + x * y + 0.7 * np.cos(8 * np.pi * x + 0.5) + 0.7 * np.sin(8 * np.pi * y + 0.5)
            + 0.5 * np.exp(-((x - 0.4) ** 2 + (y - 0.6) ** 2) / 0.01))


@dataclass(frozen=True)
class ComparisonRow:
    """One line of a boundary-condition comparison table."""

    bc: str
    min_rre: float
    mu_opt: float
    mu_gcv: float
    rre_gcv: float


def _build(psf, dims, bc):
    if isinstance(psf, Psf2D):
        return build_operator_2d(psf, dims, bc)
    return build_operator(psf, dims[0], bc)


def compare_boundary_conditions(scene, psf, bcs, noise=1e-3, seed=0, smoother="identity",
                                data=None, lo=MU_RANGE[0], hi=MU_RANGE[1], count=MU_COUNT):
    """Restore one simulated observation under several boundary conditions.

    Parameters
    ----------
    scene : ndarray
        Extended truth, ``m`` samples wider than the field of view per side.
    psf : Psf or Psf2D
    bcs : sequence of str
    noise, seed :
        Relative noise level and generator seed for the observation.
    smoother : {"identity", "laplacian"}
    data : ndarray, optional
        Use this observation instead of simulating one.

    Returns
    -------
    list of ComparisonRow
        ``min_rre`` and ``mu_opt`` come from the RRE on the log grid;
        ``mu_gcv`` is the refined GCV choice and ``rre_gcv`` its error.
    """
    truth = field_of_view(scene, psf)
    if data is None:
        data = add_noise(extended_blur(scene, psf), noise, seed)
    mus = np.logspace(np.log10(lo), np.log10(hi), count)
    rows = []
    for bc in bcs:
        op = _build(psf, truth.shape, bc)
        lap = smoothing_eigenvalues(smoother, op)
        errors = rre_curve(op, lap, data, truth, mus)
        best = int(np.argmin(errors))
        mu_gcv, _ = gcv_select(op, lap, data, lo=lo, hi=hi, count=count)
        restored = tikhonov_solve(op, lap, data, mu_gcv)
        rows.append(ComparisonRow(str(getattr(bc, "value", bc)), float(errors[best]),
                                  float(mus[best]), mu_gcv, rre(truth, restored)))
    return rows
