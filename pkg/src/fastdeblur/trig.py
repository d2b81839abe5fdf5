"""Exactly normalized trigonometric transforms.

For a vector of length ``m`` (indices counted from 1) the three matrices are

    F[i, j] = exp(-2j*pi*(i-1)*(j-1)/m) / sqrt(m)             unitary DFT
    C[i, j] = sqrt((2 - delta(i, 1))/m) * cos((i-1)*(2j-1)*pi/(2m))   DCT-II
    Q[i, j] = sqrt(2/(m+1)) * sin(i*j*pi/(m+1))                DST-I, Q @ Q = I

``forward`` applies F or C, ``inverse`` applies F^H or C^T. Q is its own
inverse. Everything downstream relies on these scalings being exact.

Lengths whose underlying FFT is 11-smooth (or short) go straight to
:mod:`scipy.fft`. Other lengths are routed through a cached Bluestein
(chirp-z) convolution, which keeps the cost O(m log m) with a constant that
does not depend on how ``m`` factors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import fft

from .errors import DimensionError, EmptyInputError

__all__ = [
    "TrigKind",
    "Direction",
    "TrigPlan",
    "get_plan",
    "fourier_apply",
    "cosine_apply",
    "sine_apply",
]

# below this length pocketfft is fast whatever the factorization
_NATIVE_MAX = 1024


class TrigKind(str, Enum):
    FOURIER = "fourier"
    COSINE = "cosine"
    SINE = "sine"


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


def _workers():
    value = os.environ.get("FASTDEBLUR_THREADS")
    if not value:
        return None
    try:
        return max(int(value), 1)
    except ValueError:
        return None


class _Chirp:
    """Bluestein data for the unnormalized DFT of length ``size``.

    ``sign`` is the sign of the exponent: -1 forward, +1 inverse.
    """

    def __init__(self, size: int, sign: int = -1):
        j = np.arange(size, dtype=np.int64)
        # reduce j^2 modulo 2*size before scaling so the phase stays exact
        self.size = size
        self.w = np.exp(sign * 1j * np.pi * ((j * j) % (2 * size)) / size)
        self.nfft = fft.next_fast_len(2 * size - 1)
        b = np.zeros(self.nfft, dtype=complex)
        b[:size] = self.w.conj()
        b[self.nfft - size + 1:] = self.w[1:][::-1].conj()
        self.kernel = fft.fft(b)

    def convolve(self, head):
        """Circular convolution with the chirp of input already multiplied by ``w``."""
        a = np.zeros(head.shape[:-1] + (self.nfft,), dtype=complex)
        a[..., : self.size] = head
        workers = _workers()
        spec = fft.fft(a, axis=-1, overwrite_x=True, workers=workers)
        spec *= self.kernel
        return fft.ifft(spec, axis=-1, overwrite_x=True, workers=workers)[..., : self.size]

    def __call__(self, x):
        out = self.convolve(x * self.w)
        out *= self.w
        return out


def _needs_chirp(length):
    return length > _NATIVE_MAX and fft.next_fast_len(length) != length


@lru_cache(maxsize=16)
def _chirp_for(length: int, sign: int = -1):
    if not _needs_chirp(length):
        return None
    return _Chirp(length, sign)


def _fft_last(x, inverse=False):
    """Unnormalized DFT along the last axis (sign +1 in the exponent if inverse)."""
    n = x.shape[-1]
    chirp = _chirp_for(n, 1 if inverse else -1)
    if chirp is None:
        if inverse:
            return fft.ifft(x, axis=-1, norm="forward", workers=_workers())
        return fft.fft(x, axis=-1, workers=_workers())
    return chirp(x)


def _split_complex(func, x):
    # real-to-real transforms are applied to real and imaginary parts separately
    if np.iscomplexobj(x):
        return func(x.real) + 1j * func(x.imag)
    return func(x)


class _RealDft:
    """DFT of a real vector of even length ``n`` via one complex DFT of length ``n/2``.

    The even and odd samples are packed as real and imaginary parts and
    separated afterwards using conjugate symmetry.
    """

    def __init__(self, n: int):
        self.n = n
        self.h = n // 2
        self.tw = np.exp(-2j * np.pi * np.arange(self.h + 1) / n)
        # warm the chirp caches for the half length
        _chirp_for(self.h, -1)
        _chirp_for(self.h, 1)

    def rfft(self, x):
        """Coefficients ``0..n/2`` of the unnormalized forward DFT."""
        z = _fft_last(x[..., 0::2] + 1j * x[..., 1::2])
        z = np.concatenate([z, z[..., :1]], axis=-1)
        mirror = np.conj(z[..., ::-1])
        even = 0.5 * (z + mirror)
        odd = -0.5j * (z - mirror)
        odd *= self.tw
        even += odd
        return even

    def irfft(self, spec):
        """Real ``x`` with ``sum_k x_j exp(-2 pi i jk/n) = spec_k`` for ``k = 0..n/2``."""
        mirror = np.conj(spec[..., ::-1])
        even = 0.5 * (spec + mirror)
        odd = 0.5j * (spec - mirror)
        odd *= np.conj(self.tw)
        even += odd
        z = _fft_last(even[..., : self.h], inverse=True)
        x = np.empty(spec.shape[:-1] + (self.n,))
        x[..., 0::2] = z.real
        x[..., 1::2] = z.imag
        x /= self.h
        return x


@lru_cache(maxsize=16)
def _real_dft_for(n: int):
    return _RealDft(n) if n % 2 == 0 and _needs_chirp(n) else None


def _rfft(x):
    plan = _real_dft_for(x.shape[-1])
    if plan is None:
        return _fft_last(x.astype(complex))[..., : x.shape[-1] // 2 + 1]
    return plan.rfft(x)


class _Makhoul:
    """DCT-II/III of length ``n`` through one DFT of the reordered input."""

    def __init__(self, n: int):
        self.n = n
        self.real = _real_dft_for(n)
        k = np.arange(n)
        post = np.exp(-0.5j * np.pi * k / n) * np.sqrt(2.0 / n)
        post[0] /= np.sqrt(2.0)
        self.post = post
        pre = np.exp(0.5j * np.pi * k / n) * np.sqrt(n / 2.0)
        pre[0] *= np.sqrt(2.0)
        self.pre = pre

    def dct2(self, x):
        n = self.n
        v = np.concatenate([x[..., ::2], x[..., 1::2][..., ::-1]], axis=-1)
        if self.real is None:
            spec = _fft_last(v.astype(complex))
        else:
            half = self.real.rfft(v)
            spec = np.concatenate([half, np.conj(half[..., n // 2 - 1 : 0 : -1])], axis=-1)
        spec *= self.post
        return spec.real.copy()

    def dct3(self, c):
        n = self.n
        if self.real is None:
            z = c.astype(complex)
            z[..., 1:] -= 1j * c[..., :0:-1]
            z *= self.pre
            v = _fft_last(z, inverse=True).real / n
        else:
            h = n // 2
            z = c[..., : h + 1].astype(complex)
            z[..., 1:] -= 1j * c[..., n - 1 : h - 1 : -1]
            z *= self.pre[: h + 1]
            v = self.real.irfft(z)
        half = (n + 1) // 2
        x = np.empty(c.shape, dtype=float)
        x[..., ::2] = v[..., :half]
        x[..., 1::2] = v[..., half:][..., ::-1]
        return x


@lru_cache(maxsize=16)
def _makhoul_for(n: int):
    return _Makhoul(n) if _needs_chirp(n) else None


def _dct2(x):
    plan = _makhoul_for(x.shape[-1])
    if plan is None:
        return fft.dct(x, type=2, norm="ortho", axis=-1, workers=_workers())
    return plan.dct2(x)


def _dct3(c):
    plan = _makhoul_for(c.shape[-1])
    if plan is None:
        return fft.idct(c, type=2, norm="ortho", axis=-1, workers=_workers())
    return plan.dct3(c)


def _dst1(x):
    n = x.shape[-1]
    period = 2 * (n + 1)
    if not _needs_chirp(period):
        return fft.dst(x, type=1, norm="ortho", axis=-1, workers=_workers())
    # odd extension: the DFT of (0, x, 0, -reversed x) is -2i times the sine sums
    u = np.zeros(x.shape[:-1] + (period,))
    u[..., 1 : n + 1] = x
    u[..., n + 2 :] = -x[..., ::-1]
    spectrum = _rfft(u)
    return -spectrum.imag[..., 1 : n + 1] * np.sqrt(0.5 / (n + 1))


@dataclass(frozen=True)
class TrigPlan:
    """A reusable transform of fixed kind, length and direction.

    Plans hold no mutable state; the Bluestein data they need lives in a
    module-level cache keyed by FFT length, so building the same plan twice
    is cheap and sharing one across threads is safe.
    """

    kind: TrigKind
    size: int
    direction: Direction = Direction.FORWARD

    def __post_init__(self):
        if self.size < 1:
            raise EmptyInputError("transform length must be positive")
        # warm the caches so the first apply is not slower than the rest
        if self.kind is TrigKind.SINE:
            _real_dft_for(2 * (self.size + 1))
        elif self.kind is TrigKind.COSINE:
            _makhoul_for(self.size)
        else:
            _chirp_for(self.size, 1 if self.direction is Direction.INVERSE else -1)

    def __call__(self, v, axis=-1):
        v = np.asarray(v)
        if v.ndim == 0:
            raise DimensionError("expected an array, got a scalar")
        if v.shape[axis] == 0:
            raise EmptyInputError("cannot transform an empty vector")
        if v.shape[axis] != self.size:
            raise DimensionError(
                f"plan is for length {self.size}, got {v.shape[axis]}")
        x = np.moveaxis(v, axis, -1)
        if self.kind is TrigKind.FOURIER:
            x = x.astype(complex, copy=False)
            inverse = self.direction is Direction.INVERSE
            y = _fft_last(x, inverse=inverse) / np.sqrt(self.size)
        elif self.kind is TrigKind.COSINE:
            func = _dct2 if self.direction is Direction.FORWARD else _dct3
            y = _split_complex(func, x.astype(np.result_type(x, float), copy=False))
        else:
            y = _split_complex(_dst1, x.astype(np.result_type(x, float), copy=False))
        return np.moveaxis(y, -1, axis)


@lru_cache(maxsize=128)
def get_plan(kind, size: int, direction=Direction.FORWARD) -> TrigPlan:
    """Return the cached plan for ``(kind, size, direction)``."""
    return TrigPlan(TrigKind(kind), int(size), Direction(direction))


def _length(v, axis):
    v = np.asarray(v)
    if v.ndim == 0:
        raise DimensionError("expected an array, got a scalar")
    m = v.shape[axis]
    if m == 0:
        raise EmptyInputError("cannot transform an empty vector")
    return v, m


def fourier_apply(v, direction="forward", axis=-1):
    """Apply the unitary DFT ``F`` (forward) or ``F^H`` (inverse) along ``axis``."""
    v, m = _length(v, axis)
    return get_plan(TrigKind.FOURIER, m, Direction(direction))(v, axis)


def cosine_apply(v, direction="forward", axis=-1):
    """Apply the orthonormal DCT-II ``C`` (forward) or ``C^T`` (inverse)."""
    v, m = _length(v, axis)
    return get_plan(TrigKind.COSINE, m, Direction(direction))(v, axis)


def sine_apply(v, axis=-1):
    """Apply the symmetric orthogonal DST-I matrix ``Q`` (its own inverse)."""
    v, m = _length(v, axis)
    return get_plan(TrigKind.SINE, m)(v, axis)
