"""Readers and writers for signals (CSV), images (PGM) and PSFs (text).

All writers go through a temporary file in the target directory followed by
``os.replace``, so a crashed run never leaves a half-written output.
"""

from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .errors import FormatError
from .multidim import Psf2D
from .psf import Psf

__all__ = [
    "MIN_SAMPLES",
    "atomic_write",
    "format_number",
    "read_signal",
    "write_signal",
    "read_matrix",
    "write_matrix",
    "write_csv",
    "read_pgm",
    "write_pgm",
    "read_psf",
    "write_psf",
]

MIN_SAMPLES = 5


def atomic_write(path, data):
    """Write ``data`` (str or bytes) to ``path`` atomically."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    binary = isinstance(data, (bytes, bytearray))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb" if binary else "w", newline=None if binary else "\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_number(value) -> str:
    """Shortest decimal string that reads back as the same double."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _parse_float(token, where):
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"{where}: cannot parse {token!r} as a number") from None
    if not np.isfinite(value):
        raise FormatError(f"{where}: value {token!r} is not finite")
    return value


def read_signal(path):
    """Read one real value per line; blank lines and ``#`` lines are skipped."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            values.append(_parse_float(text.rstrip(","), f"{path}:{lineno}"))
    if len(values) < MIN_SAMPLES:
        raise FormatError(f"{path}: need at least {MIN_SAMPLES} samples, found {len(values)}")
    return np.array(values)


def write_signal(path, values, header=None):
    lines = [f"# {header}"] if header else []
    lines.extend(format_number(v) for v in np.asarray(values, dtype=float).ravel())
    atomic_write(path, "\n".join(lines) + "\n")


def read_matrix(path, dims=None):
    """Read whitespace- or comma-separated numbers, optionally reshaped to ``dims``."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            rows.append([_parse_float(tok, f"{path}:{lineno}")
                         for tok in re.split(r"[,\s]+", text) if tok])
    flat = [v for row in rows for v in row]
    if dims is not None:
        if len(flat) != dims[0] * dims[1]:
            raise FormatError(f"{path}: {len(flat)} values cannot fill {dims[0]}x{dims[1]}")
        arr = np.array(flat).reshape(dims)
    else:
        if len({len(r) for r in rows}) > 1:
            raise FormatError(f"{path}: rows have different lengths")
        arr = np.array(rows)
    if min(arr.shape) < MIN_SAMPLES:
        raise FormatError(f"{path}: array {arr.shape} is smaller than {MIN_SAMPLES}x{MIN_SAMPLES}")
    return arr


def write_matrix(path, arr):
    arr = np.asarray(arr, dtype=float)
    text = "\n".join(",".join(format_number(v) for v in row) for row in arr)
    atomic_write(path, text + "\n")


def write_csv(path, header, rows):
    """Write a header line and rows of numbers or strings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else format_number(v) for v in row))
    atomic_write(path, "\n".join(lines) + "\n")


_PGM_TOKEN = re.compile(rb"(#[^\n]*\n?)|(\S+)")


def read_pgm(path):
    """Read a P2 or P5 PGM image into floats in ``[0, 1]``."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens, pos = [], 0
    while len(tokens) < 4:
        match = _PGM_TOKEN.search(data, pos)
        if match is None:
            raise FormatError(f"{path}: truncated PGM header")
        pos = match.end()
        if match.group(2) is not None:
            tokens.append(match.group(2))
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"{path}: not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise FormatError(f"{path}: malformed PGM header") from None
    if not 0 < maxval <= 65535:
        raise FormatError(f"{path}: maxval {maxval} outside 1..65535")
    if width < MIN_SAMPLES or height < MIN_SAMPLES:
        raise FormatError(f"{path}: image {height}x{width} is smaller than 5x5")
    count = width * height
    if magic == b"P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        body = data[pos + 1:]  # exactly one whitespace byte ends the header
        if len(body) < count * dtype.itemsize:
            raise FormatError(f"{path}: expected {count} pixels, file is too short")
        pixels = np.frombuffer(body, dtype=dtype, count=count).astype(float)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) != count:
            raise FormatError(f"{path}: expected {count} pixels, found {len(body)}")
        try:
            pixels = np.array([int(t) for t in body], dtype=float)
        except ValueError:
            raise FormatError(f"{path}: non-integer pixel value") from None
    if pixels.min() < 0 or pixels.max() > maxval:
        raise FormatError(f"{path}: pixel values exceed maxval {maxval}")
    return pixels.reshape(height, width) / maxval


def write_pgm(path, image, maxval=255, binary=True):
    """Quantize ``image`` (clipped to ``[0, 1]``) with round-half-up and write it."""
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise FormatError("PGM images must be two-dimensional")
    if not 0 < maxval <= 65535:
        raise FormatError(f"maxval {maxval} outside 1..65535")
    levels = np.floor(np.clip(image, 0.0, 1.0) * maxval + 0.5).astype(np.int64)
    height, width = image.shape
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n{maxval}\n"
    if binary:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        atomic_write(path, header.encode("ascii") + levels.astype(dtype).tobytes())
    else:
        body = "\n".join(" ".join(str(v) for v in row) for row in levels)
        atomic_write(path, header + body + "\n")


def read_psf(path, normalize=False):
    """Read a PSF file and return a :class:`Psf` or :class:`Psf2D`.

    The first line is ``rows cols center_row center_col`` with a 1-based
    center, followed by ``rows * cols`` weights in row-major order. An
    off-middle center is handled by zero padding to a centred mask. A single
    row or column gives a 1D PSF.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in (l.strip() for l in fh) if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError(f"{path}: empty PSF file")
    head = lines[0].split()
    if len(head) != 4:
        raise FormatError(f"{path}: header must be 'rows cols center_row center_col'")
    try:
        rows, cols, crow, ccol = (int(t) for t in head)
    except ValueError:
        raise FormatError(f"{path}: header values must be integers") from None
    if rows < 1 or cols < 1 or not (1 <= crow <= rows and 1 <= ccol <= cols):
        raise FormatError(f"{path}: invalid size or center in header {lines[0]!r}")
    tokens = " ".join(lines[1:]).replace(",", " ").split()
    if len(tokens) != rows * cols:
        raise FormatError(f"{path}: expected {rows * cols} weights, found {len(tokens)}")
    weights = np.array([_parse_float(t, str(path)) for t in tokens]).reshape(rows, cols)
    weights = _center(weights, crow - 1, ccol - 1)
    if weights.shape[0] == 1:
        return Psf(weights[0], normalize=normalize)
    if weights.shape[1] == 1:
        return Psf(weights[:, 0], normalize=normalize)
    return Psf2D(weights, normalize=normalize)


def _center(weights, crow, ccol):
    pads = []
    for size, c in zip(weights.shape, (crow, ccol)):
        m = max(c, size - 1 - c)
        pads.append((m - c, m - (size - 1 - c)))
    return np.pad(weights, pads)


def write_psf(path, psf):
    w = np.atleast_2d(psf.weights)
    rows, cols = w.shape
    body = "\n".join(" ".join(format_number(v) for v in row) for row in w)
    atomic_write(path, f"{rows} {cols} {rows // 2 + 1} {cols // 2 + 1}\n{body}\n")
