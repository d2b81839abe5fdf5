"""Command-line front end.

Subcommands::

    fastdeblur eigs    --psf P --n N --bc BC --out E.csv
    fastdeblur blur    --input F --psf P [--bc BC|true-extended] [--noise L --seed S] --output G
    fastdeblur deblur  --input G --psf P --bc BC [--reg R] [--mu gcv|V] [--truth F] --output R
    fastdeblur compare --input F --psf P [--noise L --seed S] [--bc-list A,B] [--reg R] --out T.csv

Signals are CSV (one value per line), images are PGM; the file extension
picks between them and ``--dims R,C`` reads a plain numeric matrix instead.
Exit status is 0 on success, 2 for rejected input and 3 when the numerics
degenerate.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .errors import DegeneracyError, ValidationError
from .experiments import compare_boundary_conditions, extended_blur
from .multidim import Psf2D, build_operator_2d
from .noise import add_noise
from .operators import BoundaryCondition, build_operator
from .regularization import MU_COUNT, MU_RANGE, gcv_curve, restore, rre_curve, smoothing_eigenvalues

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 2, 3
TRUE_EXTENDED = "true-extended"
_BCS = [bc.value for bc in BoundaryCondition]


def _dims(text):
    try:
        rows, cols = (int(v) for v in text.replace("x", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROWS,COLS, got {text!r}") from None
    return rows, cols


def _mu(text):
    if text == "gcv":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--mu takes a number or 'gcv', got {text!r}") from None


def _range(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None
    return lo, hi


def _read_data(path, dims=None):
    if dims is not None:
        return io.read_matrix(path, dims)
    if os.fspath(path).lower().endswith(".pgm"):
        return io.read_pgm(path)
    return io.read_signal(path)


def _write_data(path, arr):
    arr = np.asarray(arr)
    if arr.ndim == 1:
        io.write_signal(path, arr)
    elif os.fspath(path).lower().endswith(".pgm"):
        io.write_pgm(path, arr)
    else:
        io.write_matrix(path, arr)


def _operator(psf, shape, bc):
    if isinstance(psf, Psf2D):
        if len(shape) != 2:
            raise ValidationError("a 2D PSF needs 2D data")
        return build_operator_2d(psf, shape, bc)
    if len(shape) != 1:
        raise ValidationError("a 1D PSF needs 1D data")
    return build_operator(psf, shape[0], bc)


def cmd_eigs(args):
    psf = io.read_psf(args.psf, normalize=args.normalize)
    if isinstance(psf, Psf2D):
        shape = args.dims or (args.n, args.n)
    else:
        shape = (args.n,)
    if any(v is None for v in shape):
        raise ValidationError("--n (or --dims for a 2D PSF) is required")
    d = np.asarray(_operator(psf, shape, args.bc).eigenvalues).ravel()
    rows = [(i + 1, float(np.real(v)), float(np.imag(v))) for i, v in enumerate(d)]
    io.write_csv(args.out, ["index", "real", "imag"], rows)
    return EXIT_OK


def cmd_blur(args):
    psf = io.read_psf(args.psf, normalize=args.normalize)
    data = _read_data(args.input, args.dims)
    if args.bc == TRUE_EXTENDED:
        blurred = extended_blur(data, psf)
        if min(blurred.shape) < io.MIN_SAMPLES:
            raise ValidationError(f"input too short: the cropped result has shape {blurred.shape}")
    else:
        blurred = _operator(psf, data.shape, args.bc).apply(data)
    _write_data(args.output, add_noise(blurred, args.noise, args.seed))
    return EXIT_OK


def cmd_deblur(args):
    psf = io.read_psf(args.psf, normalize=args.normalize)
    data = _read_data(args.input, args.dims)
    truth = _read_data(args.truth, args.dims) if args.truth else None
    if truth is not None and truth.shape != data.shape:
        raise ValidationError(f"truth shape {truth.shape} differs from data shape {data.shape}")
    op = _operator(psf, data.shape, args.bc)
    lo, hi = args.mu_range
    report = restore(op, data, smoother=args.reg, mu=args.mu, truth=truth, lo=lo, hi=hi,
                     count=args.mu_count)
    _write_data(args.output, report.restored)
    print(f"mu={io.format_number(report.mu_used)} source={report.mu_source}")
    if report.rre is not None:
        print(f"rre={io.format_number(report.rre)}")
    scale = np.linalg.norm(report.restored)
    relative = report.imag_norm / scale if scale > 0 else 0.0
    status = "FLAGGED" if report.imag_flagged else "ok"
    print(f"imag_residue={io.format_number(relative)} threshold=1e-06 status={status}")
    if args.curves:
        lap = smoothing_eigenvalues(args.reg, op)
        if report.gcv_curve is not None:
            mus, values = report.gcv_curve[:, 0], report.gcv_curve[:, 1]
        else:
            mus = np.logspace(np.log10(lo), np.log10(hi), args.mu_count)
            values = gcv_curve(op, lap, data, mus)
        columns = [mus, values]
        header = ["mu", "G"]
        if truth is not None:
            columns.append(rre_curve(op, lap, data, truth, mus))
            header.append("rre")
        io.write_csv(args.curves, header, list(zip(*columns)))
    return EXIT_OK


def cmd_compare(args):
    psf = io.read_psf(args.psf, normalize=args.normalize)
    scene = _read_data(args.input, args.dims)
    if args.bc_list:
        bcs = [b.strip() for b in args.bc_list.split(",") if b.strip()]
        unknown = [b for b in bcs if b not in _BCS]
        if unknown:
            raise ValidationError(
                f"unknown boundary condition {unknown[0]!r}; choose from {', '.join(_BCS)}")
    else:
        bcs = [bc.value for bc in BoundaryCondition if psf.symmetric or not bc.needs_symmetric_psf]
    lo, hi = args.mu_range
    rows = compare_boundary_conditions(scene, psf, bcs, noise=args.noise, seed=args.seed,
                                       smoother=args.reg, lo=lo, hi=hi, count=args.mu_count)
    table = [(r.bc, r.min_rre, r.mu_opt, r.mu_gcv, r.rre_gcv) for r in rows]
    io.write_csv(args.out, ["bc", "min_rre", "mu_opt", "mu_gcv", "rre_gcv"], table)
    for r in rows:
        print(f"{r.bc:>15}  min_rre={r.min_rre:.6g}  mu_opt={r.mu_opt:.3g}  "
              f"mu_gcv={r.mu_gcv:.3g}  rre_gcv={r.rre_gcv:.6g}")
    return EXIT_OK


def _common(sub):
    sub.add_argument("--psf", required=True, help="PSF text file")
    sub.add_argument("--normalize", action="store_true",
                     help="divide the PSF by its sum instead of rejecting it")
    sub.add_argument("--dims", type=_dims, default=None,
                     help="read input as a plain numeric matrix of shape ROWS,COLS")


def _search(sub):
    sub.add_argument("--reg", choices=["identity", "laplacian"], default="identity")
    sub.add_argument("--mu-range", type=_range, default=MU_RANGE, metavar="LO,HI")
    sub.add_argument("--mu-count", type=int, default=MU_COUNT)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fastdeblur", description="Fast deblurring with structured boundary conditions.")
    subs = parser.add_subparsers(dest="command", required=True)

    eigs = subs.add_parser("eigs", help="write the operator eigenvalues as CSV")
    _common(eigs)
    eigs.add_argument("--n", type=int, help="signal length (or side of a square image)")
    eigs.add_argument("--bc", choices=_BCS, required=True)
    eigs.add_argument("--out", required=True)
    eigs.set_defaults(func=cmd_eigs)

    blur = subs.add_parser("blur", help="simulate a blurred, noisy observation")
    _common(blur)
    blur.add_argument("--input", required=True)
    blur.add_argument("--bc", choices=_BCS + [TRUE_EXTENDED], default=TRUE_EXTENDED,
                      help="model operator, or crop a blurred extended scene (default)")
    blur.add_argument("--noise", type=float, default=0.0, help="relative noise level")
    blur.add_argument("--seed", type=int, default=0)
    blur.add_argument("--output", required=True)
    blur.set_defaults(func=cmd_blur)

    deblur = subs.add_parser("deblur", help="Tikhonov restoration with reblurring")
    _common(deblur)
    deblur.add_argument("--input", required=True)
    deblur.add_argument("--bc", choices=_BCS, required=True)
    _search(deblur)
    deblur.add_argument("--mu", type=_mu, default="gcv", help="a positive number or 'gcv'")
    deblur.add_argument("--truth", help="ground truth for reporting the relative error")
    deblur.add_argument("--output", required=True)
    deblur.add_argument("--curves", help="write mu,G[,rre] over the search grid")
    deblur.set_defaults(func=cmd_deblur)

    compare = subs.add_parser("compare", help="compare boundary conditions on one scene")
    _common(compare)
    compare.add_argument("--input", required=True, help="extended truth scene")
    compare.add_argument("--noise", type=float, default=1e-3)
    compare.add_argument("--seed", type=int, default=0)
    compare.add_argument("--bc-list", help="comma-separated boundary conditions")
    _search(compare)
    compare.add_argument("--out", required=True)
    compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=sys.stderr)
        return EXIT_INVALID
    except DegeneracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
