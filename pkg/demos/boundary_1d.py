"""Compare the five boundary conditions on a 1D signal with steep ends.

Run: python3 demos/boundary_1d.py [--motion] [--out table.csv]
"""

import argparse

from fastdeblur import io
from fastdeblur.experiments import boundary_signal, compare_boundary_conditions
from fastdeblur.psf import gaussian_psf, motion_psf


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--motion", action="store_true", help="one-sided motion blur, 1%% noise")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="write the comparison table as CSV")
    args = parser.parse_args(argv)
    if args.motion:
        psf, noise, bcs = motion_psf(9), 1e-2, ["periodic", "hoc-fourier"]
    else:
        psf, noise = gaussian_psf(3.0, m=9), 1e-3
        bcs = ["periodic", "reflective", "antireflective", "hoc-cosine", "hoc-fourier"]
    scene = boundary_signal(256, psf.m)
    rows = compare_boundary_conditions(scene, psf, bcs, noise=noise, seed=args.seed,
                                       smoother="laplacian")
    print(f"{'bc':>15} {'min RRE':>10} {'mu_opt':>10} {'mu_GCV':>10} {'RRE(GCV)':>10}")
    for r in rows:
        print(f"{r.bc:>15} {r.min_rre:10.5f} {r.mu_opt:10.3g} {r.mu_gcv:10.3g} {r.rre_gcv:10.5f}")
    if args.out:
        io.write_csv(args.out, ["bc", "min_rre", "mu_opt", "mu_gcv", "rre_gcv"],
                     [(r.bc, r.min_rre, r.mu_opt, r.mu_gcv, r.rre_gcv) for r in rows])


if __name__ == "__main__":
    main()
