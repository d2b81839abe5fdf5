"""Build the three boundary-corrected transforms and check them on a small order.

Run: python3 demos/transforms_demo.py
"""

import numpy as np

from fastdeblur.oracle import dense_transform
from fastdeblur.transforms import BoundaryBasis, build_transform, transform_apply, transform_apply_inverse


def main(n=12, seed=0):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    for basis in BoundaryBasis:
        t = build_transform(basis, n)
        dense = dense_transform(basis.value, n)
        y = transform_apply(t, v)
        back = transform_apply_inverse(t, y)
        print(f"{basis.value:>15}: |Tv - dense| = {np.linalg.norm(y - dense @ v):.1e}, "
              f"|T^-1 T v - v| = {np.linalg.norm(back - v):.1e}, "
              f"cond(T) = {np.linalg.cond(dense):.1f}")
        print(f"{'':>15}  first column q = {np.array2string(t.q, precision=3)}")


if __name__ == "__main__":
    main()
