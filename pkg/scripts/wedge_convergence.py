"""Bounded-Hausdorff distance from the wedges {x <= t, y >= 0} to the upper half-plane.

The central direction stays at (-1, 1)/sqrt(2) for every t while d_bh
tends to 0, so cd is not continuous for that topology.
"""

import argparse

from recess import bodies as bd
from recess import metrics as mt
from recess.bodies import VBody


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exponent", type=int, default=7, help="sweep t = 1, 2, ..., 2**k")
    ap.add_argument("--grid-directions", type=int, default=720)
    ap.add_argument("--radial-levels", type=int, default=48)
    args = ap.parse_args()
    cfg = mt.MetricsConfig(grid_directions=args.grid_directions, radial_levels=args.radial_levels)
    H2 = VBody(2, [[0, 0]], [[0, 1]], [[1, 0]])
    print("t,d_bh,cd_x,cd_y")
    for k in range(args.max_exponent + 1):
        K = VBody(2, [[2.0**k, 0]], [[-1, 0], [0, 1]])
        cd = bd.central_direction(K)
        print(f"{2**k},{mt.bounded_hausdorff(K, H2, cfg):.6g},{cd[0]:.12g},{cd[1]:.12g}")


if __name__ == "__main__":
    main()
