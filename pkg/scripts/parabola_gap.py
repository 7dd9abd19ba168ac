"""Parabolas {y >= t x^2} approach the upper half-plane in d_bh but not in d_a.

Their recession cones stay the half-line through e2, which sits at distance
sqrt(2) from the half-plane on the sphere.
"""

import argparse

from recess import metrics as mt
from recess.bodies import VBody
from recess.instances import parabola_body


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--decades", type=int, default=4, help="sweep t = 1, 0.1, ..., 10**-decades")
    ap.add_argument("--half-width", type=float, default=1e5, help="largest sampled |x| on the parabola")
    args = ap.parse_args()
    H2 = VBody(2, [[0, 0]], [[0, 1]], [[1, 0]])
    print("t,d_bh,d_rc,d_a")
    for k in range(args.decades + 1):
        t = 10.0**-k
        r = mt.distance_report(parabola_body(t, args.half_width), H2, mt.COARSE)
        print(f"{t:g},{r['d_bh']:.6g},{r['d_rc']:.6g},{r['d_a']:.6g}")


if __name__ == "__main__":
    main()
