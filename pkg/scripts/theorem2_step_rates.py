"""How fast the paraboloid flow leaves its starting body.

For random line-free planar bodies, prints the asymptotic distance between
K_0 and K_h for shrinking h, the local exponent log(d_1/d_2)/log(h_1/h_2),
and the same quantity around t = 1/2.  An exponent of 1 means step
distances halve when the step count doubles.
"""

import argparse

import numpy as np

from recess import bodies as bd
from recess import flows as fl
from recess import metrics as mt
from recess.instances import random_k_plus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bodies", type=int, default=20)
    ap.add_argument("--seed", type=int, default=4)
    ap.add_argument("--resolution", type=int, default=16)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    cfg = fl.ModelBodyConfig(resolution=args.resolution)
    hs = [0.04, 0.02, 0.01, 0.005, 0.0025]
    print("body,rays,where,exponents")
    for i in range(args.bodies):
        K = random_k_plus(rng, 2)
        u = bd.central_direction(K)
        for label, t0, sign in (("start", 0.0, 1.0), ("middle", 0.5, -1.0)):
            base = fl.theorem2_flow(K, t0, cfg, u=u)
            d = [mt.asymptotic_distance(base, fl.theorem2_flow(K, t0 + sign * h, cfg, u=u), mt.COARSE) for h in hs]
            ex = [np.log(d[k] / d[k + 1]) / np.log(2.0) for k in range(len(hs) - 1)]
            print(f"{i},{K.rays.shape[0]},{label}," + " ".join(f"{e:.2f}" for e in ex))


if __name__ == "__main__":
    main()
