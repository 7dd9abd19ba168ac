"""Trace one of the three flows on a body file or a built-in example.

Prints the trace CSV (t, tau, nc_radius, step_da) to stdout.
"""

import argparse
import sys

from recess import bodies as bd
from recess import cli
from recess import flows as fl
from recess import metrics as mt
from recess.bodies import VBody

EXAMPLES = {
    "wedge": VBody(2, [[0, 0]], [[-1, 0], [0, 1]]),
    "vee": VBody(2, [[0, 0]], [[1, 1], [-1, 1]]),
    "slab": VBody(2, [[0, 0], [0, 1]], None, [[1, 0]]),
    "octant": VBody(3, [[0, 0, 0]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--body", help="body JSON file")
    src.add_argument("--example", choices=sorted(EXAMPLES))
    ap.add_argument("--theorem", type=int, choices=(1, 2, 3), default=1)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--resolution", type=int, default=32)
    ap.add_argument("--no-distances", action="store_true", help="skip the asymptotic step distances")
    args = ap.parse_args()
    K = cli._read_body(args.body) if args.body else EXAMPLES[args.example]
    if args.theorem in (1, 2):
        K = fl.apex_translation_flow(K, 1.0)
    print(f"# {bd.classify(K)}", file=sys.stderr)
    trace = fl.run_trace(K, args.theorem, args.steps, fl.ModelBodyConfig(resolution=args.resolution), mt.COARSE,
                         step_distance=not args.no_distances)
    sys.stdout.write(cli.trace_csv(trace))


if __name__ == "__main__":
    main()
