"""Residuals of the unitary omega_a over random Blaschke products and random points a.

    python scripts/moebius_sweep.py --trials 10 --max-degree 5
"""

import argparse
import sys

import numpy as np

from ttosym.modelspace import build_model_space
from ttosym.moebius import crofoot_report
from ttosym.sampling import random_blaschke, random_disc_points


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--max-a", type=float, default=0.7)
    p.add_argument("--grid-size", type=int, default=2048)
    p.add_argument("--seed", type=int, default=4)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    worst_all = 0.0
    for n in range(1, args.max_degree + 1):
        worst = np.zeros(3)
        for _ in range(args.trials):
            space = build_model_space(random_blaschke(rng, n), args.grid_size)
            a = complex(random_disc_points(rng, 1, args.max_a)[0])
            r = crofoot_report(space, a)
            worst = np.maximum(worst, [r.unitarity, r.intertwining, r.transport])
        print(f"degree {n}: unitarity {worst[0]:.1e}  intertwining {worst[1]:.1e}  transport {worst[2]:.1e}")
        worst_all = max(worst_all, worst.max())
    return 0 if worst_all < 1e-7 else 1


if __name__ == "__main__":
    sys.exit(main())
