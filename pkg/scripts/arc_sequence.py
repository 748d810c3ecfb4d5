"""Trace the shrinking-arc sequence mu_n for an atomic measure and print the decay diagnostics.

    python scripts/arc_sequence.py --measure three --max-n 400 --out trace.csv
"""

import argparse
import csv
import math
import sys

import numpy as np

from ttosym.inner import AtomicMeasure
from ttosym.singular_limits import (build_sequence, pointwise_limit_check, ratio_limit_check,
                                    uniform_bound_check, weak_convergence_check)

MEASURES = {
    "single": AtomicMeasure(((0.0, 1.0),)),
    "three": AtomicMeasure(((0.0, 1.0), (2 * math.pi / 3, 0.5), (4 * math.pi / 3, 0.25))),
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--measure", choices=sorted(MEASURES), default="single")
    p.add_argument("--max-n", type=int, default=400)
    p.add_argument("--g-pole", type=float, default=None, help="use g(z) = 1/(1 - p z) with real |p| < 1 (default g = 1)")
    p.add_argument("--out", default=None)
    args = p.parse_args(argv)

    nu = MEASURES[args.measure]
    seq = build_sequence(nu, 0.0, args.max_n)
    g = np.ones_like if args.g_pole is None else (lambda z: 1 / (1 - args.g_pole * z))
    pw, ra = pointwise_limit_check(seq), ratio_limit_check(seq)
    ub, wk = uniform_bound_check(seq, nu), weak_convergence_check(seq, g, nu)

    print(f"pointwise: slope {pw.decay_slope:.3f}, origin slope {pw.origin_slope:.3f}, "
          f"final max {pw.final_max:.3e}")
    print(f"ratio: slope {ra.decay_slope:.3f}, remainder ratio {ra.remainder_ratio:.3f}")
    print(f"uniform: statistic {ub.statistic:.3f}, bound {ub.bound:.1f}")
    print(f"weak: sup norm {wk.sup_norm:.3f}, cap {wk.norm_cap:.1f}, final pointwise max "
          f"{wk.final_pointwise_max:.3f} ({wk.final_pointwise_over_mass:.1f} x mass)")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "mass", "pointwise_max", "ratio_max", "uniform_stat", "weak_pointwise_max"])
            for i, item in enumerate(seq):
                w.writerow([item.n, item.mass, pw.errors[i].max(), ra.errors[i].max(), ub.per_n[i],
                            wk.pointwise_errors[i].max()])
    return 0


if __name__ == "__main__":
    sys.exit(main())
