"""Sweep random Blaschke products and compare the two-symmetry solution space with the TTO space.

    python scripts/theorem_sweep.py --trials 25 --max-degree 6 --out sweep.csv
"""

import argparse
import csv
import sys
import time

import numpy as np

from ttosym.modelspace import build_model_space
from ttosym.sampling import random_blaschke
from ttosym.tto import theorem_check


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-modulus", type=float, default=0.9)
    p.add_argument("--grid-size", type=int, default=2048)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None, help="optional CSV path")
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    rows = []
    t0 = time.perf_counter()
    for n in range(2, args.max_degree + 1):
        for trial in range(args.trials):
            u = random_blaschke(rng, n, args.max_modulus, repeat=trial % 3 == 0)
            space = build_model_space(u, args.grid_size)
            for a in dict.fromkeys(u.zeros):
                r = theorem_check(space, a)
                rows.append({"degree": n, "trial": trial, "a_re": a.real, "a_im": a.imag, **r.as_dict()})
        worst = max(r["projector_distance"] for r in rows if r["degree"] == n)
        print(f"degree {n}: {sum(r['degree'] == n for r in rows)} pairs, max distance {worst:.2e}")
    print(f"{len(rows)} pairs in {time.perf_counter() - t0:.1f}s")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    bad = [r for r in rows if r["dim_S"] != r["dim_T"] or r["projector_distance"] >= 1e-7]
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
