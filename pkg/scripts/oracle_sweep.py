#!/usr/bin/env python3
"""Randomized stress sweep: pipeline Betti numbers against both oracles.

Example:
    python3 scripts/oracle_sweep.py --count 500 --seed 3 --max-dim 4 --max-r 8
"""

import argparse
import sys
import time
from random import Random

from mvbetti import compute_betti, degeneration_check
from mvbetti.generate import random_affine_arrangement


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-dim", type=int, default=4)
    parser.add_argument("--max-r", type=int, default=7)
    parser.add_argument("--cap", type=int, default=24)
    args = parser.parse_args()

    rng = Random(args.seed)
    mismatches = 0
    start = time.monotonic()
    for trial in range(args.count):
        n = rng.randint(1, args.max_dim)
        r = rng.randint(1, args.max_r)
        arr = random_affine_arrangement(rng, n, r)
        rep = compute_betti(arr, cap=args.cap)
        ok = rep.agreement and degeneration_check(rep.e2)
        if not ok:
            mismatches += 1
            print(f"MISMATCH at trial {trial}: n={n} r={r}")
            print("  hyperplanes:", "; ".join(str(h) for h in arr.hyperplanes))
            print(f"  pipeline {rep.betti}  mobius {rep.oracle_betti}  whitney {rep.oracle_whitney}")
    elapsed = time.monotonic() - start
    print(f"{args.count} arrangements, {mismatches} mismatches, {elapsed:.2f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
