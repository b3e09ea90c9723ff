#!/usr/bin/env python3
"""Time naive (single-pair) vs batched normalisation of (x+y)^n; prints CSV.

    python scripts/bench_strategies.py --max-n 14 --plane sym,sym --plane 1,sym
"""

import argparse
import csv
import sys
import time

from hplane.algebra import PlaneSpec, nc_pow, x_plus_y
from hplane.cli import parse_param


def plane_arg(text):
    q, h = text.split(",")
    return PlaneSpec(parse_param(q), parse_param(h))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--plane", type=plane_arg, action="append")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    planes = args.plane or [PlaneSpec.symbolic(), PlaneSpec.h_plane()]

    out = csv.writer(sys.stdout)
    out.writerow(["q", "h", "n", "strategy", "best_seconds", "terms"])
    for plane in planes:
        for n in range(args.max_n + 1):
            results = {}
            for strategy in ("naive", "batched"):
                best = float("inf")
                for _ in range(args.repeat):
                    start = time.perf_counter()
                    p = nc_pow(x_plus_y(), n, plane, strategy)
                    best = min(best, time.perf_counter() - start)
                results[strategy] = p
                out.writerow([plane.label("q"), plane.label("h"), n, strategy, f"{best:.6f}", len(p)])
            assert results["naive"] == results["batched"], (plane, n)


if __name__ == "__main__":
    main()
