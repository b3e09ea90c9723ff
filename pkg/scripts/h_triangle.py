#!/usr/bin/env python3
"""Print the h-binomial triangle symbolically and at a few values of h,
next to the classical and falling-factorial triangles it should reduce to."""

import argparse
from math import comb, factorial

from hplane.binomials import h_binomial_by_recurrence


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--h", action="append", default=None, help="extra rational values of h")
    args = ap.parse_args()

    table = h_binomial_by_recurrence(args.max_n)
    print("symbolic h:")
    for n in range(args.max_n + 1):
        print(f"  {n:2d}: " + " | ".join(str(c) for c in table.row(n)))

    for h in ["0", "1"] + (args.h or []):
        rows = table.evaluate(h=h)
        print(f"h = {h}:")
        for n in range(args.max_n + 1):
            values = [str(c) for c in rows.row(n)]
            note = ""
            if h == "0":
                note = "  ok" if values == [str(comb(n, k)) for k in range(n + 1)] else "  MISMATCH"
            elif h == "1":
                ref = [str(factorial(n) // factorial(n - k)) for k in range(n + 1)]
                note = "  ok" if values == ref else "  MISMATCH"
            print(f"  {n:2d}: " + " ".join(values) + note)


if __name__ == "__main__":
    main()
