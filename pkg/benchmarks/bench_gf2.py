"""Compare the compiled and numpy GF(2) elimination kernels on grid Laplacians.

    python benchmarks/bench_gf2.py --grids 10,50,100 --repeat 3
"""

from __future__ import annotations

import argparse
import statistics
from collections import defaultdict

from medialmu import gf2
from medialmu.cli import bench_rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--grids", default="10,50,100")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.grids.split(",")]
    rows = bench_rows(sizes, args.repeat, sorted(gf2.KERNELS))

    by = defaultdict(list)
    nullities = defaultdict(set)
    for r in rows:
        by[r["n"], r["backend"]].append(r["elim_ms"])
        nullities[r["n"]].add(r["nullity"])
    print(f"{'n':>5} {'backend':>9} {'median elim ms':>15} {'nullity':>8}")
    for (n, backend), times in sorted(by.items()):
        print(f"{n:>5} {backend:>9} {statistics.median(times):>15.2f} {sorted(nullities[n])[0]:>8}")
    for n, vals in nullities.items():
        if len(vals) != 1:
            raise SystemExit(f"backends disagree on n={n}: {vals}")
    if "compiled" in gf2.KERNELS:
        for n in sizes:
            ratio = statistics.median(by[n, "python"]) / statistics.median(by[n, "compiled"])
            print(f"n={n}: compiled is {ratio:.1f}x faster")


if __name__ == "__main__":
    main()
