"""Mean clustering and distance of G(n, m) against the analytic expectations,
for a range of sizes at fixed mean degree."""

import argparse
import math
import statistics

from solonet.baselines import random_graph_stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=float, default=6.0, help="mean degree 2m/n")
    ap.add_argument("--replicates", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>5} {'m':>6} {'cc':>8} {'p':>8} {'dist':>6} {'ln n/ln k':>9}")
    for n in (25, 50, 100, 200, 400):
        m = round(args.degree * n / 2)
        ccs, dists = random_graph_stats(n, m, args.replicates, args.seed)
        p = 2 * m / (n * (n - 1))
        expected = math.log(n) / math.log(2 * m / n)
        print(f"{n:>5} {m:>6} {statistics.mean(ccs):8.4f} {p:8.4f} {statistics.mean(dists):6.2f} {expected:9.2f}")


if __name__ == "__main__":
    main()
