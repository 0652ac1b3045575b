"""Small-world verdicts for ring lattices with a growing number of shortcuts,
plus a size-matched random graph."""

import argparse
from dataclasses import replace

from solonet import random_graph, small_world_assessment
from solonet.baselines import format_table, ring_lattice


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--replicates", type=int, default=100)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    reports = []
    for step in (0, 20, 10, 5, 2):
        shortcuts = [(i, (i + 37) % args.n) for i in range(0, args.n, step)] if step else []
        net = ring_lattice(args.n, args.k, shortcuts)
        rep = small_world_assessment(net, args.replicates, args.seed)
        reports.append(replace(rep, song=f"ring k={args.k}, {len(shortcuts)} shortcuts"))
    m = args.n * args.k // 2
    rep = small_world_assessment(random_graph(args.n, m, 123), args.replicates, args.seed)
    reports.append(replace(rep, song=f"G({args.n}, {m})"))
    print(format_table(reports))


if __name__ == "__main__":
    main()
