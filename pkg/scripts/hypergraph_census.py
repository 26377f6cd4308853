"""Simplex census of random labelled hypergraphs.

Checks, per instance, that every feasible arrangement in the label product
carries exactly N^((q-1)(q-2)) pairwise edge-disjoint simplices.

    python3 scripts/hypergraph_census.py --q 3 --N 5 --density 0.5 --seeds 5
"""

import argparse
import csv
import sys

from symprog.encode import build_hypergraph, edge_disjoint, enumerate_simplices, feasible_in_product, group_by_labels
from symprog.generate import random_label_sets


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--N", type=int, default=5)
    ap.add_argument("--density", type=float, default=0.5)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--method", choices=["scan", "extend"], default="extend")
    args = ap.parse_args(argv)

    per = args.N ** ((args.q - 1) * (args.q - 2))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["seed", "label_set_sizes", "feasible_arrangements", "simplices", "per_arrangement_ok", "edge_disjoint"])
    for seed in range(args.seeds):
        sets = random_label_sets(args.q, args.N, args.density, seed)
        H = build_hypergraph(sets, args.q, args.N)
        simplices = enumerate_simplices(H, args.method)
        groups = group_by_labels(simplices)
        ok = len(groups) == len(feasible_in_product(H)) and all(len(g) == per for g in groups.values())
        disjoint = all(edge_disjoint(g) for g in groups.values())
        w.writerow([seed, " ".join(str(len(s)) for s in sets), len(groups), len(simplices), ok, disjoint])


if __name__ == "__main__":
    main()
