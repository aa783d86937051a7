"""Plan recolorings between random colorings of random (P5, diamond)-free graphs."""

import argparse
import random

from recolor_lab.coloring import Coloring, chromatic_number, optimal_coloring
from recolor_lab.lifting import plan_recoloring
from recolor_lab.patterns import P5_DIAMOND_FREE
from recolor_lab.verify import random_class_corpus


def shuffled_optimal(g, k, rng):
    perm = rng.sample(range(1, k + 1), k)
    return Coloring(tuple(perm[c - 1] for c in optimal_coloring(g).assignment), k)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    for g in random_class_corpus(P5_DIAMOND_FREE, args.n, args.count, args.seed).graphs:
        ell = chromatic_number(g) + 1
        a, b = shuffled_optimal(g, ell, rng), shuffled_optimal(g, ell, rng)
        sched, trace = plan_recoloring(g, ell, a, b)
        print(f"n={g.n} m={g.m} ell={ell} steps={len(sched):3d} rules={sorted(set(trace.rules()))}")


if __name__ == "__main__":
    main()
