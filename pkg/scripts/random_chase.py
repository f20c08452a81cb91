"""Run the link-map chase on random Hard Lefschetz data and tally outcomes."""
from __future__ import annotations

import argparse
import random
from collections import Counter

from ihtools import conecalc as cc


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-dim", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally: Counter = Counter()
    for _ in range(args.count):
        d, k = cc.random_lefschetz_pair(rng, max_dim=args.max_dim)
        res = cc.link_map_chase(d, k)
        tally["vanishes" if res.vanishes else "nonzero"] += 1
        tally["alpha commutes" if d.commutes() else "alpha does not commute"] += 1
    for key, n in sorted(tally.items()):
        print(f"{key}: {n}")


if __name__ == "__main__":
    main()
