"""Print IH of the suspended torus for every named perversity, with timings."""
from __future__ import annotations

import argparse
import time

from ihtools import corpus
from ihtools.complex import barycentric_subdivide
from ihtools.ichains import ih_betti
from ihtools.perversity import LOG, MIDDLE, TOP, UPPER, ZERO


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--subdivide", type=int, default=0, help="barycentric subdivisions to apply first")
    args = ap.parse_args()
    x, s = corpus.suspended_torus()
    for _ in range(args.subdivide):
        x, s = barycentric_subdivide(x, s)
    print(f"f-vector {x.f_vector()}")
    for p in (ZERO, MIDDLE, UPPER, LOG, TOP):
        start = time.perf_counter()
        dims = tuple(ih_betti(x, s, p).dims)
        print(f"{p.name:>7}: {dims}  ({time.perf_counter() - start:.2f} s)")


if __name__ == "__main__":
    main()
