"""Compare link map, class lifting and cycle surgery on the corpus pairs."""
from __future__ import annotations

from ihtools import corpus, ichains as ic, surgery as sg
from ihtools.exactla import rank

PAIRS = {
    "suspended equator in suspended sphere": (lambda: corpus.suspended(corpus.octahedron_equator), corpus.suspended_sphere),
    "suspended factor circle in suspended torus": (lambda: corpus.suspended(corpus.torus7_factor_circle), corpus.suspended_torus),
    "suspended trivial circle in suspended torus": (lambda: corpus.suspended(corpus.torus7_trivial_circle), corpus.suspended_torus),
}


def main() -> None:
    for name, (build_x, build_y) in PAIRS.items():
        x, (y, sy) = build_x(), build_y()
        m, zero = ic.link_map(x, (y, sy), "N", ic.criterion_degree(*x, "N"))
        fc = ic.fundamental_class(*x)
        lifted = ic.lift_class(y, sy, y.chain(fc.degree, fc.terms))
        repaired = sg.repair_cycle(sg.SurgeryProblem(x, (y, sy), "N", fc))
        print(name)
        print(f"  link map {m.shape[0]}x{m.shape[1]}, rank {rank(m)}: {'zero' if zero else 'nonzero'}")
        print(f"  lift: {'found' if lifted is not None else 'obstructed'}")
        if repaired is None:
            print("  surgery: obstructed")
        else:
            print(f"  surgery: {len(repaired.cycle.terms)} simplices, allowable={repaired.allowable}")


if __name__ == "__main__":
    main()
