"""Write the test corpus as JSON documents into data/."""
from __future__ import annotations

import argparse
from pathlib import Path

from ihtools import conecalc, corpus
from ihtools.documents import dump, emit_complex, emit_lefschetz, emit_pair, emit_polar
from ihtools.exactla import RationalMatrix

COMPLEXES = {
    "point": lambda: corpus.point("x+"),
    "hexagon": corpus.polygon,
    "tetrahedron": corpus.tetrahedron_boundary,
    "octahedron": corpus.octahedron,
    "equator": corpus.octahedron_equator,
    "torus": corpus.torus7,
    "factor_circle": corpus.torus7_factor_circle,
    "trivial_circle": corpus.torus7_trivial_circle,
    "klein": corpus.klein_bottle,
    "crossing_lines": corpus.wedge_of_spheres,
    "susp_circle": corpus.suspended_circle,
    "susp_sphere": corpus.suspended_sphere,
    "susp_equator": lambda: corpus.suspended(corpus.octahedron_equator),
    "susp_torus": corpus.suspended_torus,
    "susp_factor_circle": lambda: corpus.suspended(corpus.torus7_factor_circle),
    "susp_trivial_circle": lambda: corpus.suspended(corpus.torus7_trivial_circle),
}


def _m(rows):
    return RationalMatrix.from_rows(rows)


def graded_documents() -> dict[str, dict]:
    line = conecalc.projective_line()
    plane = conecalc.LefschetzData((1, 0, 1, 0, 1), {2: _m([[1]]), 4: _m([[1]])})
    bad = conecalc.PairMorphismData(
        conecalc.LefschetzData((1,)),
        conecalc.LefschetzData((1, 0, 1), {2: _m([[0]])}),
        {0: _m([[1]])},
    )
    return {
        "point_in_line": emit_pair(conecalc.point_in_line()),
        "two_points_in_line": emit_pair(conecalc.two_points_in_line()),
        "elliptic_in_quadric": emit_pair(conecalc.elliptic_in_quadric()),
        "bad_table": emit_pair(bad),
        "line": emit_lefschetz(line),
        "quadric": emit_lefschetz(conecalc.quadric_surface()),
        "plane_hl": {
            "x": emit_lefschetz(line),
            "y": emit_lefschetz(plane),
            "i_star": {"0": [["1"]], "2": [["1"]]},
            "n": 2,
            "link_middle_map_is_zero": True,
        },
        "plane_polar": emit_polar(conecalc.projective_plane_polar()),
        "conic_polar": emit_polar(conecalc.conic_polar()),
        "cubic_polar": emit_polar(conecalc.cubic_polar()),
    }


def malformed_documents() -> dict[str, dict]:
    return {
        "bad_unknown_vertex": {"vertices": ["a", "b"], "simplices": [["a", "q"]], "filtration": []},
        "bad_duplicate": {"vertices": ["a", "b", "c"], "simplices": [["a", "b"], ["b", "a"]], "filtration": []},
        "bad_dangling": {
            "vertices": ["a", "b", "c", "d", "e"],
            "simplices": [["a", "b", "c"], ["b", "c", "d"], ["d", "e"]],
            "filtration": [],
        },
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in COMPLEXES.items():
        (out / f"{name}.json").write_text(dump(emit_complex(*build())))
    for name, doc in {**graded_documents(), **malformed_documents()}.items():
        (out / f"{name}.json").write_text(dump(doc))
    print(f"wrote {len(COMPLEXES) + len(graded_documents()) + len(malformed_documents())} documents to {out}")


if __name__ == "__main__":
    main()
