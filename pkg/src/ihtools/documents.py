"""JSON documents for complexes, chains, matrices and graded data.

Rationals are written as strings in lowest terms ("3", "-1/2"); inputs may
also use JSON integers. Matrices are written as ``{"shape": [r, c], "rows":
[[...], ...]}`` so that empty shapes survive a round trip; a bare list of rows
is accepted on input when the shape is implied by surrounding dimensions.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .complex import Chain, SimplicialComplex, Stratification
from .conecalc import LefschetzData, PairMorphismData, PolarData
from .exactla import GradedVectorSpace, RationalMatrix


class DocumentError(ValueError):
    pass


# --- scalars ---------------------------------------------------------------


def format_rational(v) -> str:
    return str(Fraction(v))


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and "." not in value and "e" not in value.lower():
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise DocumentError(f"{where}: not an exact rational: {value!r}")


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise DocumentError(msg)


def load_json(text: str, where: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{where}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- complexes -------------------------------------------------------------


def _simplex_list(raw: Any, where: str, known: dict[str, int]) -> list[tuple[str, ...]]:
    _expect(isinstance(raw, list), f"{where}: expected a list of simplices")
    out, seen = [], {}
    for i, s in enumerate(raw):
        here = f"{where}[{i}]"
        _expect(isinstance(s, list) and s and all(isinstance(v, str) for v in s), f"{here}: expected a non-empty list of vertex names")
        for v in s:
            _expect(v in known, f"{here}: unknown vertex {v!r}")
        _expect(len(set(s)) == len(s), f"{here}: repeated vertex in simplex")
        key = tuple(sorted(s, key=known.__getitem__))
        _expect(key not in seen, f"{here}: duplicate of simplices[{seen.get(key)}]" if where == "simplices" else f"{here}: duplicate simplex")
        seen[key] = i
        out.append(key)
    return out


def parse_complex(doc: Any) -> tuple[SimplicialComplex, Stratification]:
    _expect(isinstance(doc, dict), "complex document must be an object")
    extra = set(doc) - {"vertices", "simplices", "filtration"}
    _expect(not extra, f"unknown field(s): {', '.join(sorted(extra))}")
    verts = doc.get("vertices")
    _expect(isinstance(verts, list) and all(isinstance(v, str) for v in verts), "vertices: expected a list of strings")
    order: dict[str, int] = {}
    for i, v in enumerate(verts):
        _expect(v not in order, f"vertices[{i}]: duplicate vertex {v!r}")
        order[v] = i
    simps = _simplex_list(doc.get("simplices", []), "simplices", order)
    x = SimplicialComplex.from_simplices(verts, simps)
    filt = doc.get("filtration", [])
    _expect(isinstance(filt, list), "filtration: expected a list")
    members = []
    for j, m in enumerate(filt):
        here = f"filtration[{j}]"
        _expect(isinstance(m, dict) and set(m) <= {"codim", "simplices"}, f"{here}: expected an object with codim and simplices")
        c = m.get("codim")
        _expect(isinstance(c, int) and not isinstance(c, bool), f"{here}.codim: expected an integer")
        ms = _simplex_list(m.get("simplices", []), f"{here}.simplices", order)
        for s in ms:
            _expect(s in x.simplices, f"{here}.simplices: {list(s)} is not a simplex of the complex")
        members.append((c, ms))
    return x, Stratification.build(x, members, check=False)


def parse_complex_document(text: str) -> tuple[SimplicialComplex, Stratification]:
    return parse_complex(load_json(text))


def _maximal_of(x: SimplicialComplex, simps) -> list[list[str]]:
    simps = set(simps)
    covered = set()
    for s in simps:
        for k in range(len(s)):
            covered.add(s[:k] + s[k + 1:])
    top = [s for s in simps if s not in covered]
    top.sort(key=lambda s: (len(s), x.sort_key(s)))
    return [list(s) for s in top]


def emit_complex(x: SimplicialComplex, s: Stratification) -> dict:
    return {
        "vertices": list(x.vertices),
        "simplices": _maximal_of(x, x.simplices),
        "filtration": [{"codim": m.codim, "simplices": _maximal_of(x, m.simplices)} for m in s.members],
    }


def normalize_complex_document(doc: dict) -> dict:
    """Canonical form of a complex document, computed without building the model.

    Simplices are sorted by vertex position, faces of other listed simplices
    are dropped, unused vertices appear as 0-simplices, and lists are ordered
    by (dimension, vertex positions).
    """
    verts = list(doc["vertices"])
    pos = {v: i for i, v in enumerate(verts)}

    def canon(simps, add_vertices):
        keys = {tuple(sorted(s, key=pos.__getitem__)) for s in simps}
        if add_vertices:
            used = {v for k in keys for v in k}
            keys |= {(v,) for v in verts if v not in used}
        sets = [frozenset(k) for k in keys]
        top = [k for k in keys if not any(frozenset(k) < o for o in sets)]
        top.sort(key=lambda k: (len(k), [pos[v] for v in k]))
        return [list(k) for k in top]

    return {
        "vertices": verts,
        "simplices": canon(doc.get("simplices", []), True),
        "filtration": [
            {"codim": m["codim"], "simplices": canon(m.get("simplices", []), False)} for m in doc.get("filtration", [])
        ],
    }


# --- chains ----------------------------------------------------------------


def parse_chain(doc: Any, x: SimplicialComplex) -> Chain:
    _expect(isinstance(doc, dict), "chain document must be an object")
    d = doc.get("degree")
    _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 0, "degree: expected a non-negative integer")
    terms = doc.get("terms")
    _expect(isinstance(terms, list), "terms: expected a list of [simplex, coefficient] pairs")
    acc = {}
    for i, t in enumerate(terms):
        here = f"terms[{i}]"
        _expect(isinstance(t, list) and len(t) == 2 and isinstance(t[0], list), f"{here}: expected [simplex, coefficient]")
        s = tuple(t[0])
        _expect(all(isinstance(v, str) for v in s), f"{here}: simplex must list vertex names")
        _expect(len(s) == d + 1, f"{here}: simplex has dimension {len(s) - 1}, expected {d}")
        for v in s:
            _expect(v in x.order, f"{here}: unknown vertex {v!r}")
        can, _ = x.canonical(s)
        _expect(can in x.simplices, f"{here}: {list(s)} is not a simplex of the complex")
        _expect(s not in acc, f"{here}: duplicate simplex")
        acc[s] = parse_rational(t[1], here)
    return x.chain(d, acc)


def emit_chain(c: Chain, x: SimplicialComplex | None = None) -> dict:
    return {"degree": c.degree, "terms": [[list(s), format_rational(v)] for s, v in c.items(x)]}


# --- matrices and graded data ----------------------------------------------


def emit_matrix(m: RationalMatrix) -> dict:
    return {"shape": [m.rows, m.cols], "rows": [[format_rational(v) for v in row] for row in m.to_rows()]}


def parse_matrix(raw: Any, where: str, shape: tuple[int, int] | None = None) -> RationalMatrix:
    if isinstance(raw, dict):
        sh = raw.get("shape")
        _expect(isinstance(sh, list) and len(sh) == 2 and all(isinstance(n, int) and n >= 0 for n in sh), f"{where}.shape: expected [rows, cols]")
        rows_raw = raw.get("rows", [])
        declared = (sh[0], sh[1])
    else:
        rows_raw = raw
        declared = None
    _expect(isinstance(rows_raw, list) and all(isinstance(r, list) for r in rows_raw), f"{where}: expected a list of rows")
    rows = [[parse_rational(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows_raw)]
    widths = {len(r) for r in rows}
    _expect(len(widths) <= 1, f"{where}: rows have different lengths")
    if declared is None:
        if shape is not None:
            declared = shape
        else:
            declared = (len(rows), widths.pop() if widths else 0)
    r, c = declared
    _expect(len(rows) == r and all(len(row) == c for row in rows), f"{where}: expected shape {r}x{c}")
    return RationalMatrix.from_rows(rows, c) if r else RationalMatrix.zeros(0, c)


def _dims(raw: Any, where: str) -> GradedVectorSpace:
    _expect(isinstance(raw, list) and all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in raw), f"{where}: expected a list of non-negative integers")
    return GradedVectorSpace(tuple(raw))


def _degree_map(raw: Any, where: str, shape_of) -> dict[int, RationalMatrix]:
    if raw is None:
        return {}
    _expect(isinstance(raw, dict), f"{where}: expected an object keyed by degree")
    out = {}
    for k, v in raw.items():
        try:
            deg = int(k)
        except ValueError:
            raise DocumentError(f"{where}: degree key {k!r} is not an integer") from None
        out[deg] = parse_matrix(v, f"{where}.{k}", shape_of(deg))
    return out


def parse_lefschetz(doc: Any, where: str = "lefschetz") -> LefschetzData:
    _expect(isinstance(doc, dict), f"{where}: expected an object")
    dims = _dims(doc.get("dims"), f"{where}.dims")
    lam = _degree_map(doc.get("lambda"), f"{where}.lambda", lambda i: (dims[i - 2], dims[i]))
    return LefschetzData(dims, lam)


def emit_lefschetz(d: LefschetzData) -> dict:
    return {"dims": list(d.dims), "lambda": {str(i): emit_matrix(m) for i, m in d.lam.items()}}


def parse_pair(doc: Any) -> PairMorphismData:
    _expect(isinstance(doc, dict), "pair document must be an object")
    x = parse_lefschetz(doc.get("x"), "x")
    y = parse_lefschetz(doc.get("y"), "y")
    alpha = _degree_map(doc.get("alpha"), "alpha", lambda i: (y.dims[i], x.dims[i]))
    return PairMorphismData(x, y, alpha)


def emit_pair(d: PairMorphismData) -> dict:
    return {"x": emit_lefschetz(d.x), "y": emit_lefschetz(d.y), "alpha": {str(i): emit_matrix(m) for i, m in d.alpha.items()}}


def parse_polar(doc: Any) -> PolarData:
    _expect(isinstance(doc, dict), "polar document must be an object")
    n = doc.get("n")
    _expect(isinstance(n, int) and n >= 0, "n: expected a non-negative integer")
    classes = doc.get("classes")
    _expect(isinstance(classes, list), "classes: expected a list of coordinate vectors")
    cls = tuple(tuple(parse_rational(v, f"classes[{j}][{i}]") for i, v in enumerate(c)) for j, c in enumerate(classes))
    h = _degree_map(doc.get("h_action"), "h_action", lambda d: None)
    return PolarData(n, cls, h)


def emit_polar(p: PolarData) -> dict:
    return {
        "n": p.n,
        "classes": [[format_rational(v) for v in c] for c in p.classes],
        "h_action": {str(d): emit_matrix(m) for d, m in p.h_action.items()},
    }


def parse_hl(doc: Any) -> dict:
    _expect(isinstance(doc, dict), "document must be an object")
    x = parse_lefschetz(doc.get("x"), "x")
    y = parse_lefschetz(doc.get("y"), "y")
    n = doc.get("n")
    _expect(isinstance(n, int) and n >= 1, "n: expected a positive integer")
    z = doc.get("link_middle_map_is_zero")
    _expect(isinstance(z, bool), "link_middle_map_is_zero: expected true or false")
    i_star = _degree_map(doc.get("i_star"), "i_star", lambda i: (y.dims[i], x.dims[i]))
    return {"x": x, "y": y, "n": n, "link_middle_map_is_zero": z, "i_star": i_star}
