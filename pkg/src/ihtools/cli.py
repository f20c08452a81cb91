"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed input, 2 a precondition of
the requested computation fails (invalid stratification, Hard Lefschetz
input, non-cone-shaped cycle, flag obstruction, ...).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable

from . import conecalc, documents as docs, ichains, surgery
from .complex import ComplexError, barycentric_subdivide, cone, link, suspension, validate
from .exactla import LinearAlgebraError
from .perversity import Perversity, PerversityError, parse as parse_perversity


class InputError(Exception):
    pass


class Precondition(Exception):
    pass


class Report:
    def __init__(self, data: dict, lines: list[str]):
        self.data = data
        self.lines = lines


# --- helpers ----------------------------------------------------------------


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return docs.load_json(text, path)
    except docs.DocumentError as exc:
        raise InputError(str(exc)) from None


def _complex(path: str):
    try:
        return docs.parse_complex(_read(path))
    except (docs.DocumentError, ComplexError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _parsed(path: str, parser: Callable):
    try:
        return parser(_read(path))
    except (docs.DocumentError, conecalc.ConeCalcError, LinearAlgebraError) as exc:
        if isinstance(exc, conecalc.PreconditionError):
            raise
        raise InputError(f"{path}: {exc}") from None


def _perversity(text: str) -> Perversity:
    try:
        return parse_perversity(text)
    except PerversityError as exc:
        raise InputError(str(exc)) from None


def _perversity_table(p: Perversity, max_codim: int) -> dict:
    values = {}
    for c in range(2, max(max_codim, 2) + 1):
        try:
            values[str(c)] = p.value(c)
        except PerversityError:
            continue
    return {"name": p.name, "values": values}


def _table_line(table: dict) -> str:
    vals = ", ".join(f"p({c})={v}" for c, v in sorted(table["values"].items(), key=lambda kv: int(kv[0])))
    return f"perversity {table['name']}: {vals}"


def _max_codim(*spaces) -> int:
    return max([x.dim + 1 for x, _ in spaces] + [m.codim for _, s in spaces for m in s.members])


def _dims_lines(title: str, dims) -> list[str]:
    return [title] + [f"  degree {i}: {d}" for i, d in enumerate(dims)]


def _matrix_lines(m) -> list[str]:
    if m.rows == 0 or m.cols == 0:
        return [f"  ({m.rows}x{m.cols} matrix)"]
    return ["  [" + " ".join(str(v) for v in row) + "]" for row in m.to_rows()]


def _check_valid(x, s) -> None:
    rep = validate(x, s)
    if not rep.clean:
        raise Precondition("invalid stratified complex: " + "; ".join(rep.faults))


def _chain_arg(path: str, x):
    try:
        return docs.parse_chain(_read(path), x)
    except (docs.DocumentError, ComplexError) as exc:
        raise InputError(f"{path}: {exc}") from None


# --- verbs --------------------------------------------------------------------


def cmd_validate(a) -> Report:
    x, s = _complex(a.complex)
    rep = validate(x, s)
    data = {"clean": rep.clean, "faults": list(rep.faults), "hints": list(rep.hints), "boundary": [list(f) for f in rep.boundary],
            "dim": x.dim, "f_vector": list(x.f_vector())}
    lines = [f"dimension {x.dim}, f-vector {tuple(x.f_vector())}", "clean" if rep.clean else "faults:"]
    lines += [f"  {f}" for f in rep.faults] + [f"hint: {h}" for h in rep.hints]
    if not rep.clean:
        raise Precondition("\n".join(lines))
    return Report(data, lines)


def cmd_betti(a) -> Report:
    x, s = _complex(a.complex)
    p = _perversity(a.perversity)
    if a.subdivide:
        x, s = barycentric_subdivide(x, s)
    rel = None
    if a.rel:
        rx, _ = _complex(a.rel)
        if not rx.is_subcomplex_of(x):
            raise Precondition("relative complex is not a subcomplex")
        rel = rx
    _check_valid(x, s)
    t = ichains.ih_betti(x, s, p, rel=rel)
    table = _perversity_table(p, _max_codim((x, s)))
    data = {
        "perversity": table,
        "relative": rel is not None,
        "dims": list(t.dims),
        "basis_cycles": [[docs.emit_chain(z, x) for z in zs] for zs in t.basis_cycles],
    }
    return Report(data, [_table_line(table)] + _dims_lines("intersection homology:", t.dims))


def _emit_space(x, s, title) -> Report:
    data = docs.emit_complex(x, s)
    lines = [title, f"dimension {x.dim}, f-vector {tuple(x.f_vector())}"]
    lines += [f"stratum codim {m.codim}: {len(m.simplices)} simplices" for m in s.members]
    return Report(data, lines)


def cmd_cone(a) -> Report:
    x, s = _complex(a.complex)
    try:
        cx, cs = cone(x, s, a.apex)
    except ComplexError as exc:
        raise Precondition(str(exc)) from None
    return _emit_space(cx, cs, f"cone with apex {a.apex}")


def cmd_suspend(a) -> Report:
    x, s = _complex(a.complex)
    try:
        cx, cs = suspension(x, s, tuple(a.apexes), stratify_apex=not a.no_stratify_apex)
    except ComplexError as exc:
        raise Precondition(str(exc)) from None
    return _emit_space(cx, cs, "suspension")


def cmd_link(a) -> Report:
    x, s = _complex(a.complex)
    try:
        lx, ls = link(x, s, a.vertex)
    except ComplexError as exc:
        raise Precondition(str(exc)) from None
    return _emit_space(lx, ls, f"link of {a.vertex}")


def cmd_linkmap(a) -> Report:
    x = _complex(a.x)
    y = _complex(a.y)
    p = _perversity(a.perversity)
    _check_valid(*x)
    _check_valid(*y)
    try:
        degree = a.degree if a.degree is not None else ichains.criterion_degree(*x, a.vertex)
        m, zero = ichains.link_map(x, y, a.vertex, degree, p)
    except (ichains.IntersectionChainError, ComplexError) as exc:
        raise Precondition(str(exc)) from None
    verdict = "zero, extension permitted" if zero else "nonzero, extension obstructed"
    table = _perversity_table(p, _max_codim(x, y))
    data = {"perversity": table, "vertex": a.vertex, "degree": degree, "matrix": docs.emit_matrix(m), "zero": zero, "verdict": verdict}
    lines = [_table_line(table), f"link map at {a.vertex}, degree {degree}:"] + _matrix_lines(m) + [verdict]
    return Report(data, lines)


def _surgery_report(r, cy) -> dict:
    return {
        "cycle": docs.emit_chain(r.cycle, cy),
        "eta": docs.emit_chain(r.eta, cy),
        "zeta": docs.emit_chain(r.zeta, cy),
        "filler": docs.emit_chain(r.filler, cy),
        "allowable": r.allowable,
    }


def cmd_surgery(a) -> Report:
    x = _complex(a.x)
    y = _complex(a.y)
    p = _perversity(a.perversity)
    xi = _chain_arg(a.chain, x[0]) if a.chain else None
    try:
        if xi is None:
            xi = ichains.fundamental_class(*x)
        prob = surgery.SurgeryProblem(x, y, a.vertex, xi)
        r = surgery.repair_cycle(prob, p)
    except (surgery.SurgeryError, ComplexError) as exc:
        raise Precondition(str(exc)) from None
    table = _perversity_table(p, _max_codim(x, y))
    if r is None:
        eta = surgery.extract_link_cycle(prob)
        data = {"perversity": table, "vertex": a.vertex, "repaired": False, "eta": docs.emit_chain(eta, y[0])}
        return Report(data, [_table_line(table), f"link cycle at {a.vertex} does not bound in the link of Y: obstructed"])
    data = {"perversity": table, "vertex": a.vertex, "repaired": True, **_surgery_report(r, y[0])}
    lines = [_table_line(table), f"repaired at {a.vertex}: {len(r.cycle.terms)} simplices, "
             f"{'allowable' if r.allowable else 'not allowable'} in Y"]
    return Report(data, lines)


def cmd_lift(a) -> Report:
    y, sy = _complex(a.y)
    low, high = _perversity(a.low), _perversity(a.high)
    _check_valid(y, sy)
    if a.chain:
        z = _chain_arg(a.chain, y)
    else:
        x = _complex(a.fundamental)
        try:
            z = ichains.fundamental_class(*x)
        except ComplexError as exc:
            raise Precondition(str(exc)) from None
        z = y.chain(z.degree, z.terms)
    try:
        res = ichains.lift_with_filler(y, sy, z, low, high)
    except ichains.IntersectionChainError as exc:
        raise Precondition(str(exc)) from None
    mc = _max_codim((y, sy))
    data = {"low": _perversity_table(low, mc), "high": _perversity_table(high, mc), "lifted": res is not None}
    lines = [_table_line(data["low"]), _table_line(data["high"])]
    if res is None:
        lines.append(f"class is not in the image of {low.name} intersection homology")
    else:
        data["cycle"] = docs.emit_chain(res[0], y)
        data["filler"] = docs.emit_chain(res[1], y)
        lines.append(f"lifted to a {low.name}-allowable cycle with {len(res[0].terms)} simplices")
    return Report(data, lines)


def cmd_flag(a) -> Report:
    spaces = [_complex(p) for p in a.complexes]
    low, high = _perversity(a.low), _perversity(a.high)
    for sp in spaces:
        _check_valid(*sp)
    try:
        classes = ichains.flag_classes(spaces, low, high)
    except (ichains.FlagError, ichains.IntersectionChainError, ComplexError) as exc:
        raise Precondition(str(exc)) from None
    mc = _max_codim(*spaces)
    table = _perversity_table(low, mc)
    data = {"perversity": table, "classes": [{"index": c.index, "degree": c.degree, "coordinates": [docs.format_rational(v) for v in c.coordinates]} for c in classes]}
    lines = [_table_line(table)] + [
        f"class {c.index}: degree {c.degree}, coordinates ({', '.join(docs.format_rational(v) for v in c.coordinates)})" for c in classes
    ]
    return Report(data, lines)


def cmd_cone_formula(a) -> Report:
    if a.complex:
        l, ls = _complex(a.complex)
        p = _perversity(a.perversity) if a.perversity else None
        _check_valid(l, ls)
        r = ichains.verify_cone_formula(l, ls, p)
        table = _perversity_table(r.perversity, l.dim + 1)
        data = {"perversity": table, "link": list(r.link_ih), "engine": list(r.engine), "formula": list(r.formula), "agree": r.ok,
                "diff": [list(t) for t in r.diff()]}
        lines = [_table_line(table), f"link IH {tuple(r.link_ih)}", f"engine  {tuple(r.engine)}", f"formula {tuple(r.formula)}",
                 "agree" if r.ok else "MISMATCH " + ", ".join(f"degree {i}: engine {e} vs formula {f}" for i, e, f in r.diff())]
        return Report(data, lines)
    if a.dims is None or a.cone_dim is None:
        raise InputError("give a link complex, or --dims and --cone-dim")
    try:
        dims = [int(t) for t in a.dims.split(",") if t.strip()]
        out = conecalc.cone_formula(dims, a.cone_dim)
    except (ValueError, conecalc.ConeCalcError, LinearAlgebraError) as exc:
        raise InputError(str(exc)) from None
    return Report({"link": dims, "cone_dim": a.cone_dim, "formula": list(out)}, _dims_lines("closed-support IH of the cone:", out))


def cmd_table(a) -> Report:
    d = _parsed(a.pair, docs.parse_pair)
    t = conecalc.projective_cone_table(d, a.n)
    data = {"n": a.n, "small_cone": list(t.base), "large_cone": list(t.total), "ranks": list(t.ranks()),
            "maps": [docs.emit_matrix(m) for m in t.maps]}
    lines = ["degree  small  large  rank"] + [
        f"{i:>6} {t.base[i]:>6} {t.total[i]:>6} {r:>5}" for i, r in enumerate(t.ranks())
    ]
    return Report(data, lines)


def cmd_gysin(a) -> Report:
    b = _parsed(a.base, docs.parse_lefschetz)
    g = conecalc.gysin_link(b)
    data = {"dims": list(g.dims), "cokernel_dims": list(g.coker_dims), "euler_characteristic": g.dims.euler_characteristic(),
            "pullback": [docs.emit_matrix(m) for m in g.pullback], "pushforward": [docs.emit_matrix(m) for m in g.pushforward]}
    return Report(data, _dims_lines("circle bundle homology:", g.dims) + [f"euler characteristic {g.dims.euler_characteristic()}"])


def _steps(steps) -> list[dict]:
    return [{"claim": s.claim, "holds": s.holds, "detail": s.detail} for s in steps]


def _step_lines(steps) -> list[str]:
    return [f"  [{'ok' if s.holds else 'FAIL'}] {s.claim}" + (f" ({s.detail})" if s.detail else "") for s in steps]


def cmd_chase(a) -> Report:
    d = _parsed(a.pair, docs.parse_pair)
    r = conecalc.link_map_chase(d, a.k)
    data = {"k": a.k, "matrix": docs.emit_matrix(r.matrix), "vanishes": r.vanishes, "steps": _steps(r.steps)}
    lines = [f"link map in degree {a.k}:"] + _matrix_lines(r.matrix) + ["certificate:"] + _step_lines(r.steps)
    lines.append("vanishes" if r.vanishes else "does not vanish")
    return Report(data, lines)


def cmd_hl(a) -> Report:
    h = _parsed(a.doc, docs.parse_hl)
    v = conecalc.hard_lefschetz_from_links(h["x"], h["y"], h["i_star"], h["link_middle_map_is_zero"], h["n"])
    data = {"certified": v.certified, "rank": v.rank, "steps": _steps(v.steps), "notes": list(v.notes)}
    lines = _step_lines(v.steps) + list(v.notes)
    if v.certified is None:
        raise Precondition("\n".join(lines + ["no conclusion: a hypothesis fails"]))
    lines.append("certified" if v.certified else "not certified")
    return Report(data, lines)


def cmd_chern(a) -> Report:
    p = _parsed(a.polar, docs.parse_polar)
    try:
        cs = conecalc.chern_mather_lift(p)
    except conecalc.ConeCalcError as exc:
        raise InputError(str(exc)) from None
    data = {"n": p.n, "classes": [{"index": i, "degree": d, "vector": [docs.format_rational(v) for v in vec]} for i, (d, vec) in enumerate(cs)]}
    lines = [f"c_{i} in degree {d}: ({', '.join(docs.format_rational(v) for v in vec)})" for i, (d, vec) in enumerate(cs)]
    return Report(data, lines)


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ihtools", description="Exact intersection homology of stratified simplicial complexes.")
    ap.add_argument("--format", choices=["human", "data"], default="human", help="report style (data = canonical JSON)")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=["human", "data"], default=argparse.SUPPRESS)
        return p

    p = verb("validate", cmd_validate, "check purity, codimensions and the pseudomanifold condition")
    p.add_argument("complex")

    p = verb("betti", cmd_betti, "intersection Betti numbers")
    p.add_argument("complex")
    p.add_argument("--perversity", default="middle")
    p.add_argument("--rel", help="subcomplex document; compute relative IH")
    p.add_argument("--subdivide", action="store_true", help="apply one barycentric subdivision first")

    p = verb("cone", cmd_cone, "cone over a stratified complex")
    p.add_argument("complex")
    p.add_argument("--apex", default="apex")

    p = verb("suspend", cmd_suspend, "suspension of a stratified complex")
    p.add_argument("complex")
    p.add_argument("--apexes", nargs=2, default=["N", "S"])
    p.add_argument("--no-stratify-apex", action="store_true", help="leave the suspension points unstratified")

    p = verb("link", cmd_link, "link of a vertex with the inherited filtration")
    p.add_argument("complex")
    p.add_argument("--vertex", required=True)

    p = verb("linkmap", cmd_linkmap, "map of link intersection homology induced by X in Y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--vertex", required=True)
    p.add_argument("--degree", type=int, help="default: half the codim of the vertex stratum in X")
    p.add_argument("--perversity", default="middle")

    p = verb("surgery", cmd_surgery, "remove a cycle from a singular vertex")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--vertex", required=True)
    p.add_argument("--chain", help="chain document on X (default: fundamental class of X)")
    p.add_argument("--perversity", default="middle")

    p = verb("lift", cmd_lift, "lift a class from high to low perversity")
    p.add_argument("y")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--chain", help="chain document on Y")
    g.add_argument("--fundamental", help="complex document whose fundamental class is lifted")
    p.add_argument("--low", default="middle")
    p.add_argument("--high", default="log")

    p = verb("flag", cmd_flag, "lifted fundamental classes of a flag")
    p.add_argument("complexes", nargs="+")
    p.add_argument("--low", default="middle")
    p.add_argument("--high", default="log")

    p = verb("cone-formula", cmd_cone_formula, "closed-support IH of a cone, by formula and by the chain engine")
    p.add_argument("complex", nargs="?")
    p.add_argument("--perversity", help="default: upper")
    p.add_argument("--dims", help="comma-separated link IH (formula only)")
    p.add_argument("--cone-dim", type=int)

    p = verb("table", cmd_table, "IH of projective cones over a hypersurface pair")
    p.add_argument("pair")
    p.add_argument("--n", type=int, required=True, help="complex dimension of the larger variety")

    p = verb("gysin", cmd_gysin, "homology of the circle bundle over graded data")
    p.add_argument("base")

    p = verb("chase", cmd_chase, "middle-degree link map via the Gysin diagram")
    p.add_argument("pair")
    p.add_argument("--k", type=int, required=True)

    p = verb("hl", cmd_hl, "Hard Lefschetz from vanishing of the link map")
    p.add_argument("doc")

    p = verb("chern", cmd_chern, "Chern-Mather classes from polar classes")
    p.add_argument("polar")
    return ap


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        rep = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (Precondition, conecalc.PreconditionError) as exc:
        print(f"precondition violated: {exc}", file=err)
        return 2
    if args.format == "data":
        out.write(docs.dump(rep.data))
    else:
        out.write("\n".join(rep.lines) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
