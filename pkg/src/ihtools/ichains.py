"""Allowable chains and intersection homology of stratified simplicial complexes.

A simplex of dimension i is p-allowable when, for every filtration member of
codim c, the largest face of the simplex lying in that member has dimension at
most i - c + p(c). An intersection chain is an allowable chain whose boundary
is allowable too. All degrees here are homological chain degrees.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exactla as la
from .complex import (
    Chain,
    ComplexError,
    SimplicialComplex,
    Stratification,
    Stratum,
    link,
    validate,
)
from .exactla import ChainComplexMatrices, GradedVectorSpace, RationalMatrix
from .perversity import LOG, MIDDLE, Perversity

Space = tuple  # (SimplicialComplex, Stratification)


class IntersectionChainError(ValueError):
    pass


class AllowabilityError(IntersectionChainError):
    def __init__(self, message: str, simplex=None):
        super().__init__(message)
        self.simplex = simplex


class FlagError(IntersectionChainError):
    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


# --- allowability ---------------------------------------------------------


def face_dim(simplex, member: Stratum) -> int:
    """Dimension of the largest face of ``simplex`` inside ``member`` (-1 if none)."""
    inside = [v for v in simplex if (v,) in member.simplices]
    for k in range(len(inside), 0, -1):
        for f in combinations(inside, k):
            if f in member.simplices:
                return k - 1
    return -1


def simplex_allowable(simplex, degree: int, p: Perversity, s: Stratification) -> bool:
    for m in s.members:
        fd = face_dim(simplex, m)
        if fd >= 0 and fd > degree - m.codim + p.value(m.codim):
            return False
    return True


def is_allowable(c: Chain, p: Perversity, s: Stratification) -> bool:
    return all(simplex_allowable(sim, c.degree, p, s) for sim in c.terms)


def first_non_allowable(c: Chain, p: Perversity, s: Stratification):
    for sim in sorted(c.terms):
        if not simplex_allowable(sim, c.degree, p, s):
            return sim
    return None


# --- the intersection chain complex ---------------------------------------


@dataclass
class IntersectionComplex:
    """Intersection chains of a stratified complex, in explicit bases.

    ``bases[d]`` is a list of ``(key, vector)`` pairs; vectors are sparse in the
    ambient simplex coordinates of ``complex`` and each has coefficient one at
    its key, where every other basis vector vanishes. That makes coordinates a
    lookup. In the relative case the coordinates of simplices of ``rel`` are
    dropped (chains are taken modulo ``rel``).
    """

    complex: SimplicialComplex
    strat: Stratification
    perversity: Perversity
    rel: frozenset | None
    bases: dict[int, list[tuple[int, dict]]]
    matrices: ChainComplexMatrices = field(repr=False)

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def coordinates(self, d: int, vec: dict) -> dict[int, Fraction]:
        """Coordinates of an ambient vector; raises if it is not an intersection chain."""
        basis = self.bases.get(d, [])
        vec = self._project(d, vec)
        coords = {j: vec[k] for j, (k, _) in enumerate(basis) if vec.get(k)}
        rebuilt = la.sparse_combination((basis[j][1], c) for j, c in coords.items())
        if rebuilt != vec:
            raise IntersectionChainError(f"vector is not an intersection {d}-chain for {self.perversity.name}")
        return coords

    def ambient(self, d: int, coords: dict[int, Fraction]) -> dict:
        basis = self.bases.get(d, [])
        return la.sparse_combination((basis[j][1], c) for j, c in coords.items())

    def to_chain(self, d: int, coords: dict[int, Fraction]) -> Chain:
        return self.complex.chain_from_vector(d, self.ambient(d, coords))

    def chain_coordinates(self, c: Chain) -> dict[int, Fraction]:
        return self.coordinates(c.degree, self.complex.chain_vector(c))

    def _project(self, d: int, vec: dict) -> dict:
        if self.rel is None:
            return {i: v for i, v in vec.items() if v}
        simp = self.complex.simplices_of_dim(d)
        return {i: v for i, v in vec.items() if v and simp[i] not in self.rel}


def _allowable_indices(x: SimplicialComplex, s: Stratification, p: Perversity, d: int) -> list[int]:
    return [i for i, sim in enumerate(x.simplices_of_dim(d)) if simplex_allowable(sim, d, p, s)]


def intersection_chain_complex(
    x: SimplicialComplex,
    s: Stratification,
    p: Perversity,
    rel: SimplicialComplex | frozenset | None = None,
    check: bool = True,
) -> IntersectionComplex:
    if check:
        rep = validate(x, s)
        if not rep.clean:
            raise IntersectionChainError("invalid stratified complex: " + "; ".join(rep.faults))
    if rel is not None:
        rel = frozenset(rel.simplices if isinstance(rel, SimplicialComplex) else rel)
        if not rel <= x.simplices:
            raise IntersectionChainError("relative subcomplex is not contained in the complex")

    top = x.dim
    bnd = {d: x.boundary_matrix(d).col_dicts() for d in range(top + 1)}
    bases: dict[int, list] = {}
    for d in range(top + 1):
        allow = _allowable_indices(x, s, p, d)
        if d == 0:
            basis = [(i, {i: Fraction(1)}) for i in allow]
        else:
            allowed_faces = set(_allowable_indices(x, s, p, d - 1))
            bad_rows: dict[int, int] = {}
            entries = {}
            for j, i in enumerate(allow):
                for r, v in bnd[d][i].items():
                    if r not in allowed_faces:
                        entries[(bad_rows.setdefault(r, len(bad_rows)), j)] = v
            n_mat = RationalMatrix(len(bad_rows), len(allow), entries)
            basis = [(allow[f], {allow[j]: v for j, v in vec.items()}) for f, vec in la.kernel_sparse(n_mat)]
        if rel is not None:
            simp = x.simplices_of_dim(d)
            eb = la.EchelonBasis()
            for _, vec in basis:
                proj = {i: v for i, v in vec.items() if simp[i] not in rel}
                if proj:
                    eb.add(proj)
            red = eb.reduced_rows()
            basis = [(k, red[k]) for k in sorted(red)]
        bases[d] = basis

    ic = IntersectionComplex(x, s, p, rel, bases, ChainComplexMatrices((RationalMatrix(0, 0),)))
    mats = [RationalMatrix(0, len(bases.get(0, [])))]
    for d in range(1, top + 1):
        cols = []
        for _, vec in bases[d]:
            img = la.sparse_combination((bnd[d][i], v) for i, v in vec.items())
            cols.append(ic.coordinates(d - 1, img))
        mats.append(RationalMatrix.from_columns(len(bases[d - 1]), cols))
    ic.matrices = ChainComplexMatrices(tuple(mats))
    return ic


@dataclass(frozen=True)
class IHTable:
    perversity: Perversity
    dims: GradedVectorSpace
    basis_cycles: tuple[tuple[Chain, ...], ...]


def ih_table(ic: IntersectionComplex) -> IHTable:
    dims = la.homology_dims(ic.matrices)
    cycles = []
    for d in range(len(dims)):
        cycles.append(tuple(ic.to_chain(d, z) for z in la.homology_basis(ic.matrices, d)))
    return IHTable(ic.perversity, dims, tuple(cycles))


def ih_betti(x: SimplicialComplex, s: Stratification, p: Perversity, rel=None) -> IHTable:
    return ih_table(intersection_chain_complex(x, s, p, rel))


def ih_class(ic: IntersectionComplex, z: Chain) -> list[Fraction]:
    """Coordinates of the class of an intersection cycle in the deterministic basis."""
    d = z.degree
    coords = ic.chain_coordinates(z)
    basis = la.homology_basis(ic.matrices, d)
    return la.homology_coordinates(ic.matrices, d, basis, coords)


# --- cone formula check ----------------------------------------------------


@dataclass
class ConeFormulaReport:
    link_ih: GradedVectorSpace
    engine: GradedVectorSpace
    formula: GradedVectorSpace
    perversity: Perversity

    @property
    def ok(self) -> bool:
        return self.engine == self.formula

    def diff(self) -> list[tuple[int, int, int]]:
        n = max(len(self.engine), len(self.formula))
        return [(i, self.engine[i], self.formula[i]) for i in range(n) if self.engine[i] != self.formula[i]]


def verify_cone_formula(l: SimplicialComplex, s: Stratification, p: Perversity | None = None, apex: str = "*") -> ConeFormulaReport:
    """Compare relative IH of (cone L, L) with the closed-support cone formula.

    The formula's threshold i > dim/2 is the statement for the perversity
    floor((c - 1)/2) at the apex, so ``upper`` is used unless overridden;
    it coincides with ``middle`` in even codimension.
    """
    from .conecalc import cone_formula
    from .complex import cone
    from .perversity import UPPER

    p = p or UPPER
    link_ih = ih_betti(l, s, p).dims
    cx, cs = cone(l, s, apex)
    engine = ih_betti(cx, cs, p, rel=l).dims
    formula = cone_formula(link_ih, cx.dim)
    return ConeFormulaReport(link_ih, engine, formula, p)


# --- maps -----------------------------------------------------------------


def inclusion_chain_maps(src: IntersectionComplex, tgt: IntersectionComplex) -> list[RationalMatrix]:
    """Matrices of the inclusion of intersection chains, checking allowability transfer."""
    xs, ys = src.complex, tgt.complex
    if not xs.is_subcomplex_of(ys):
        raise IntersectionChainError("source complex is not a subcomplex of the target")
    top = max(xs.dim, ys.dim)
    maps = []
    for d in range(top + 1):
        cols = []
        xsimp = xs.simplices_of_dim(d)
        for _, vec in src.bases.get(d, []):
            for i in sorted(vec):
                sim = xsimp[i]
                if not simplex_allowable(sim, d, tgt.perversity, tgt.strat):
                    raise AllowabilityError(
                        f"allowability transfer fails: {list(sim)} is {src.perversity.name}-allowable in the source "
                        f"but not {tgt.perversity.name}-allowable in the target",
                        sim,
                    )
            yvec = {ys.index[xsimp[i]]: v for i, v in vec.items()}
            cols.append(tgt.coordinates(d, yvec))
        maps.append(RationalMatrix.from_columns(tgt.dim(d), cols))
    return maps


def induced_ih_map(xsub: Space, ysup: Space, p_src: Perversity, p_tgt: Perversity, degree: int) -> RationalMatrix:
    src = intersection_chain_complex(*xsub, p_src)
    tgt = intersection_chain_complex(*ysup, p_tgt)
    maps = inclusion_chain_maps(src, tgt)
    return la.induced_map_on_homology(src.matrices, tgt.matrices, maps, degree)


def criterion_degree(x: SimplicialComplex, s: Stratification, v: str) -> int:
    """Half the codim (rounded down) of the deepest member of X through v."""
    codims = [m.codim for m in s.members if (v,) in m.simplices]
    if not codims:
        raise IntersectionChainError(f"vertex {v!r} is not singular")
    return codims[-1] // 2


def link_map(x: Space, y: Space, v: str, degree: int, p: Perversity = MIDDLE) -> tuple[RationalMatrix, bool]:
    """Map IH_d(link of v in X) -> IH_d(link of v in Y) induced by inclusion."""
    lx = link(*x, v)
    ly = link(*y, v)
    if not lx[0].is_subcomplex_of(ly[0]):
        raise IntersectionChainError("link in X is not contained in the link in Y")
    m = induced_ih_map(lx, ly, p, p, degree)
    return m, m.is_zero()


# --- lifting classes ------------------------------------------------------


def _lift(y: SimplicialComplex, s: Stratification, z: Chain, low: Perversity, high: Perversity):
    d = z.degree
    if not z.is_cycle():
        raise IntersectionChainError("class to lift is not a cycle")
    bad = first_non_allowable(z, high, s)
    if bad is not None:
        raise AllowabilityError(f"cycle is not {high.name}-allowable: {list(bad)}", bad)
    zvec = y.chain_vector(z)
    if is_allowable(z, low, s):
        return z, Chain(d + 1, {})
    allow = _allowable_indices(y, s, low, d)
    bnd_d = y.boundary_matrix(d)
    sub = RationalMatrix.from_columns(bnd_d.rows, [bnd_d.col_dicts()[i] for i in allow])
    cycles = [{allow[j]: v for j, v in vec.items()} for _, vec in la.kernel_sparse(sub)]
    ic_high = intersection_chain_complex(y, s, high, check=False)
    bnd_up = y.boundary_matrix(d + 1).col_dicts() if d + 1 <= y.dim else []
    fillers = ic_high.bases.get(d + 1, [])
    bvecs = [la.sparse_combination((bnd_up[i], v) for i, v in vec.items()) for _, vec in fillers]
    m = RationalMatrix.from_columns(len(y.simplices_of_dim(d)), cycles + bvecs)
    sol = la.solve_sparse(m, zvec)
    if sol is None:
        return None
    nc = len(cycles)
    lifted = la.sparse_combination((cycles[j], v) for j, v in sol.items() if j < nc)
    filler = la.sparse_combination((fillers[j - nc][1], v) for j, v in sol.items() if j >= nc)
    return y.chain_from_vector(d, lifted), y.chain_from_vector(d + 1, filler)


def lift_class(y: SimplicialComplex, s: Stratification, z: Chain, low: Perversity = MIDDLE, high: Perversity = LOG) -> Chain | None:
    """An ``low``-allowable cycle in the ``high``-IH class of z, or None.

    z must be a ``high``-allowable cycle. Returns z itself when it is already
    ``low``-allowable; otherwise one linear system over
    [low-allowable cycles | boundaries of high-intersection chains] decides
    whether the class comes from low-perversity IH.
    """
    res = _lift(y, s, z, low, high)
    return None if res is None else res[0]


def lift_with_filler(y: SimplicialComplex, s: Stratification, z: Chain, low: Perversity = MIDDLE, high: Perversity = LOG):
    """Like :func:`lift_class` but also returns w with z - lift = boundary(w)."""
    return _lift(y, s, z, low, high)


# --- fundamental classes and flags ---------------------------------------


def fundamental_class(x: SimplicialComplex, s: Stratification) -> Chain:
    """Sum of compatibly oriented top simplices.

    Orientations propagate across codim-one faces off the singular set
    (spanning-tree order, root = smallest top simplex of each component).
    """
    if not x.is_pure():
        raise ComplexError("fundamental class needs a pure complex")
    n = x.dim
    tops = x.simplices_of_dim(n)
    if n == 0:
        return Chain(0, {t: 1 for t in tops})
    sing = s.singular
    # face -> [(top, incidence sign)]
    adj: dict = {}
    for t in tops:
        for k in range(len(t)):
            f = t[:k] + t[k + 1:]
            adj.setdefault(f, []).append((t, (-1) ** k))
    sign: dict = {}
    for root in tops:
        if root in sign:
            continue
        sign[root] = 1
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for k in range(len(t)):
                f = t[:k] + t[k + 1:]
                inc = adj[f]
                if f in sing or len(inc) != 2:
                    continue
                (a, ea), (b, eb) = inc
                other, e_self, e_other = (b, ea, eb) if a == t else (a, eb, ea)
                want = -sign[t] * e_self * e_other
                if other in sign:
                    if sign[other] != want:
                        raise ComplexError(f"non-orientable across face {list(f)}")
                else:
                    sign[other] = want
                    queue.append(other)
    chain = Chain(n, {t: sign[t] for t in tops})
    for f in chain.boundary().terms:
        if f not in sing and len(adj.get(f, ())) != 1:
            raise ComplexError(f"fundamental chain fails to be a cycle at {list(f)}")
    return chain


@dataclass(frozen=True)
class FlagClass:
    index: int
    degree: int
    coordinates: tuple[Fraction, ...]
    representative: Chain


def flag_classes(flag: Sequence[Space], low: Perversity = MIDDLE, high: Perversity = LOG) -> list[FlagClass]:
    """Lift fundamental classes of a flag X^0 > X^1 > ... > X^k into IH(X^0).

    [X^i] is pushed into X^(i-1), lifted to a ``low``-allowable cycle there,
    pushed into X^(i-2), and so on. Coordinates are in the deterministic
    ``low``-IH basis of X^0.
    """
    if not flag:
        raise FlagError("empty flag")
    x0, s0 = flag[0]
    n = x0.dim
    for i in range(1, len(flag)):
        xi, _ = flag[i]
        xp, sp = flag[i - 1]
        if not xi.is_subcomplex_of(xp):
            raise FlagError(f"X^{i} is not a subcomplex of X^{i - 1}", step=i)
        if xi.dim != n - i:
            raise FlagError(f"X^{i} has dimension {xi.dim}, expected {n - i}", step=i)
        if all(m in sp.singular for m in xi.maximal):
            raise FlagError(f"X^{i} lies inside the singular set of X^{i - 1}", step=i)
    ic0 = intersection_chain_complex(x0, s0, low)
    out = []
    for i in range(len(flag)):
        z = fundamental_class(*flag[i])
        for j in range(i - 1, -1, -1):
            xj, sj = flag[j]
            try:
                lifted = lift_class(xj, sj, z, low, high)
            except AllowabilityError as exc:
                raise FlagError(f"[X^{i}] is not {high.name}-allowable in X^{j}: {exc}", step=j + 1) from exc
            if lifted is None:
                raise FlagError(
                    f"cannot lift [X^{i}] into {low.name}-IH of X^{j}: link obstruction at step {j + 1}",
                    step=j + 1,
                )
            z = lifted
        coords = ih_class(ic0, z)
        out.append(FlagClass(i, z.degree, tuple(coords), z))
    return out
