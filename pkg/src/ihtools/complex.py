"""Finite simplicial complexes with a filtration by closed subcomplexes.

Simplices are tuples of vertex names listed in the complex's vertex order;
that ordering fixes the orientation of every simplex. An arbitrary tuple of
vertices is brought into this canonical form by :meth:`SimplicialComplex.canonical`,
which also returns the sign of the sorting permutation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .exactla import ChainComplexMatrices, RationalMatrix, to_fraction

Simplex = tuple  # tuple[str, ...]


class ComplexError(ValueError):
    pass


class StratificationError(ComplexError):
    pass


def _faces(simplex: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(simplex) + 1):
        yield from combinations(simplex, k)


def permutation_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        while seq[i] != i:
            j = seq[i]
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    simplices: frozenset  # every nonempty face, canonical tuples

    @classmethod
    def from_simplices(cls, vertices: Sequence[str], simplices: Iterable[Sequence[str]]) -> "SimplicialComplex":
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise ComplexError("duplicate vertex names")
        order = {v: i for i, v in enumerate(vertices)}
        closed = {(v,) for v in vertices}
        for s in simplices:
            s = tuple(str(v) for v in s)
            if not s:
                continue
            for v in s:
                if v not in order:
                    raise ComplexError(f"simplex {list(s)} names unknown vertex {v!r}")
            if len(set(s)) != len(s):
                raise ComplexError(f"simplex {list(s)} repeats a vertex")
            closed.update(_faces(tuple(sorted(s, key=order.__getitem__))))
        return cls(vertices, frozenset(closed))

    # --- structure ---------------------------------------------------------

    @cached_property
    def order(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list] = {d: [] for d in range(self.dim + 1)}
        for s in self.simplices:
            out[len(s) - 1].append(s)
        for d in out:
            out[d].sort(key=self.sort_key)
        return out

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for d in self.by_dim for i, s in enumerate(self.by_dim[d])}

    def sort_key(self, s: Simplex) -> tuple[int, ...]:
        return tuple(self.order[v] for v in s)

    def simplices_of_dim(self, d: int) -> list[Simplex]:
        return self.by_dim.get(d, [])

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim[d]) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    @cached_property
    def maximal(self) -> tuple[Simplex, ...]:
        covered = set()
        for s in self.simplices:
            for k in range(len(s)):
                covered.add(s[:k] + s[k + 1:])
        return tuple(sorted((s for s in self.simplices if s not in covered), key=lambda s: (len(s), self.sort_key(s))))

    def is_pure(self) -> bool:
        return all(len(s) - 1 == self.dim for s in self.maximal)

    def canonical(self, simplex: Sequence[str]) -> tuple[Simplex, int]:
        """Canonical tuple of an oriented simplex and the orientation sign."""
        simplex = tuple(simplex)
        try:
            keys = [self.order[v] for v in simplex]
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None
        perm = sorted(range(len(simplex)), key=keys.__getitem__)
        return tuple(simplex[i] for i in perm), permutation_sign(perm)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def subcomplex(self, simplices: Iterable[Sequence[str]]) -> "SimplicialComplex":
        closed = set()
        for s in simplices:
            c, _ = self.canonical(s)
            if c not in self.simplices:
                raise ComplexError(f"{list(s)} is not a simplex of the complex")
            closed.update(_faces(c))
        verts = tuple(v for v in self.vertices if (v,) in closed)
        return SimplicialComplex(verts, frozenset(closed))

    def cofaces(self, s: Simplex) -> list[Simplex]:
        return self._cofaces.get(s, [])

    @cached_property
    def _cofaces(self) -> dict[Simplex, list[Simplex]]:
        out: dict[Simplex, list] = {}
        for t in self.simplices:
            for k in range(len(t)):
                out.setdefault(t[:k] + t[k + 1:], []).append(t)
        for v in out.values():
            v.sort(key=self.sort_key)
        return out

    def boundary_matrix(self, d: int) -> RationalMatrix:
        rows = self.simplices_of_dim(d - 1) if d > 0 else []
        cols = self.simplices_of_dim(d)
        idx = self.index
        entries = {}
        if d > 0:
            for j, s in enumerate(cols):
                for k in range(len(s)):
                    entries[(idx[s[:k] + s[k + 1:]], j)] = (-1) ** k
        return RationalMatrix(len(rows), len(cols), entries)

    def chain_complex(self) -> ChainComplexMatrices:
        return ChainComplexMatrices(tuple(self.boundary_matrix(d) for d in range(self.dim + 1)))

    def chain(self, degree: int, terms: Mapping[Sequence[str], object]) -> "Chain":
        acc: dict = {}
        for s, c in terms.items():
            can, sign = self.canonical(s)
            if len(can) != degree + 1:
                raise ComplexError(f"simplex {list(s)} has the wrong dimension for a {degree}-chain")
            if can not in self.simplices:
                raise ComplexError(f"{list(s)} is not a simplex of the complex")
            acc[can] = acc.get(can, 0) + sign * to_fraction(c)
        return Chain(degree, acc)

    def chain_from_vector(self, degree: int, vec: Mapping[int, Fraction]) -> "Chain":
        simp = self.simplices_of_dim(degree)
        return Chain(degree, {simp[i]: v for i, v in vec.items()})

    def chain_vector(self, chain: "Chain") -> dict[int, Fraction]:
        idx = self.index
        try:
            return {idx[s]: v for s, v in chain.terms.items()}
        except KeyError as exc:
            raise ComplexError(f"chain simplex {list(exc.args[0])} is not in the complex") from None

    def cone_chain(self, apex: str, chain: "Chain") -> "Chain":
        """Cone with orientation [apex, s0, ..., sd] on each simplex."""
        return self.chain(chain.degree + 1, {(apex,) + s: c for s, c in chain.terms.items()})


@dataclass(frozen=True)
class Chain:
    """Sparse rational combination of canonically oriented simplices."""

    degree: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, v in self.terms.items():
            s = tuple(s)
            if len(s) != self.degree + 1:
                raise ComplexError(f"simplex {list(s)} has the wrong dimension for a {self.degree}-chain")
            v = to_fraction(v)
            if v:
                clean[s] = v
        object.__setattr__(self, "terms", clean)

    __hash__ = None

    @property
    def support(self) -> frozenset:
        return frozenset(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Chain") -> "Chain":
        if other.degree != self.degree:
            raise ComplexError("cannot add chains of different degrees")
        acc = dict(self.terms)
        for s, v in other.terms.items():
            acc[s] = acc.get(s, 0) + v
        return Chain(self.degree, acc)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {s: -v for s, v in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k) -> "Chain":
        k = to_fraction(k)
        return Chain(self.degree, {s: v * k for s, v in self.terms.items()})

    __rmul__ = __mul__

    def boundary(self) -> "Chain":
        if self.degree == 0:
            return Chain(-1, {})
        acc: dict = {}
        for s, v in self.terms.items():
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                acc[f] = acc.get(f, 0) + (-1) ** k * v
        return Chain(self.degree - 1, acc)

    def is_cycle(self) -> bool:
        return self.degree == 0 or self.boundary().is_zero()

    def restrict(self, keep) -> "Chain":
        return Chain(self.degree, {s: v for s, v in self.terms.items() if keep(s)})

    def items(self, complex_: SimplicialComplex | None = None):
        key = complex_.sort_key if complex_ is not None else None
        return sorted(self.terms.items(), key=(lambda kv: key(kv[0])) if key else None)


# --- stratifications ------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    """One closed filtration member and its declared real codimension."""

    codim: int
    simplices: frozenset

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices


@dataclass(frozen=True)
class Stratification:
    members: tuple[Stratum, ...] = ()

    @classmethod
    def build(cls, x: SimplicialComplex, members: Iterable[tuple[int, Iterable[Sequence[str]]]], check: bool = True) -> "Stratification":
        out = []
        for codim, simplices in members:
            closed = set()
            for s in simplices:
                can, _ = x.canonical(s)
                if can not in x.simplices:
                    raise StratificationError(f"filtration simplex {list(s)} is not in the complex")
                closed.update(_faces(can))
            out.append(Stratum(int(codim), frozenset(closed)))
        strat = cls(tuple(out))
        problems = strat.structural_problems(x)
        if check and problems:
            raise StratificationError("; ".join(problems))
        return strat

    def structural_problems(self, x: SimplicialComplex) -> list[str]:
        problems = []
        prev = None
        for j, m in enumerate(self.members):
            if not m.simplices <= x.simplices:
                problems.append(f"member {j} is not a subcomplex of the ambient complex")
            if m.codim < 2:
                problems.append(f"member {j} has codim {m.codim} < 2")
            if m.dim > x.dim - m.codim:
                problems.append(f"member {j} has dim {m.dim} > {x.dim} - {m.codim}")
            if prev is not None:
                if not m.simplices <= prev.simplices:
                    problems.append(f"member {j} is not contained in member {j - 1}")
                if m.codim <= prev.codim:
                    problems.append(f"codims not strictly increasing at member {j}")
            prev = m
        return problems

    @property
    def singular(self) -> frozenset:
        return self.members[0].simplices if self.members else frozenset()

    def codims(self) -> list[int]:
        return [m.codim for m in self.members]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def restrict(self, x: SimplicialComplex) -> "Stratification":
        """Intersect every member with a subcomplex, dropping empty members."""
        return Stratification(tuple(Stratum(m.codim, m.simplices & x.simplices) for m in self.members if m.simplices & x.simplices))


# --- diagnostics ----------------------------------------------------------


@dataclass
class ValidationReport:
    faults: list[str] = field(default_factory=list)
    hints: list[str] = field(default_factory=list)
    boundary: tuple = ()

    @property
    def clean(self) -> bool:
        return not self.faults


def validate(x: SimplicialComplex, s: Stratification) -> ValidationReport:
    """Diagnose a stratified complex without raising.

    Faults: non-purity, bad filtration structure (codim < 2, dimension bound,
    nesting), and pseudomanifold faults, i.e. an (n-1)-simplex off the
    singular set lying in more than two top simplices. Codimension-one faces
    with a single top simplex are recorded as boundary, which cones need.
    """
    rep = ValidationReport()
    if x.dim < 0:
        return rep
    if not x.is_pure():
        low = [list(m) for m in x.maximal if len(m) - 1 < x.dim]
        rep.faults.append(f"non-pure: maximal simplices of dimension < {x.dim}: {low}")
    rep.faults.extend(s.structural_problems(x))
    n = x.dim
    sing = s.singular
    bdry = []
    if n >= 1:
        for f in x.simplices_of_dim(n - 1):
            if f in sing:
                continue
            k = sum(1 for t in x.cofaces(f) if len(t) - 1 == n)
            if k > 2:
                rep.faults.append(f"pseudomanifold fault: {list(f)} lies in {k} top simplices")
            elif k == 1:
                bdry.append(f)
    rep.boundary = tuple(bdry)
    for j, m in enumerate(s.members):
        if not _is_full(x, m.simplices):
            rep.hints.append(
                f"filtration member {j} is not a full subcomplex; apply one barycentric subdivision "
                "so simplicial intersection homology agrees with the PL theory"
            )
    return rep


def _is_full(x: SimplicialComplex, sub: frozenset) -> bool:
    verts = {s[0] for s in sub if len(s) == 1}
    for t in x.simplices:
        if t not in sub and all(v in verts for v in t):
            return False
    return True


# --- constructors ---------------------------------------------------------


def cone(x: SimplicialComplex, s: Stratification, apex: str = "apex", stratify_apex: bool = True) -> tuple[SimplicialComplex, Stratification]:
    """Join with a new apex vertex; the apex becomes the deepest stratum."""
    if x.dim < 0:
        raise ComplexError("cannot cone the empty complex")
    if apex in x.order:
        raise ComplexError(f"apex name {apex!r} collides with an existing vertex")
    codim = x.dim + 1
    if stratify_apex and codim < 2:
        raise StratificationError(f"cone apex would have codim {codim} < 2")
    cx = SimplicialComplex(x.vertices + (apex,), frozenset(x.simplices | {t + (apex,) for t in x.simplices} | {(apex,)}))
    members = [Stratum(m.codim, frozenset(m.simplices | {t + (apex,) for t in m.simplices} | {(apex,)})) for m in s.members]
    if stratify_apex:
        members.append(Stratum(codim, frozenset({(apex,)})))
    return cx, Stratification(tuple(members))


def suspension(x: SimplicialComplex, s: Stratification, apexes: tuple[str, str] = ("N", "S"), stratify_apex: bool = True) -> tuple[SimplicialComplex, Stratification]:
    north, south = apexes
    if north == south:
        raise ComplexError("suspension apexes must be distinct")
    if x.dim < 0:
        raise ComplexError("cannot suspend the empty complex")
    for a in apexes:
        if a in x.order:
            raise ComplexError(f"apex name {a!r} collides with an existing vertex")
    codim = x.dim + 1
    if stratify_apex and codim < 2:
        raise StratificationError(f"suspension apexes would have codim {codim} < 2")

    def susp(simps):
        return simps | {t + (north,) for t in simps} | {t + (south,) for t in simps} | {(north,), (south,)}

    sx = SimplicialComplex(x.vertices + (north, south), frozenset(susp(x.simplices)))
    members = [Stratum(m.codim, frozenset(susp(m.simplices))) for m in s.members]
    if stratify_apex:
        members.append(Stratum(codim, frozenset({(north,), (south,)})))
    return sx, Stratification(tuple(members))


def link(x: SimplicialComplex, s: Stratification, v: str) -> tuple[SimplicialComplex, Stratification]:
    """Simplicial link of a vertex with the inherited filtration.

    A member of codim c through v contributes its own link of v, again with
    codim c; members whose link is empty are dropped.
    """
    if v not in x.order:
        raise ComplexError(f"vertex {v!r} is not in the complex")

    def lk(simps):
        out = set()
        for t in simps:
            if v in t and len(t) > 1:
                out.add(tuple(u for u in t if u != v))
        return out

    simps = lk(x.simplices)
    verts = tuple(u for u in x.vertices if (u,) in simps)
    lx = SimplicialComplex(verts, frozenset(simps))
    members = []
    for m in s.members:
        if (v,) in m.simplices:
            ls = lk(m.simplices)
            if ls:
                members.append(Stratum(m.codim, frozenset(ls)))
    return lx, Stratification(tuple(members))


def open_star(x: SimplicialComplex, v: str) -> frozenset:
    return frozenset(t for t in x.simplices if v in t)


def barycenter_name(s: Simplex) -> str:
    return s[0] if len(s) == 1 else "(" + ",".join(s) + ")"


def barycentric_subdivide(x: SimplicialComplex, s: Stratification) -> tuple[SimplicialComplex, Stratification]:
    """First barycentric subdivision; every filtration member is subdivided too.

    Original vertices keep their names; the barycenter of a higher simplex
    is named ``(a,b,...)``.
    """
    ordered = sorted(x.simplices, key=lambda t: (len(t), x.sort_key(t)))
    names = {t: barycenter_name(t) for t in ordered}
    if len(set(names.values())) != len(names):
        raise ComplexError("barycenter names collide with existing vertex names")

    def flags(simps: frozenset) -> set:
        # full flags of maximal members; every other chain of faces is a face of one
        out = set()
        for t in simps:
            for perm in permutations(t):
                chain = tuple(tuple(sorted(perm[: i + 1], key=x.order.__getitem__)) for i in range(len(t)))
                out.update(_faces(chain))
        return out

    def to_simplices(chs):
        return {tuple(names[t] for t in ch) for ch in chs}

    sx = SimplicialComplex(tuple(names[t] for t in ordered), frozenset(to_simplices(flags(x.simplices))))
    members = tuple(Stratum(m.codim, frozenset(to_simplices(flags(m.simplices)))) for m in s.members)
    return sx, Stratification(members)
