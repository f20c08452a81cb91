"""Formula-level calculators over user-supplied graded data.

Everything here works with graded dimensions and structure matrices (the
hyperplane operator, morphisms between varieties, restriction maps) given as
exact rational matrices. Nothing is computed from geometry. Homological
degrees are real degrees: a projective variety of complex dimension n has
IH in degrees 0..2n, and the hyperplane operator lowers degree by two.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from . import exactla as la
from .exactla import GradedVectorSpace, RationalMatrix


class ConeCalcError(ValueError):
    pass


class PreconditionError(ConeCalcError):
    """An input fails a hypothesis (Hard Lefschetz, weak Lefschetz, duality)."""


def _zero(rows: int, cols: int) -> RationalMatrix:
    return RationalMatrix.zeros(rows, cols)


@dataclass(frozen=True)
class LefschetzData:
    """Graded dimensions plus the degree-lowering operator.

    ``lam[i]`` maps degree i to degree i - 2; missing degrees are zero maps.
    """

    dims: GradedVectorSpace
    lam: Mapping[int, RationalMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dims, GradedVectorSpace):
            object.__setattr__(self, "dims", GradedVectorSpace(tuple(self.dims)))
        object.__setattr__(self, "lam", dict(sorted(self.lam.items())))
        for i, m in self.lam.items():
            if m.shape != (self.dims[i - 2], self.dims[i]):
                raise ConeCalcError(
                    f"operator at degree {i} has shape {m.shape}, expected {(self.dims[i - 2], self.dims[i])}"
                )

    def op(self, i: int) -> RationalMatrix:
        return self.lam.get(i) or _zero(self.dims[i - 2], self.dims[i])


@dataclass(frozen=True)
class PairMorphismData:
    x: LefschetzData
    y: LefschetzData
    alpha: Mapping[int, RationalMatrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alpha", dict(sorted(self.alpha.items())))
        for i, m in self.alpha.items():
            if m.shape != (self.y.dims[i], self.x.dims[i]):
                raise ConeCalcError(f"alpha at degree {i} has shape {m.shape}, expected {(self.y.dims[i], self.x.dims[i])}")

    def map(self, i: int) -> RationalMatrix:
        return self.alpha.get(i) or _zero(self.y.dims[i], self.x.dims[i])

    def commutes(self) -> bool:
        top = max(len(self.x.dims), len(self.y.dims))
        return all(
            self.map(i - 2) @ self.x.op(i) == self.y.op(i) @ self.map(i) for i in range(2, top + 1)
        )


@dataclass(frozen=True)
class PolarData:
    """Classes of the polar varieties and the hyperplane action.

    ``classes[j]`` is the coordinate vector of the j-th polar class in degree
    2(n - j); ``h_action[d]`` is the hyperplane operator from degree d to d - 2.
    """

    n: int
    classes: tuple[tuple[Fraction, ...], ...]
    h_action: Mapping[int, RationalMatrix]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(la.to_fraction(v) for v in c) for c in self.classes))
        object.__setattr__(self, "h_action", dict(sorted(self.h_action.items())))
        if len(self.classes) != self.n + 1:
            raise ConeCalcError(f"expected {self.n + 1} polar classes, got {len(self.classes)}")
        if not any(self.classes[0]):
            raise ConeCalcError("the fundamental class slot must be nonzero")
        for d, m in self.h_action.items():
            if d < 2:
                raise ConeCalcError("hyperplane action must start in degree >= 2")


# --- cone formula ---------------------------------------------------------


def cone_formula(ih_link: GradedVectorSpace | Sequence[int], cone_dim: int) -> GradedVectorSpace:
    """Closed-support IH of an open cone of real dimension ``cone_dim``."""
    ih_link = GradedVectorSpace(tuple(ih_link))
    if any(ih_link[i] for i in range(cone_dim, len(ih_link))):
        raise ConeCalcError(f"link homology extends past degree {cone_dim - 1}")
    return GradedVectorSpace(tuple(ih_link[i - 1] if 2 * i > cone_dim else 0 for i in range(cone_dim + 1)))


# --- projective cone -------------------------------------------------------


@dataclass(frozen=True)
class ConeTable:
    base: GradedVectorSpace
    total: GradedVectorSpace
    maps: tuple[RationalMatrix, ...]

    def ranks(self) -> tuple[int, ...]:
        return tuple(la.rank(m) for m in self.maps)


def _require_iso(m: RationalMatrix, what: str) -> None:
    if not la.is_isomorphism(m):
        raise PreconditionError(f"Hard Lefschetz precondition fails: {what} is not an isomorphism")


def projective_cone_table(d: PairMorphismData, n: int) -> ConeTable:
    """IH of the projective cones over a hypersurface pair and the induced map.

    The smaller variety has complex dimension n - 1, the larger n. Row n of
    the small cone is the image of the operator x_n -> x_(n-2), recorded in
    x_(n-2) coordinates; row n + 1 of the large cone is the image of
    y_(n+1) -> y_(n-1), recorded in y_(n+1) coordinates, where the map is
    inverse(operator) after alpha_(n-1).
    """
    x, y = d.x.dims, d.y.dims
    lam_x = d.x.op(n)
    lam_y = d.y.op(n + 1)
    _require_iso(lam_x, f"x_{n} -> x_{n - 2}")
    _require_iso(lam_y, f"y_{n + 1} -> y_{n - 1}")

    kx = [x[i] for i in range(n)] + [la.rank(lam_x)] + [x[i - 2] for i in range(n + 1, 2 * n + 1)]
    ky = [y[i] for i in range(n + 1)] + [la.rank(lam_y)] + [y[i - 2] for i in range(n + 2, 2 * n + 3)]
    maps = []
    for i in range(2 * n + 3):
        if i <= n - 1:
            maps.append(d.map(i))
        elif i == n:
            maps.append(d.map(n) @ la.inverse(lam_x) if x[n] else _zero(y[n], kx[n]))
        elif i == n + 1:
            maps.append(la.inverse(lam_y) @ d.map(n - 1) if y[n + 1] else _zero(0, kx[n + 1]))
        elif i <= 2 * n:
            maps.append(d.map(i - 2))
        else:
            maps.append(_zero(ky[i], 0))
    return ConeTable(GradedVectorSpace(tuple(kx)), GradedVectorSpace(tuple(ky)), tuple(maps))


# --- circle bundles --------------------------------------------------------


@dataclass(frozen=True)
class GysinLink:
    """Homology of the circle bundle over a base with its two Gysin maps.

    Degree-k homology is split as coker(b_(k+1) -> b_(k-1)) followed by
    ker(b_k -> b_(k-2)). ``pullback[k]`` maps b_(k-1) onto the cokernel
    summand; ``pushforward[k]`` maps the kernel summand into b_k.
    """

    dims: GradedVectorSpace
    pullback: tuple[RationalMatrix, ...]
    pushforward: tuple[RationalMatrix, ...]
    coker_dims: tuple[int, ...]


def _cokernel_projection(m: RationalMatrix) -> RationalMatrix:
    """Matrix of target -> target/image(m) in complement unit-vector coordinates."""
    comp = la.complement_basis(m.col_dicts(), m.rows)
    units = [{j: Fraction(1)} for j in comp]
    aug = RationalMatrix.from_columns(m.rows, m.col_dicts() + units)
    cols = []
    for r in range(m.rows):
        sol = la.solve_sparse(aug, {r: Fraction(1)})
        cols.append({k - m.cols: v for k, v in sol.items() if k >= m.cols})
    return RationalMatrix.from_columns(len(comp), cols)


def gysin_link(base: LefschetzData) -> GysinLink:
    b = base.dims
    top = len(b)  # link degrees 0..top
    dims, pull, push, cdims = [], [], [], []
    for k in range(top + 1):
        proj = _cokernel_projection(base.op(k + 1))
        kern = [v for _, v in la.kernel_sparse(base.op(k))]
        c, kd = proj.rows, len(kern)
        dims.append(c + kd)
        cdims.append(c)
        pull.append(RationalMatrix(c + kd, b[k - 1], proj.entries))
        push.append(RationalMatrix.from_columns(b[k], [{}] * c + kern))
    return GysinLink(GradedVectorSpace(tuple(dims)), tuple(pull), tuple(push), tuple(cdims))


# --- link-map chase --------------------------------------------------------


@dataclass(frozen=True)
class ChaseStep:
    claim: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class ChaseResult:
    matrix: RationalMatrix
    vanishes: bool
    steps: tuple[ChaseStep, ...]


def _right_inverse(m: RationalMatrix) -> RationalMatrix:
    cols = []
    for r in range(m.rows):
        sol = la.solve_sparse(m, {r: Fraction(1)})
        if sol is None:
            raise ConeCalcError("matrix is not surjective")
        cols.append(sol)
    return RationalMatrix.from_columns(m.cols, cols)


def link_map_chase(d: PairMorphismData, k: int) -> ChaseResult:
    """Middle-degree map between the circle-bundle links of a hypersurface pair.

    Requires the operator to be an isomorphism on x_k -> x_(k-2) and on
    y_(k+1) -> y_(k-1). The map is read off the left square of the morphism
    of Gysin sequences through a right inverse of the (surjective) pullback.
    """
    steps = []
    lam_x, lam_y = d.x.op(k), d.y.op(k + 1)
    iso_x, iso_y = la.is_isomorphism(lam_x), la.is_isomorphism(lam_y)
    steps.append(ChaseStep(f"operator x_{k} -> x_{k - 2} is an isomorphism", iso_x, f"shape {lam_x.shape}, rank {la.rank(lam_x)}"))
    steps.append(ChaseStep(f"operator y_{k + 1} -> y_{k - 1} is an isomorphism", iso_y, f"shape {lam_y.shape}, rank {la.rank(lam_y)}"))
    if not (iso_x and iso_y):
        raise PreconditionError("Hard Lefschetz precondition fails; no conclusion: " + "; ".join(s.claim for s in steps if not s.holds))
    lx, ly = gysin_link(d.x), gysin_link(d.y)
    p_low, q_up = lx.pushforward[k], ly.pullback[k]
    steps.append(ChaseStep("p_* = 0 on degree k", p_low.is_zero(), f"link_X dim {lx.dims[k]}"))
    steps.append(ChaseStep("q^* = 0 on degree k", q_up.is_zero(), f"link_Y dim {ly.dims[k]}"))
    p_up = lx.pullback[k]
    surj = la.is_surjective(p_up)
    steps.append(ChaseStep("p^* is surjective", surj))
    steps.append(ChaseStep("q_* is injective", la.is_injective(ly.pushforward[k])))
    steps.append(ChaseStep("alpha commutes with the operator", d.commutes()))
    m = q_up @ d.map(k - 1) @ _right_inverse(p_up)
    steps.append(ChaseStep("link map = q^* . alpha_(k-1) . (p^*)^-1 vanishes", m.is_zero(), f"shape {m.shape}"))
    return ChaseResult(m, m.is_zero(), tuple(steps))


# --- Hard Lefschetz from link vanishing ------------------------------------


@dataclass(frozen=True)
class LefschetzVerdict:
    certified: bool | None
    steps: tuple[ChaseStep, ...]
    rank: int | None = None
    notes: tuple[str, ...] = ()


def hard_lefschetz_from_links(
    x: LefschetzData,
    y: LefschetzData,
    i_star: Mapping[int, RationalMatrix],
    link_middle_map_is_zero: bool,
    n: int,
) -> LefschetzVerdict:
    """Certify that y_(n+1) -> y_(n-1) is an isomorphism from vanishing of the link map.

    y describes a variety of complex dimension n and x a hyperplane section.
    Returns ``certified=None`` when a hypothesis fails.
    """
    steps = []
    i_mid = i_star.get(n - 1) or _zero(y.dims[n - 1], x.dims[n - 1])
    if i_mid.shape != (y.dims[n - 1], x.dims[n - 1]):
        raise ConeCalcError(f"restriction map in degree {n - 1} has shape {i_mid.shape}")
    surj = la.is_surjective(i_mid)
    steps.append(ChaseStep(f"i_{n - 1} is surjective (weak Lefschetz input)", surj))
    ydims = GradedVectorSpace(tuple(y.dims[i] for i in range(2 * n + 1)))
    pal = ydims.is_palindromic() and len(y.dims) <= 2 * n + 1
    steps.append(ChaseStep("y is palindromic (duality input)", pal, str(tuple(ydims))))
    steps.append(ChaseStep("link map vanishes in the middle degree", link_middle_map_is_zero))
    if not (surj and pal and link_middle_map_is_zero):
        return LefschetzVerdict(None, tuple(steps))
    lam = y.op(n + 1)
    r = la.rank(lam)
    onto = r == y.dims[n - 1]
    steps.append(ChaseStep(f"q^* = 0, so y_{n + 1} -> y_{n - 1} is surjective", onto, f"rank {r} of {y.dims[n - 1]}"))
    if not onto:
        steps.append(ChaseStep("inputs are consistent", False, "the supplied operator contradicts the chase"))
        return LefschetzVerdict(False, tuple(steps), r)
    iso = y.dims[n + 1] == y.dims[n - 1]
    steps.append(ChaseStep("equal dimensions make it an isomorphism", iso))
    notes = ()
    if n >= 2:
        notes = (f"powers y_(n+j) -> y_(n-j) for j > 1 follow from weak Lefschetz; reported as a standard step, not certified",)
    return LefschetzVerdict(iso, tuple(steps), r, notes)


# --- Chern-Mather classes --------------------------------------------------


def chern_mather_lift(p: PolarData) -> list[tuple[int, tuple[Fraction, ...]]]:
    """c_i = sum_j C(n+1-j, i-j) (-1)^j h^(i-j) [polar class j], in degree 2(n - i)."""
    def h_power(vec, degree, times):
        for t in range(times):
            d = degree - 2 * t
            m = p.h_action.get(d)
            if m is None:
                raise ConeCalcError(f"missing hyperplane action in degree {d}")
            if m.cols != len(vec):
                raise ConeCalcError(f"hyperplane action in degree {d} expects {m.cols} coordinates, got {len(vec)}")
            vec = m.apply(vec)
        return vec

    out = []
    for i in range(p.n + 1):
        total = None
        for j in range(i + 1):
            term = h_power(list(p.classes[j]), 2 * (p.n - j), i - j)
            coeff = comb(p.n + 1 - j, i - j) * (-1) ** j
            term = [coeff * v for v in term]
            if total is None:
                total = term
            elif len(total) != len(term):
                raise ConeCalcError(f"class {j} lands in a space of the wrong size in degree {2 * (p.n - i)}")
            else:
                total = [a + b for a, b in zip(total, term)]
        out.append((2 * (p.n - i), tuple(Fraction(v) for v in total)))
    return out


# --- fixtures and generators ------------------------------------------------


def _m(rows) -> RationalMatrix:
    return RationalMatrix.from_rows(rows)


def point_in_line() -> PairMorphismData:
    x = LefschetzData(GradedVectorSpace((1,)))
    y = LefschetzData(GradedVectorSpace((1, 0, 1)), {2: _m([[1]])})
    return PairMorphismData(x, y, {0: _m([[1]])})


def two_points_in_line() -> PairMorphismData:
    x = LefschetzData(GradedVectorSpace((2,)))
    y = LefschetzData(GradedVectorSpace((1, 0, 1)), {2: _m([[1]])})
    return PairMorphismData(x, y, {0: _m([[1, 1]])})


def projective_line() -> LefschetzData:
    return LefschetzData(GradedVectorSpace((1, 0, 1)), {2: _m([[1]])})


def quadric_surface() -> LefschetzData:
    """P^1 x P^1 with the hyperplane class of bidegree (1, 1)."""
    return LefschetzData(GradedVectorSpace((1, 0, 2, 0, 1)), {2: _m([[1, 1]]), 4: _m([[1], [1]])})


def elliptic_in_quadric() -> PairMorphismData:
    """A bidegree (2, 2) curve of genus one on the quadric surface."""
    x = LefschetzData(GradedVectorSpace((1, 2, 1)), {2: _m([[4]])})
    return PairMorphismData(x, quadric_surface(), {0: _m([[1]]), 2: _m([[2], [2]])})


def projective_plane_polar() -> PolarData:
    return PolarData(2, ((1,), (0,), (0,)), {4: _m([[1]]), 2: _m([[1]])})


def conic_polar() -> PolarData:
    return PolarData(1, ((1,), (2,)), {2: _m([[2]])})


def cubic_polar() -> PolarData:
    return PolarData(1, ((1,), (6,)), {2: _m([[3]])})


def _random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> RationalMatrix:
    return RationalMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols)


def _random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        m = _random_matrix(rng, n, n)
        if la.rank(m) == n:
            return m


def random_lefschetz_pair(rng: random.Random, k: int | None = None, max_dim: int = 3) -> tuple[PairMorphismData, int]:
    """Random data with palindromic dims and the two operators required by the chase invertible."""
    k = k if k is not None else rng.randint(1, 3)

    def dims(top):
        half = [rng.randint(0, max_dim) for _ in range(top // 2 + 1)]
        half[0] = 1
        return [half[min(i, top - i)] for i in range(top + 1)]

    xd, yd = dims(2 * k - 2), dims(2 * k)
    x_lam = {i: _random_matrix(rng, xd[i - 2], xd[i]) for i in range(2, len(xd)) if xd[i] and xd[i - 2]}
    y_lam = {i: _random_matrix(rng, yd[i - 2], yd[i]) for i in range(2, len(yd)) if yd[i] and yd[i - 2]}
    if 2 <= k < len(xd) and xd[k]:
        x_lam[k] = _random_invertible(rng, xd[k])
    if yd[k + 1]:
        y_lam[k + 1] = _random_invertible(rng, yd[k + 1])
    x = LefschetzData(GradedVectorSpace(tuple(xd)), x_lam)
    y = LefschetzData(GradedVectorSpace(tuple(yd)), y_lam)
    alpha = {i: _random_matrix(rng, yd[i], xd[i]) for i in range(len(xd)) if xd[i] and yd[i]}
    return PairMorphismData(x, y, alpha), k
