"""Cycle surgery at a singular vertex.

A cycle xi of X passing through a singular vertex v of Y is a cone over a
cycle eta of the link of v in X near v. If eta bounds some zeta in the link of
v in Y, replacing the cone by zeta gives xi' = xi - cone(eta) + zeta, which
avoids v and differs from xi by the boundary of -cone(zeta).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import exactla as la
from .complex import (
    Chain,
    ComplexError,
    SimplicialComplex,
    Stratification,
    barycenter_name,
    barycentric_subdivide,
    link,
)
from .ichains import is_allowable
from .perversity import MIDDLE, Perversity


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class SurgeryProblem:
    x: tuple  # (SimplicialComplex, Stratification)
    y: tuple
    apex: str
    xi: Chain

    def __post_init__(self):
        cx, cy = self.x[0], self.y[0]
        if not cx.is_subcomplex_of(cy):
            raise SurgeryError("X is not a subcomplex of Y")
        if self.apex not in cy.order:
            raise SurgeryError(f"vertex {self.apex!r} is not in Y")
        missing = [s for s in self.xi.terms if s not in cx.simplices]
        if missing:
            raise SurgeryError(f"cycle uses {list(missing[0])}, which is not a simplex of X")
        if not self.xi.is_cycle():
            raise SurgeryError("xi is not a cycle")


@dataclass(frozen=True)
class SurgeryResult:
    cycle: Chain
    eta: Chain
    zeta: Chain
    filler: Chain  # xi - cycle = boundary(filler)
    allowable: bool
    perversity: Perversity


def _star_part(xi: Chain, apex: str) -> Chain:
    return xi.restrict(lambda s: apex in s)


def extract_link_cycle(p: SurgeryProblem) -> Chain:
    """The cycle eta of the link of the apex in X with xi = cone(eta) near the apex."""
    near = _star_part(p.xi, p.apex)
    if p.xi.degree == 0:
        if near:
            raise SurgeryError("a 0-cycle at the apex is not cone-shaped; move it off the apex (barycentric subdivision does not help here)")
        return Chain(-1, {})
    cx = p.x[0]
    lx, _ = link(*p.x, p.apex)
    terms = {}
    for s, c in near.terms.items():
        tau = tuple(v for v in s if v != p.apex)
        _, sign = cx.canonical((p.apex,) + tau)
        terms[tau] = c * sign
    eta = lx.chain(p.xi.degree - 1, terms)
    if cx.cone_chain(p.apex, eta).terms != near.terms or not eta.is_cycle():
        raise SurgeryError("cycle is not cone-shaped near the apex; apply one barycentric subdivision first")
    return eta


def repair_cycle(p: SurgeryProblem, perversity: Perversity = MIDDLE) -> SurgeryResult | None:
    """Replace the cone over eta by a chain bounding eta in the link of Y.

    Returns None when eta does not bound in the link of Y. The allowability of
    the result in Y is reported for ``perversity``, not assumed.
    """
    cy, sy = p.y
    eta = extract_link_cycle(p)
    d = p.xi.degree
    if not eta:
        return SurgeryResult(p.xi, eta, Chain(d, {}), Chain(d + 1, {}), is_allowable(p.xi, perversity, sy), perversity)
    ly, _ = link(cy, sy, p.apex)
    e = eta.degree
    if e + 1 > ly.dim:
        return None
    m = ly.boundary_matrix(e + 1)
    sol = la.solve_sparse(m, ly.chain_vector(eta))
    if sol is None:
        return None
    zeta = ly.chain_from_vector(e + 1, sol)
    # chains of the link are chains of Y with the same canonical tuples
    zeta = cy.chain(d, zeta.terms)
    cycle = p.xi - cy.cone_chain(p.apex, eta) + zeta
    filler = -cy.cone_chain(p.apex, zeta)
    if not cycle.is_cycle():
        raise SurgeryError("surgered chain is not a cycle")
    if p.apex in {v for s in cycle.terms for v in s}:
        raise SurgeryError("surgered cycle still meets the apex")
    if (p.xi - cycle).terms != filler.boundary().terms:
        raise SurgeryError("difference is not the boundary of the cone over zeta")
    return SurgeryResult(cycle, eta, zeta, filler, is_allowable(cycle, perversity, sy), perversity)


def bounds_in(y: SimplicialComplex, c: Chain) -> Chain | None:
    """A chain w with boundary(w) = c, found by an independent solve, or None."""
    if c.degree + 1 > y.dim:
        return None if c else Chain(c.degree + 1, {})
    sol = la.solve_sparse(y.boundary_matrix(c.degree + 1), y.chain_vector(c))
    return None if sol is None else y.chain_from_vector(c.degree + 1, sol)


# --- subdivision normalization ---------------------------------------------


def subdivide_chain(x: SimplicialComplex, sx: SimplicialComplex, c: Chain) -> Chain:
    """Image of a chain of x under the barycentric subdivision chain map into sx."""

    @lru_cache(maxsize=None)
    def sd(simplex: tuple) -> tuple:
        if len(simplex) == 1:
            return ((simplex, 1),)
        acc: dict = {}
        b = barycenter_name(simplex)
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1:]
            for t, v in sd(face):
                key = (b,) + t
                acc[key] = acc.get(key, 0) + (-1) ** k * v
        return tuple(acc.items())

    terms: dict = {}
    for s, v in c.terms.items():
        for t, w in sd(s):
            can, sign = sx.canonical(t)
            terms[can] = terms.get(can, 0) + sign * w * v
    return sx.chain(c.degree, terms)


def subdivide_problem(p: SurgeryProblem) -> SurgeryProblem:
    """The same problem after one barycentric subdivision of X and Y."""
    sy = barycentric_subdivide(*p.y)
    sxs = barycentric_subdivide(*p.x)
    if not sxs[0].is_subcomplex_of(sy[0]):
        raise ComplexError("subdivided X is not a subcomplex of subdivided Y")
    xi = subdivide_chain(p.x[0], sy[0], p.xi)
    return SurgeryProblem(sxs, sy, p.apex, sxs[0].chain(xi.degree, xi.terms))
