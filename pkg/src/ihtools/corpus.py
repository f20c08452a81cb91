"""Standard triangulations used as test geometry.

Every builder returns ``(complex, stratification)``.
"""
from __future__ import annotations

from itertools import combinations

from .complex import SimplicialComplex, Stratification, suspension

EMPTY = Stratification()


def _unstratified(vertices, simplices):
    return SimplicialComplex.from_simplices(vertices, simplices), EMPTY


def point(name: str = "p"):
    return _unstratified([name], [[name]])


def two_points():
    return _unstratified(["p", "q"], [["p"], ["q"]])


def polygon(n: int = 6, prefix: str = "c"):
    """Circle as an n-gon."""
    vs = [f"{prefix}{i}" for i in range(n)]
    return _unstratified(vs, [[vs[i], vs[(i + 1) % n]] for i in range(n)])


def simplex_boundary(n: int, prefix: str = "v"):
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    vs = [f"{prefix}{i}" for i in range(n + 1)]
    return _unstratified(vs, [list(f) for f in combinations(vs, n)])


def tetrahedron_boundary():
    return simplex_boundary(3)


def octahedron():
    """S^2 with equator x+, y+, x-, y- and poles z+, z-."""
    vs = ["x+", "y+", "x-", "y-", "z+", "z-"]
    eq = ["x+", "y+", "x-", "y-"]
    tris = [[eq[i], eq[(i + 1) % 4], pole] for i in range(4) for pole in ("z+", "z-")]
    return _unstratified(vs, tris)


def octahedron_equator():
    vs = ["x+", "y+", "x-", "y-"]
    return _unstratified(vs, [[vs[i], vs[(i + 1) % 4]] for i in range(4)])


def torus7():
    """Seven-vertex (Moebius-Csaszar) torus: triangles {i,i+1,i+3}, {i,i+2,i+3} mod 7."""
    vs = [str(i) for i in range(7)]
    tris = []
    for i in range(7):
        tris.append([vs[i], vs[(i + 1) % 7], vs[(i + 3) % 7]])
        tris.append([vs[i], vs[(i + 2) % 7], vs[(i + 3) % 7]])
    return _unstratified(vs, tris)


def torus7_factor_circle():
    """The edge cycle 0-1-2-...-6-0; it generates a primitive class of H_1(T^2)."""
    vs = [str(i) for i in range(7)]
    return _unstratified(vs, [[vs[i], vs[(i + 1) % 7]] for i in range(7)])


def torus7_trivial_circle():
    """Boundary of the triangle {0,1,3}; null-homologous in the torus."""
    return _unstratified(["0", "1", "3"], [["0", "1"], ["1", "3"], ["0", "3"]])


def grid_surface(m: int, n: int, twist: bool = False):
    """m x n grid with opposite sides identified: torus, or Klein bottle when ``twist``.

    Vertex (i, j) is named ``g{i}_{j}``; crossing j = n - 1 -> 0 flips i when
    ``twist`` is set. Requires m, n >= 3.
    """
    def name(i, j):
        if j >= n:
            j -= n
            if twist:
                i = -i
        return f"g{i % m}_{j}"

    vs = [f"g{i}_{j}" for j in range(n) for i in range(m)]
    tris = []
    for i in range(m):
        for j in range(n):
            a, b = name(i, j), name(i + 1, j)
            c, d = name(i, j + 1), name(i + 1, j + 1)
            tris.append([a, b, d])
            tris.append([a, c, d])
    return _unstratified(vs, tris)


def klein_bottle():
    return grid_surface(4, 4, twist=True)


def wedge_of_spheres():
    """Two tetrahedron boundaries glued at vertex ``o``: two crossing projective lines."""
    a = ["o", "a1", "a2", "a3"]
    b = ["o", "b1", "b2", "b3"]
    tris = [list(f) for f in combinations(a, 3)] + [list(f) for f in combinations(b, 3)]
    x = SimplicialComplex.from_simplices(["o", "a1", "a2", "a3", "b1", "b2", "b3"], tris)
    return x, Stratification.build(x, [(2, [["o"]])])


def suspended(builder, *args):
    x, s = builder(*args)
    return suspension(x, s)


def suspended_torus():
    return suspended(torus7)


def suspended_sphere():
    return suspended(octahedron)


def suspended_circle():
    return suspended(polygon, 6)
