"""Independent reference computations.

Nothing here calls the elimination code of the package: ranks come from
determinants of minors, homology from those ranks, and graded formulas are
evaluated from their textbook descriptions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def det(rows: list[list[Fraction]]) -> Fraction:
    """Leibniz expansion; only for small matrices."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def minor_rank(rows: list[list]) -> int:
    """Largest k with a nonzero k x k minor."""
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    rows = [[Fraction(v) for v in r] for r in rows]
    best = 0
    for k in range(1, min(m, n) + 1):
        found = False
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                if det([[rows[i][j] for j in ci] for i in ri]):
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = k
    return best


def gauss_rank(rows: list[list]) -> int:
    """Plain dense Gaussian elimination, written separately from the package."""
    a = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def simplicial_homology(simplices: set[tuple], order: dict[str, int]) -> tuple[int, ...]:
    """Rational Betti numbers from dense boundary matrices."""
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s, key=order.__getitem__)))
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort(key=lambda s: [order[v] for v in s])
    ranks = {}
    for d in range(1, top + 1):
        rows_idx = {s: i for i, s in enumerate(by_dim[d - 1])}
        mat = [[0] * len(by_dim[d]) for _ in by_dim[d - 1]]
        for j, s in enumerate(by_dim[d]):
            for k in range(len(s)):
                mat[rows_idx[s[:k] + s[k + 1:]]][j] = (-1) ** k
        ranks[d] = gauss_rank(mat)
    return tuple(len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(top + 1))


def suspension_ih(link_ih: tuple[int, ...], apex_value: int) -> tuple[int, ...]:
    """IH of the suspension of a connected n-dimensional L whose apexes have
    codim n + 1 and perversity value q there.

    Mayer-Vietoris over the two open cones: the cone keeps IH_i(L) below
    t = n - q and kills it from t on, so IH_i(SL) is IH_i(L) for i < t,
    zero for i = t and IH_(i-1)(L) for i > t. Valid for 0 <= q <= n - 1,
    the range where the cone truncation degree t is at least one.
    """
    n = len(link_ih) - 1
    if not 0 <= apex_value <= n - 1:
        raise ValueError("oracle only covers apex values between 0 and n - 1")
    t = n - apex_value
    out = []
    for i in range(n + 2):
        if i < t:
            out.append(link_ih[i])
        elif i == t:
            out.append(0)
        else:
            out.append(link_ih[i - 1])
    return tuple(out)


def cone_closed_support(link_ih: tuple[int, ...], cone_dim: int) -> tuple[int, ...]:
    """Closed-support IH of an open cone, read as H(cL, L) by the long exact
    sequence: the cone kills link classes up to the truncation degree."""
    out = [0] * (cone_dim + 1)
    for i in range(cone_dim + 1):
        if 2 * i > cone_dim and i - 1 < len(link_ih):
            out[i] = link_ih[i - 1]
    return tuple(out)


def kunneth(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_power(base: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        nxt = [0] * (len(out) + len(base) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(base):
                nxt[i + j] += x * y
        out = nxt
    return out


def plane_curve_euler(degree: int) -> int:
    genus = (degree - 1) * (degree - 2) // 2
    return 2 - 2 * genus
