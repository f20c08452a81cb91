"""Exact sparse linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction`; no floating point is
ever involved. Matrices are stored sparsely as ``{(row, col): value}`` maps
and row reduction is done on dict-of-dict rows, which keeps boundary matrices
of simplicial complexes cheap to reduce.

Pivot convention: Gaussian elimination scans columns left to right, so the
pivot columns of a matrix are the lowest-index columns that are independent
of the columns before them. Kernel bases, homology bases and solutions are all
derived from that reduced echelon form and are therefore reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = dict  # sparse vector: index -> Fraction, no stored zeros


class LinearAlgebraError(ValueError):
    pass


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


class RationalMatrix:
    """Sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        if rows < 0 or cols < 0:
            raise LinearAlgebraError("matrix shape must be non-negative")
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise LinearAlgebraError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            v = to_fraction(v)
            if v:
                clean[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        nrows = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise LinearAlgebraError("ragged row list")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(nrows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RationalMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, key) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._entries.get((r, c), Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> list[Vector]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> list[Vector]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return out

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise LinearAlgebraError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict = {}
        for (r, k), v in self._entries.items():
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return RationalMatrix(self.rows, other.cols, acc)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise LinearAlgebraError("shape mismatch in addition")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return RationalMatrix(self.rows, self.cols, acc)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, factor) -> "RationalMatrix":
        f = to_fraction(factor)
        return RationalMatrix(self.rows, self.cols, {k: v * f for k, v in self._entries.items()})

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise LinearAlgebraError("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self._entries.items():
            x = vec[c]
            if x:
                out[r] += v * x
        return out

    def apply_sparse(self, vec: Mapping[int, Fraction]) -> Vector:
        cols = self.col_dicts()
        return sparse_combination((cols[c], x) for c, x in vec.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {format_rows(self)})"


def format_rows(m: RationalMatrix) -> list[list[str]]:
    return [[str(v) for v in row] for row in m.to_rows()]


def sparse_combination(terms: Iterable[tuple[Mapping[int, Fraction], Fraction]]) -> Vector:
    acc: dict = {}
    for vec, coeff in terms:
        if not coeff:
            continue
        for i, v in vec.items():
            acc[i] = acc.get(i, 0) + coeff * v
    return {i: v for i, v in acc.items() if v}


def dense(vec: Mapping[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, v in vec.items():
        out[i] = v
    return out


def sparse(vec: Sequence) -> Vector:
    return {i: to_fraction(v) for i, v in enumerate(vec) if v}


# --- elimination core -----------------------------------------------------


class EchelonBasis:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Each stored vector is normalised to have leading coefficient one at its
    pivot index, and pivots are distinct. Reduction only clears leading
    entries, which is all that membership tests need.

    Internally, integral entries are kept as ``int`` (boundary matrices are
    mostly units, and int arithmetic is far cheaper than Fraction); public
    results are converted back to Fraction.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        r = self._reduce(vec)
        if not r:
            return False
        lead = min(r)
        lv = r[lead]
        if lv == 1:
            row = r
        elif lv == -1:
            row = {i: -v for i, v in r.items()}
        else:
            inv = Fraction(1, lv) if type(lv) is int else 1 / lv
            row = {i: _compact(v * inv) for i, v in r.items()}
        self.pivots[lead] = row
        return True

    def _reduce(self, vec: Mapping[int, Fraction]) -> dict:
        r = {i: _compact(v) for i, v in vec.items() if v}
        pivots = self.pivots
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                break
            _axpy(r, -r[lead], piv)
        return r

    def reduce(self, vec: Mapping[int, Fraction]) -> Vector:
        """Clear leading entries against stored pivots; empty result means in span."""
        return _as_fractions(self._reduce(vec))

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self._reduce(vec)

    def reduced_rows(self) -> dict[int, Vector]:
        """Back-substitute to reduced row echelon form; returns pivot -> row."""
        rows = {c: dict(v) for c, v in self.pivots.items()}
        # column -> pivots whose row has a nonzero entry there; rows only gain
        # entries at non-pivot columns during back-substitution
        occ: dict[int, set] = {}
        for p, row in rows.items():
            for c in row:
                if c != p and c in rows:
                    occ.setdefault(c, set()).add(p)
        for c in sorted(rows, reverse=True):
            prow = rows[c]
            for p in sorted(occ.get(c, ())):
                row = rows[p]
                f = row.get(c)
                if not f:
                    continue
                _axpy(row, -f, prow)
        return {p: _as_fractions(row) for p, row in rows.items()}


def _compact(v):
    """Fraction with denominator one -> int; everything else unchanged."""
    if type(v) is Fraction:
        return v.numerator if v.denominator == 1 else v
    return v


def _as_fractions(vec: Mapping) -> Vector:
    return {i: v if type(v) is Fraction else Fraction(v) for i, v in vec.items()}


def _axpy(r: dict, a, x: Mapping) -> None:
    """r += a * x, in place, dropping zeros."""
    if type(a) is int:
        for j, v in x.items():
            nv = r.get(j, 0) + a * v
            if nv:
                r[j] = nv if type(nv) is int else _compact(nv)
            else:
                r.pop(j, None)
    else:
        for j, v in x.items():
            nv = _compact(r.get(j, 0) + a * v)
            if nv:
                r[j] = nv
            else:
                r.pop(j, None)


def rref(m: RationalMatrix) -> tuple[list[int], dict[int, Vector]]:
    """Reduced row echelon form: (pivot columns ascending, pivot -> row)."""
    eb = EchelonBasis()
    for row in m.row_dicts():
        if row:
            eb.add(row)
    rows = eb.reduced_rows()
    return sorted(rows), rows


# --- public operations ----------------------------------------------------


def rank(m: RationalMatrix) -> int:
    if m.is_zero():
        return 0
    eb = EchelonBasis()
    # reduce along the shorter side; rank is the same
    vecs = m.row_dicts() if m.rows <= m.cols else m.col_dicts()
    for v in vecs:
        if v:
            eb.add(v)
    return len(eb)


def kernel_sparse(m: RationalMatrix) -> list[tuple[int, Vector]]:
    """Kernel basis as (free column, sparse vector) pairs.

    Each vector has coefficient one at its free column and zero at every other
    free column, so the coordinates of any kernel element are its values at
    the free columns.
    """
    pivcols, rows = rref(m)
    pivset = set(pivcols)
    by_free: dict[int, Vector] = {}
    for p, row in rows.items():
        for c, v in row.items():
            if c != p:
                by_free.setdefault(c, {})[p] = -v
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        vec = {f: Fraction(1)}
        vec.update(by_free.get(f, {}))
        out.append((f, vec))
    return out


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    return [dense(v, m.cols) for _, v in kernel_sparse(m)]


def solve_sparse(m: RationalMatrix, b: Mapping[int, Fraction]) -> Vector | None:
    """Pivot-minimal solution of m x = b (free variables set to zero)."""
    aug = m.cols
    rows = m.row_dicts()
    for i, v in b.items():
        if v:
            rows[i][aug] = to_fraction(v)
    eb = EchelonBasis()
    for row in rows:
        if row:
            eb.add(row)
    if aug in eb.pivots:
        return None
    red = eb.reduced_rows()
    return {p: row[aug] for p, row in red.items() if row.get(aug)}


def solve(m: RationalMatrix, b: Sequence) -> list[Fraction] | None:
    if len(b) != m.rows:
        raise LinearAlgebraError("right-hand side length must equal the row count")
    x = solve_sparse(m, sparse(b))
    return None if x is None else dense(x, m.cols)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise LinearAlgebraError("only square matrices are invertible")
    n = m.rows
    eb = EchelonBasis()
    for i, row in enumerate(m.row_dicts()):
        aug = dict(row)
        aug[n + i] = Fraction(1)
        eb.add(aug)
    red = eb.reduced_rows()
    if sorted(red)[:n] != list(range(n)) or any(p >= n for p in red):
        raise LinearAlgebraError("matrix is singular")
    return RationalMatrix(n, n, {(p, c - n): v for p, row in red.items() for c, v in row.items() if c >= n})


def is_injective(m: RationalMatrix) -> bool:
    return rank(m) == m.cols


def is_surjective(m: RationalMatrix) -> bool:
    return rank(m) == m.rows


def is_isomorphism(m: RationalMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def independent_columns(vectors: Sequence[Mapping[int, Fraction]]) -> list[int]:
    """Indices of vectors not in the span of the ones before them."""
    eb = EchelonBasis()
    return [i for i, v in enumerate(vectors) if eb.add(v)]


def complement_basis(subspace: Sequence[Mapping[int, Fraction]], n: int) -> list[int]:
    """Standard basis indices completing ``subspace`` to all of Q^n (lowest first)."""
    eb = EchelonBasis()
    for v in subspace:
        eb.add(v)
    out = []
    for i in range(n):
        if eb.add({i: Fraction(1)}):
            out.append(i)
    return out


# --- graded objects and homology -----------------------------------------


@dataclass(frozen=True)
class GradedVectorSpace:
    """Dimensions indexed by homological degree 0, 1, 2, ..."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if any(d < 0 for d in self.dims):
            raise LinearAlgebraError("dimensions must be non-negative")

    def __getitem__(self, degree: int) -> int:
        if 0 <= degree < len(self.dims):
            return self.dims[degree]
        return 0

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def total(self) -> int:
        return sum(self.dims)

    def is_palindromic(self) -> bool:
        return self.dims == self.dims[::-1]

    def trimmed(self) -> "GradedVectorSpace":
        d = list(self.dims)
        while d and d[-1] == 0:
            d.pop()
        return GradedVectorSpace(tuple(d))


@dataclass(frozen=True)
class ChainComplexMatrices:
    """boundary[d] is the matrix of the differential from degree d to d - 1.

    ``boundary[0]`` has zero rows; its column count fixes the dimension of the
    degree-0 chain group.
    """

    boundary: tuple[RationalMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        for d, m in enumerate(self.boundary):
            if d == 0:
                if m.rows != 0:
                    raise LinearAlgebraError("boundary[0] must have zero rows")
            elif m.rows != self.boundary[d - 1].cols:
                raise LinearAlgebraError(f"boundary[{d}] has {m.rows} rows, expected {self.boundary[d - 1].cols}")

    @classmethod
    def from_dims(cls, mats: Sequence[RationalMatrix]) -> "ChainComplexMatrices":
        return cls(tuple(mats))

    @property
    def top(self) -> int:
        return len(self.boundary) - 1

    def chain_dims(self) -> GradedVectorSpace:
        return GradedVectorSpace(tuple(m.cols for m in self.boundary))

    def dim(self, d: int) -> int:
        return self.boundary[d].cols if 0 <= d < len(self.boundary) else 0

    def differential(self, d: int) -> RationalMatrix:
        if 0 <= d < len(self.boundary):
            return self.boundary[d]
        if d == len(self.boundary):
            return RationalMatrix.zeros(self.dim(d - 1), 0)
        return RationalMatrix.zeros(self.dim(d - 1), self.dim(d))

    def check(self) -> None:
        for d in range(1, len(self.boundary) - 1):
            if not (self.boundary[d] @ self.boundary[d + 1]).is_zero():
                raise LinearAlgebraError(f"boundary composition d{d} . d{d + 1} is not zero")


def homology_dims(c: ChainComplexMatrices) -> GradedVectorSpace:
    c.check()
    ranks = [rank(m) for m in c.boundary] + [0]
    return GradedVectorSpace(tuple(c.dim(d) - ranks[d] - ranks[d + 1] for d in range(len(c.boundary))))


def homology_basis(c: ChainComplexMatrices, d: int) -> list[Vector]:
    """Deterministic cycle representatives of a basis of H_d.

    The boundaries B_d come first, then a kernel basis of the differential;
    the kernel vectors that are pivot columns of [B | Z] are kept.
    """
    if not 0 <= d <= c.top:
        return []
    bnds = [v for v in c.differential(d + 1).col_dicts()]
    cycles = [v for _, v in kernel_sparse(c.differential(d))]
    eb = EchelonBasis()
    for v in bnds:
        if v:
            eb.add(v)
    return [z for z in cycles if eb.add(z)]


def homology_coordinates(c: ChainComplexMatrices, d: int, basis: Sequence[Vector], cycle: Mapping[int, Fraction]) -> list[Fraction]:
    """Coordinates of the class of ``cycle`` in the given homology basis."""
    if c.differential(d).apply_sparse(cycle):
        raise LinearAlgebraError("vector is not a cycle")
    n = c.dim(d)
    bnds = c.differential(d + 1).col_dicts()
    cols = list(basis) + list(bnds)
    m = RationalMatrix.from_columns(n, cols)
    x = solve_sparse(m, cycle)
    if x is None:
        raise LinearAlgebraError("cycle is not in the span of the homology basis and boundaries")
    return [x.get(i, Fraction(0)) for i in range(len(basis))]


def check_chain_map(src: ChainComplexMatrices, tgt: ChainComplexMatrices, chain_map: Sequence[RationalMatrix]) -> None:
    top = max(src.top, tgt.top)
    for d in range(top + 1):
        f = _map_at(src, tgt, chain_map, d)
        if f.shape != (tgt.dim(d), src.dim(d)):
            raise LinearAlgebraError(f"chain map in degree {d} has shape {f.shape}, expected {(tgt.dim(d), src.dim(d))}")
    for d in range(1, top + 1):
        lhs = _map_at(src, tgt, chain_map, d - 1) @ src.differential(d)
        rhs = tgt.differential(d) @ _map_at(src, tgt, chain_map, d)
        if lhs != rhs:
            raise LinearAlgebraError(f"chain map does not commute with the boundary in degree {d}")


def _map_at(src, tgt, chain_map, d) -> RationalMatrix:
    if d < len(chain_map):
        return chain_map[d]
    return RationalMatrix.zeros(tgt.dim(d), src.dim(d))


def induced_map_on_homology(
    src: ChainComplexMatrices,
    tgt: ChainComplexMatrices,
    chain_map: Sequence[RationalMatrix],
    degree: int,
) -> RationalMatrix:
    check_chain_map(src, tgt, chain_map)
    sbasis = homology_basis(src, degree)
    tbasis = homology_basis(tgt, degree)
    f = _map_at(src, tgt, chain_map, degree)
    cols = []
    for z in sbasis:
        img = f.apply_sparse(z)
        coords = homology_coordinates(tgt, degree, tbasis, img)
        cols.append({i: v for i, v in enumerate(coords) if v})
    return RationalMatrix.from_columns(len(tbasis), cols)
