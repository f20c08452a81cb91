import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ihtools import exactla as la
from ihtools.corpus import torus7, tetrahedron_boundary
from ihtools.exactla import ChainComplexMatrices, GradedVectorSpace, RationalMatrix

from oracles import minor_rank

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(small_ints) for _ in range(c)] for _ in range(r)]
    return RationalMatrix.from_rows(rows, c)


def test_rank_identity():
    assert la.rank(RationalMatrix.identity(3)) == 3


def test_rank_proportional_rows():
    assert la.rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_of_constructed_rank_four_matrix():
    rng = random.Random(7)
    while True:
        b = RationalMatrix.from_rows([[rng.randint(-3, 3) for _ in range(4)] for _ in range(6)])
        c = RationalMatrix.from_rows([[rng.randint(-3, 3) for _ in range(6)] for _ in range(4)])
        if minor_rank(b.to_rows()) == 4 and minor_rank(c.to_rows()) == 4:
            break
    m = b @ c
    assert minor_rank(m.to_rows()) == 4
    assert la.rank(m) == 4


def test_kernel_of_single_relation():
    k = la.kernel_basis(RationalMatrix.from_rows([[1, 1]]))
    assert k == [[Fraction(-1), Fraction(1)]] or k == [[Fraction(1), Fraction(-1)]]


def test_kernel_of_identity_is_empty():
    assert la.kernel_basis(RationalMatrix.identity(4)) == []


def test_triangle_cycle_space_is_one_dimensional():
    d1 = RationalMatrix.from_rows([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    ker = la.kernel_basis(d1)
    assert len(ker) == 1
    assert d1.apply(ker[0]) == [0, 0, 0]


def test_solve_identity():
    b = [Fraction(3), Fraction(-1, 2), Fraction(0)]
    assert la.solve(RationalMatrix.identity(3), b) == b


def test_solve_underdetermined():
    x = la.solve(RationalMatrix.from_rows([[1, 1]]), [5])
    assert x is not None and x[0] + x[1] == 5


def test_solve_rejects_nonbounding_torus_cycle():
    x, _ = torus7()
    edges = x.simplices_of_dim(1)
    circle = {edges.index(tuple(sorted((str(i), str((i + 1) % 7)), key=int))): Fraction(1 if i < 6 else -1) for i in range(7)}
    assert x.boundary_matrix(1).apply_sparse(circle) == {}
    assert la.solve_sparse(x.boundary_matrix(2), circle) is None


def test_homology_of_sphere_and_torus():
    assert la.homology_dims(tetrahedron_boundary()[0].chain_complex()) == GradedVectorSpace((1, 0, 1))
    assert la.homology_dims(torus7()[0].chain_complex()) == GradedVectorSpace((1, 2, 1))


def test_homology_of_empty_complex():
    c = ChainComplexMatrices((RationalMatrix(0, 0),))
    assert list(la.homology_dims(c)) == [0]


def test_nonzero_composition_rejected():
    d1 = RationalMatrix.from_rows([[1]])
    d2 = RationalMatrix.from_rows([[1]])
    c = ChainComplexMatrices((RationalMatrix(0, 1), d1, d2))
    with pytest.raises(la.LinearAlgebraError):
        la.homology_dims(c)


def test_identity_chain_map_induces_identity():
    c = torus7()[0].chain_complex()
    ident = [RationalMatrix.identity(c.dim(d)) for d in range(c.top + 1)]
    assert la.induced_map_on_homology(c, c, ident, 1) == RationalMatrix.identity(2)


def test_non_commuting_chain_map_rejected():
    c = tetrahedron_boundary()[0].chain_complex()
    bad = [RationalMatrix.identity(c.dim(0)), RationalMatrix.zeros(c.dim(1), c.dim(1)), RationalMatrix.identity(c.dim(2))]
    with pytest.raises(la.LinearAlgebraError):
        la.induced_map_on_homology(c, c, bad, 1)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        RationalMatrix.from_rows([[0.5]])


def test_inverse_round_trip():
    m = RationalMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ la.inverse(m) == RationalMatrix.identity(2)


@given(matrices())
def test_rank_nullity(m):
    assert la.rank(m) + len(la.kernel_basis(m)) == m.cols


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_minor_oracle(m):
    assert la.rank(m) == minor_rank(m.to_rows())


@given(matrices())
def test_kernel_vectors_map_to_zero(m):
    for v in la.kernel_basis(m):
        assert all(x == 0 for x in m.apply(v))


@given(matrices(), st.lists(small_ints, min_size=5, max_size=5))
def test_solution_is_exact(m, raw):
    b = [Fraction(v) for v in raw[: m.rows]] + [Fraction(0)] * max(0, m.rows - len(raw))
    x = la.solve(m, b)
    if x is not None:
        assert m.apply(x) == b
    else:
        aug = RationalMatrix.from_rows([row + [bv] for row, bv in zip(m.to_rows(), b)], m.cols + 1)
        assert la.rank(aug) > la.rank(m)


@settings(max_examples=30)
@given(matrices())
def test_results_are_deterministic(m):
    assert la.kernel_sparse(m) == la.kernel_sparse(m)
    assert la.rref(m) == la.rref(m)


@pytest.mark.parametrize("build", [torus7, tetrahedron_boundary])
def test_euler_relation(build):
    x, _ = build()
    h = la.homology_dims(x.chain_complex())
    assert h.euler_characteristic() == x.euler_characteristic()
