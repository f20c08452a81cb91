import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ihtools import conecalc as cc, corpus
from ihtools.exactla import GradedVectorSpace, RationalMatrix
from ihtools.ichains import ih_betti
from ihtools.perversity import MIDDLE

from oracles import cone_closed_support, gauss_rank, kunneth, plane_curve_euler, poly_power


def _m(rows, cols=None):
    return RationalMatrix.from_rows(rows, cols)


# --- cone formula -------------------------------------------------------------


@given(st.lists(st.integers(0, 4), min_size=1, max_size=5), st.integers(0, 3))
def test_cone_formula_matches_long_exact_sequence(link, extra):
    cone_dim = len(link) + extra
    assert tuple(cc.cone_formula(link, cone_dim)) == cone_closed_support(tuple(link), cone_dim)


def test_cone_formula_keeps_only_upper_half():
    assert tuple(cc.cone_formula((1, 2, 1), 3)) == (0, 0, 2, 1)
    assert tuple(cc.cone_formula((1, 0, 1), 3)) == (0, 0, 0, 1)
    assert tuple(cc.cone_formula((1, 1), 2)) == (0, 0, 1)


def test_cone_formula_rejects_link_above_cone_dimension():
    with pytest.raises(cc.ConeCalcError, match="past degree"):
        cc.cone_formula((1, 0, 1), 2)


# --- projective cone table ------------------------------------------------------


def test_table_point_in_line():
    t = cc.projective_cone_table(cc.point_in_line(), 1)
    assert tuple(t.base) == (1, 0, 1)
    assert tuple(t.total) == (1, 0, 1, 0, 1)
    assert t.ranks() == (1, 0, 1, 0, 0)


def test_table_two_points_matches_chain_engine():
    t = cc.projective_cone_table(cc.two_points_in_line(), 1)
    assert tuple(t.base) == (2, 0, 2)
    assert tuple(t.total) == (1, 0, 1, 0, 1)
    x, s = corpus.wedge_of_spheres()
    assert tuple(ih_betti(x, s, MIDDLE).dims) == tuple(t.base)


def test_table_map_shapes_fit_the_dimensions():
    t = cc.projective_cone_table(cc.two_points_in_line(), 1)
    for i, m in enumerate(t.maps):
        assert m.shape == (t.total[i], t.base[i])


def test_table_rejects_failing_hard_lefschetz():
    d = cc.point_in_line()
    bad = cc.PairMorphismData(d.x, cc.LefschetzData(GradedVectorSpace((1, 0, 1)), {2: _m([[0]])}), d.alpha)
    with pytest.raises(cc.PreconditionError, match="Hard Lefschetz precondition fails"):
        cc.projective_cone_table(bad, 1)


def test_morphism_shape_is_checked():
    d = cc.point_in_line()
    with pytest.raises(cc.ConeCalcError, match="shape"):
        cc.PairMorphismData(d.x, d.y, {0: _m([[1, 1]])})


# --- Gysin link -------------------------------------------------------------------


def test_gysin_line_gives_three_sphere():
    assert tuple(cc.gysin_link(cc.projective_line()).dims) == (1, 0, 0, 1)


def test_gysin_quadric_gives_product_of_spheres():
    g = cc.gysin_link(cc.quadric_surface())
    assert tuple(g.dims) == kunneth((1, 0, 1), (1, 0, 0, 1)) == (1, 0, 1, 1, 0, 1)
    assert g.dims.euler_characteristic() == 0


def test_gysin_point_base_is_circle():
    assert tuple(cc.gysin_link(cc.LefschetzData(GradedVectorSpace((1,)))).dims) == (1, 1)


def _random_base(rng):
    top = rng.randint(0, 6)
    dims = [rng.randint(0, 3) for _ in range(top + 1)]
    lam = {
        i: _m([[rng.randint(-2, 2) for _ in range(dims[i])] for _ in range(dims[i - 2])], dims[i])
        for i in range(2, top + 1)
        if dims[i] and dims[i - 2]
    }
    return cc.LefschetzData(GradedVectorSpace(tuple(dims)), lam)


def _oracle_link_dims(base):
    b = base.dims
    def r(i):
        m = base.op(i)
        return gauss_rank(m.to_rows()) if m.rows and m.cols else 0
    return tuple((b[k - 1] - r(k + 1)) + (b[k] - r(k)) for k in range(len(b) + 1))


def test_gysin_random_bases_have_zero_euler_characteristic():
    rng = random.Random(20261019)
    for _ in range(100):
        base = _random_base(rng)
        g = cc.gysin_link(base)
        assert g.dims.euler_characteristic() == 0
        assert tuple(g.dims) == _oracle_link_dims(base)


def test_gysin_maps_have_declared_shapes():
    base = cc.quadric_surface()
    g = cc.gysin_link(base)
    for k in range(len(g.dims)):
        assert g.pullback[k].shape == (g.dims[k], base.dims[k - 1])
        assert g.pushforward[k].shape == (base.dims[k], g.dims[k])


# --- link-map chase ------------------------------------------------------------------


def test_chase_on_elliptic_curve_fixture():
    res = cc.link_map_chase(cc.elliptic_in_quadric(), 2)
    assert res.vanishes
    assert res.matrix.shape == (1, 2) and res.matrix.is_zero()
    assert all(step.holds for step in res.steps)
    assert any("commutes" in step.claim for step in res.steps)


def test_chase_on_random_instances_vanishes():
    rng = random.Random(7)
    for _ in range(100):
        d, k = cc.random_lefschetz_pair(rng)
        res = cc.link_map_chase(d, k)
        assert res.vanishes, (tuple(d.x.dims), tuple(d.y.dims), k)
        lx, ly = cc.gysin_link(d.x), cc.gysin_link(d.y)
        # the left square of the Gysin morphism commutes through the computed map
        assert res.matrix @ lx.pullback[k] == ly.pullback[k] @ d.map(k - 1)


def test_chase_refuses_without_hard_lefschetz():
    d = cc.elliptic_in_quadric()
    x = cc.LefschetzData(d.x.dims, {2: _m([[0]])})
    with pytest.raises(cc.PreconditionError, match="no conclusion"):
        cc.link_map_chase(cc.PairMorphismData(x, d.y, d.alpha), 2)


# --- Hard Lefschetz from link vanishing -----------------------------------------------


def _plane_and_line():
    y = cc.LefschetzData(GradedVectorSpace((1, 0, 1, 0, 1)), {2: _m([[1]]), 4: _m([[1]])})
    return cc.projective_line(), y


def test_hard_lefschetz_certified_for_plane():
    x, y = _plane_and_line()
    v = cc.hard_lefschetz_from_links(x, y, {0: _m([[1]]), 2: _m([[1]])}, True, 2)
    assert v.certified is True
    assert v.rank == 0
    assert v.notes


def test_hard_lefschetz_quadric_with_conic_section():
    conic = cc.projective_line()
    v = cc.hard_lefschetz_from_links(conic, cc.quadric_surface(), {0: _m([[1]])}, True, 2)
    assert v.certified is True


def test_hard_lefschetz_gated_when_restriction_not_surjective():
    curve = cc.LefschetzData(GradedVectorSpace((1, 2, 1)), {2: _m([[1]])})
    points = cc.LefschetzData(GradedVectorSpace((3,)))
    v = cc.hard_lefschetz_from_links(points, curve, {0: _m([[0, 0, 0]])}, True, 1)
    assert v.certified is None
    assert not v.steps[0].holds


def test_hard_lefschetz_gated_without_link_vanishing():
    x, y = _plane_and_line()
    v = cc.hard_lefschetz_from_links(x, y, {0: _m([[1]])}, False, 2)
    assert v.certified is None


def test_hard_lefschetz_flags_inconsistent_operator():
    curve = cc.LefschetzData(GradedVectorSpace((1, 0, 1)), {2: _m([[0]])})
    v = cc.hard_lefschetz_from_links(cc.LefschetzData(GradedVectorSpace((1,))), curve, {0: _m([[1]])}, True, 1)
    assert v.certified is False


# --- Chern-Mather lift -------------------------------------------------------------------


def _degrees(p):
    return [vec[0] for _, vec in cc.chern_mather_lift(p)]


def test_chern_plane_is_binomial():
    assert _degrees(cc.projective_plane_polar()) == [Fraction(c) for c in poly_power([1, 1], 3)[:3]]
    assert [d for d, _ in cc.chern_mather_lift(cc.projective_plane_polar())] == [4, 2, 0]


def test_chern_conic_and_cubic():
    assert _degrees(cc.conic_polar())[1] == 2
    assert _degrees(cc.cubic_polar())[1] == 0


@settings(max_examples=30)
@given(st.integers(1, 12))
def test_chern_plane_curve_matches_genus_formula(d):
    p = cc.PolarData(1, ((1,), (d * (d - 1),)), {2: _m([[d]])})
    assert _degrees(p) == [1, plane_curve_euler(d)]


def test_polar_data_checks_class_count():
    with pytest.raises(cc.ConeCalcError, match="expected 3"):
        cc.PolarData(2, ((1,), (0,)), {})
