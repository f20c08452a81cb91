import pytest
from hypothesis import given, strategies as st

from ihtools.perversity import LOG, MIDDLE, TOP, UPPER, ZERO, PerversityError, custom, k_perversity, leq, parse, perversity_value

codims = st.integers(min_value=2, max_value=40)


def test_middle_at_four():
    assert perversity_value(MIDDLE, 4) == 1


def test_log_at_two():
    assert perversity_value(LOG, 2) == 1


def test_k_family_above_threshold():
    assert perversity_value(k_perversity(2), 6) == 3


def test_k_family_at_and_below_threshold():
    k2 = k_perversity(2)
    assert [k2(c) for c in (2, 4)] == [MIDDLE(2), MIDDLE(4)]


def test_codim_below_two_rejected():
    with pytest.raises(PerversityError):
        MIDDLE.value(1)


@given(codims)
def test_builtin_ordering(c):
    assert ZERO(c) <= MIDDLE(c) <= LOG(c) <= TOP(c) + 1
    assert MIDDLE(c) <= UPPER(c) <= LOG(c)


@given(codims, st.integers(0, 20))
def test_k_family_between_middle_and_log(c, k):
    assert MIDDLE(c) <= k_perversity(k)(c) <= LOG(c)


@given(st.integers(1, 20))
def test_even_codim_values(i):
    assert MIDDLE(2 * i) == i - 1
    assert LOG(2 * i) == i


@pytest.mark.parametrize("p", [ZERO, MIDDLE, UPPER, TOP, k_perversity(1), k_perversity(3)])
def test_builtins_satisfy_growth_bounds(p):
    p.check(30)


def test_parse_grammar():
    assert parse("middle") is MIDDLE
    assert parse("k=2").name == "k=2"
    assert parse("custom=2:0,3:1")(3) == 1
    with pytest.raises(PerversityError):
        parse("sideways")
    with pytest.raises(PerversityError):
        parse("custom=2:x")


def test_custom_must_be_monotone():
    with pytest.raises(PerversityError):
        custom({2: 1, 3: 0})


def test_custom_missing_codim():
    with pytest.raises(PerversityError):
        custom({2: 0})(3)


def test_leq():
    assert leq(MIDDLE, LOG, 10)
    assert not leq(LOG, MIDDLE, 10)
