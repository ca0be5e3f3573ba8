import pytest
from hypothesis import given
from hypothesis import strategies as st

from chein_helper.error import TermError
from chein_helper.group import StarMap, load_group
from chein_helper.loop import theta_block
from chein_helper.theta import (
    CHEIN,
    DBJ,
    DBJ_REDUCED,
    G0,
    THETA,
    X_Y,
    X_Y_,
    XY,
    XY_,
    Y_X,
    YX,
    YX_,
    MultQuadruple,
    ThetaElem,
    theta_compose,
    theta_format,
    theta_parse,
)
from chein_helper.word import GroupWord

D4 = load_group("dihedral:4")
D4_STAR = StarMap.inverse(D4)
MAPS = THETA + [G0 * t for t in THETA] + [t.shift(-1) for t in THETA]


@pytest.mark.parametrize("token", ["xy", "yx*", "g0y*x", "g0^2x*y*", "g0^-1yx"])
def test_parse_format(token):
    assert str(ThetaElem.parse(token)) == token


@pytest.mark.parametrize("token", ["xx", "ab", "", "g0", "xyz"])
def test_parse_errors(token):
    with pytest.raises(TermError):
        ThetaElem.parse(token)


def test_apply():
    pair = (GroupWord.parse("a"), GroupWord.parse("b"))
    assert ThetaElem.parse("g0y*x").evaluate(pair) == GroupWord.parse("g0 b* a")
    assert ThetaElem.parse("xy*").evaluate((GroupWord.parse("a b"), GroupWord.parse("c"))) == GroupWord.parse("a b c*")
    assert YX_.evaluate((GroupWord.parse("a b"), GroupWord.parse("c d"))) == GroupWord.parse("c d b* a*")


def test_compose():
    assert X_Y_ * Y_X == YX_
    assert XY * YX == YX
    assert YX * YX == XY
    assert (G0 * X_Y).g0_exp == 1


def test_theta_is_a_nonabelian_group_of_order_8():
    assert len(set(THETA)) == 8
    assert {a * b for a in THETA for b in THETA} == set(THETA)
    assert all(XY * t == t == t * XY for t in THETA)
    assert all(any(t * s == XY for s in THETA) for t in THETA)
    assert YX * XY_ != XY_ * YX
    assert all(G0 * t == t * G0 for t in THETA)


def _apply_in_group(theta, g, h):
    a, b = (h, g) if theta.swap else (g, h)
    if theta.star_first:
        a = D4_STAR(a)
    if theta.star_second:
        b = D4_STAR(b)
    return D4.mul(D4.power(2, theta.g0_exp), a), b


@given(st.sampled_from(MAPS), st.sampled_from(MAPS), st.integers(0, 7), st.integers(0, 7))
def test_compose_agrees_with_application(a, b, g, h):
    inner = _apply_in_group(b, g, h)
    outer = _apply_in_group(a, *inner)
    assert theta_block(D4, D4_STAR, 2, a * b)[g, h] == D4.mul(*outer)


def test_quadruple_parse():
    assert MultQuadruple.parse("yx,xy*,g0y*x") == CHEIN
    assert MultQuadruple.parse("(xy,yx,xy*,g0y*x)") == CHEIN
    assert str(CHEIN) == "yx,xy*,g0y*x"
    assert str(MultQuadruple.parse("yx,xy,xy,g0xy")) == "yx,xy,xy,g0xy"
    with pytest.raises(TermError):
        MultQuadruple.parse("xy,yx")


def test_reduced():
    assert DBJ_REDUCED.is_reduced
    assert not DBJ.is_reduced
    assert not CHEIN.is_reduced
    assert CHEIN.in_loop_region
    assert DBJ.in_loop_region
    assert not MultQuadruple.parse("xy*,xy,g0xy").in_loop_region


def test_opposite_is_an_involution():
    for q in (CHEIN, DBJ, DBJ_REDUCED):
        assert q.opposite().opposite() == q
    assert CHEIN.opposite().alpha == YX


def test_shifted():
    q = DBJ.shifted(2)
    assert [t.g0_exp for t in q] == [2, 2, 2, 3]
    assert q.shifted(-2) == DBJ


def test_star_twisted():
    assert DBJ.star_twisted(YX_, XY) == DBJ_REDUCED
    assert CHEIN.star_twisted(X_Y, YX) == MultQuadruple.parse("x*y,yx,g0yx*")


def test_functional_aliases():
    assert theta_format(theta_compose(theta_parse("x*y*"), theta_parse("y*x"))) == "yx*"


@pytest.mark.parametrize("a", THETA)
@pytest.mark.parametrize("b", THETA)
def test_compose_agrees_with_word_application(a, b):
    pair = (GroupWord.parse("g0 a b*"), GroupWord.parse("c d"))
    assert (a * b).evaluate(pair) == a.evaluate(b.apply(pair))
    assert (G0 * a * b).evaluate(pair) == (G0 * a).evaluate(b.apply(pair)) == a.evaluate((G0 * b).apply(pair))


@pytest.mark.parametrize("n", [-1, 1, 2])
def test_g0_powers_commute_with_delta(n):
    pair = (GroupWord.parse("a b"), GroupWord.parse("c*"))
    power = ThetaElem(n)
    for t in THETA:
        assert (power * t).evaluate(pair) == t.evaluate(pair).shift(n) == (t * power).evaluate(pair)
        plain = theta_block(D4, D4_STAR, 2, t)
        assert (theta_block(D4, D4_STAR, 2, t.shift(n)) == D4.table[D4.power(2, n), plain]).all()
        block = theta_block(D4, D4_STAR, 2, power * t)
        for g in range(D4.order):
            for h in range(D4.order):
                after = _apply_in_group(power, *_apply_in_group(t, g, h))
                before = _apply_in_group(t, *_apply_in_group(power, g, h))
                assert D4.mul(*after) == D4.mul(*before) == block[g, h]


def test_full_star_is_central():
    assert X_Y_ * X_Y_ == XY
    for t in THETA:
        assert X_Y_ * t == t * X_Y_
        assert (theta_block(D4, D4_STAR, 2, X_Y_ * t) == theta_block(D4, D4_STAR, 2, t * X_Y_)).all()
