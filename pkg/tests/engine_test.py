import pytest

from chein_helper.engine import (
    Coset,
    SymbolicValue,
    assignments,
    collect_identities,
    delta_usage,
    evaluate_term,
)
from chein_helper.error import NotStrictlyBalanced
from chein_helper.term import builtin_identities, leaves, parse_identity, parse_term
from chein_helper.theta import ASSOCIATIVE, CHEIN, DBJ, MultQuadruple, ThetaElem
from chein_helper.word import GroupIdentity, GroupWord

G, GU = Coset.G, Coset.GU
EXTRA_QUADRUPLE = MultQuadruple.parse("x*y,yx,g0yx*")


def test_chein_product_of_two_gu():
    value = evaluate_term(parse_term("xy"), {"x": GU, "y": GU}, CHEIN)
    assert value == SymbolicValue(G, GroupWord.parse("g0 y* x"))


def test_dbj_nested_product():
    value = evaluate_term(parse_term("x(y(yz))"), {"x": GU, "y": G, "z": GU}, DBJ)
    assert value == SymbolicValue(G, GroupWord.parse("g0 x z* y* y*"))
    assert str(evaluate_term(parse_term("x"), {"x": GU}, DBJ)) == "(x)u"


def test_assignments_count_in_binary():
    cosets = [tuple(f.values()) for f in assignments(("x", "y"))]
    assert cosets == [(G, G), (G, GU), (GU, G), (GU, GU)]


def test_trace_of_c_loop_identity():
    trace = []
    result = collect_identities(builtin_identities()["c"], DBJ, trace)
    assert len(trace) == 8
    line = next(l for l in trace if l.assignment == (GU, G, GU))
    assert line.lhs == GroupWord.parse("g0 y* y* x z*")
    assert line.rhs == GroupWord.parse("g0 x z* y* y*")
    assert line.canonical == GroupIdentity.parse("y* y* x z* = x z* y* y*")
    assert str(line) == "f=GuGGu : g0 y* y* x z* = g0 x z* y* y* -> y* y* x z* = x z* y* y*"
    assert result.nontrivial == [line.canonical]


def test_extra_under_chein_twist():
    result = collect_identities(builtin_identities()["extra"], EXTRA_QUADRUPLE)
    assert set(result.nontrivial) == {
        GroupIdentity.parse("x* y* x = x y* x*"),
        GroupIdentity.parse("x* z x = x z x*"),
        GroupIdentity.parse("x x z y* = z y* x x"),
    }


def test_moufang_under_chein_twist_is_trivial():
    assert collect_identities(builtin_identities()["moufang"], EXTRA_QUADRUPLE).nontrivial == []


@pytest.mark.parametrize("name", sorted(builtin_identities()))
def test_identity_star_and_plain_maps_give_trivial_identities(name):
    assert collect_identities(builtin_identities()[name], ASSOCIATIVE).nontrivial == []


def test_delta_usage():
    c = builtin_identities()["c"]
    assert delta_usage(c.lhs, {"x": GU, "y": GU, "z": G}) == 1
    assert delta_usage(c.lhs, {"x": G, "y": G, "z": G}) == 0


@pytest.mark.parametrize("name", sorted(builtin_identities()))
def test_delta_usage_is_half_the_gu_leaves(name):
    psi = builtin_identities()[name]
    for f in assignments(psi.variables):
        k = sum(f[v] for v in leaves(psi.lhs))
        assert delta_usage(psi.lhs, f) == delta_usage(psi.rhs, f) == k // 2
        assert evaluate_term(psi.lhs, f, CHEIN).coset == Coset(k % 2)


def test_not_strictly_balanced():
    with pytest.raises(NotStrictlyBalanced):
        collect_identities(parse_identity("x(yx)=(xx)y"), CHEIN)


def test_sides_in_different_cosets(monkeypatch):
    psi = parse_identity("x(yz)=(xy)z")
    monkeypatch.setattr(
        "chein_helper.engine.evaluate_term",
        lambda t, f, q: SymbolicValue(Coset(int(t == psi.lhs)), GroupWord()),
    )
    with pytest.raises(ValueError, match="different cosets"):
        collect_identities(psi, MultQuadruple.parse("yx*,yx,g0^3y*x"))


def test_g0_twists_evaluate(battery):
    assert ThetaElem.parse("g0xy").evaluate((GroupWord.of("x"), GroupWord.of("y"))) == GroupWord.parse("g0 x y")
    moufang = collect_identities(builtin_identities()["moufang"], CHEIN)
    assert moufang
    for w in battery:
        assert all(i.holds(w.group.table, w.star.array, w.g0) for i in moufang), w
