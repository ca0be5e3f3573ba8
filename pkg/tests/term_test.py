import pytest

from chein_helper.error import TermError
from chein_helper.term import (
    BUILTIN_SOURCES,
    LoopIdentity,
    Node,
    Var,
    builtin_identities,
    format_identity,
    parse_identity,
    parse_term,
    resolve_identity,
    search_varieties,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_parse():
    expected = LoopIdentity(Node(x, Node(y, z)), Node(Node(x, y), z))
    assert parse_identity("x(yz)=(xy)z") == expected
    assert parse_identity(" x ( y z ) = ( x y ) z ") == expected
    assert parse_term("xyz") == Node(Node(x, y), z)


@pytest.mark.parametrize("name", sorted(BUILTIN_SOURCES))
def test_builtins_print_as_written(name):
    assert format_identity(builtin_identities()[name]) == BUILTIN_SOURCES[name]


def test_builtins_are_strictly_balanced():
    assert all(psi.strictly_balanced for psi in builtin_identities().values())
    assert not parse_identity("xy=yx").strictly_balanced
    assert not parse_identity("x(yx)=(xx)y").strictly_balanced
    assert parse_identity("x(xy)=(xx)y").strictly_balanced


def test_variables_in_order_of_occurrence():
    assert parse_identity("((zx)y)x=z((xy)x)").variables == ("z", "x", "y")


@pytest.mark.parametrize("src", ["x(yz=(xy)z", "=x", "x+y=z", "xy", "x(yz))=(xy)z", "()=x", "xy=yx="])
def test_parse_errors(src):
    with pytest.raises(TermError):
        parse_identity(src)


def test_resolve_identity():
    name, psi = resolve_identity("Moufang")
    assert name == "moufang"
    assert psi == parse_identity(BUILTIN_SOURCES["moufang"])
    assert resolve_identity("x(yx) = (xy)x")[0] == "x(yx)=(xy)x"


def test_varieties():
    assert len(builtin_identities()) == 16
    assert len(search_varieties()) == 15
    assert "flexible3" not in search_varieties()
