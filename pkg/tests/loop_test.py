import numpy as np
import pytest

from chein_helper.error import InadmissibleError
from chein_helper.group import StarMap, g0_candidates, load_group, parse_cayley
from chein_helper.loop import LoopTable, build_loop, check_isomorphism, shift_map, star_coset_map
from chein_helper.search import enumerate_quadruples
from chein_helper.term import builtin_identities
from chein_helper.theta import (
    CHEIN,
    DBJ,
    G0,
    S,
    STAR_TWIST_BETAS,
    STAR_TWIST_GAMMAS,
    THETA,
    X_Y,
    XY,
    YX_,
    MultQuadruple,
)
from tests.group_test import LOOP5

IDENTITIES = builtin_identities()


def build(spec, quadruple, g0=0, star="inverse"):
    group = load_group(spec)
    star = StarMap.inverse(group) if star == "inverse" else StarMap.identity(group)
    return LoopTable.build(group, star, g0, quadruple)


def test_chein_loop_over_s3():
    loop = build("symmetric:3", CHEIN)
    assert len(loop) == 12
    assert loop.is_loop()
    assert loop.check_identity(IDENTITIES["moufang"])
    assert not loop.check_identity(IDENTITIES["assoc"])
    assert not loop.is_associative()
    assert loop.identity_witness(IDENTITIES["assoc"]) is not None


def test_chein_loop_over_abelian_groups_is_a_group():
    assert build("cyclic:4", CHEIN, 2).is_associative()
    assert build("cyclic:1", CHEIN).table.tolist() == [[0, 1], [1, 0]]


def test_dbj_loops():
    d4 = build("dihedral:4", DBJ, 2)
    assert d4.check_identity(IDENTITIES["flexible"])
    assert d4.check_identity(IDENTITIES["c"])
    assert d4.is_diassociative()
    group = load_group("symmetric:3")
    s3 = build_loop(group, StarMap.inverse(group), 0, DBJ)
    assert s3.check_identity(IDENTITIES["flexible"])
    assert not s3.check_identity(IDENTITIES["c"])


def test_dbj_over_the_battery(battery):
    for w in battery:
        pc, pb, ps = w.signature
        loop = LoopTable.build(w.group, w.star, w.g0, DBJ)
        assert loop.check_identity(IDENTITIES["flexible"])
        assert loop.check_identity(IDENTITIES["c"]) == pb
        assert loop.check_identity(IDENTITIES["assoc"]) == loop.check_identity(IDENTITIES["moufang"]) == pc
        if pb:
            assert loop.is_diassociative()


def test_g0_must_be_admissible():
    with pytest.raises(InadmissibleError):
        build("dihedral:4", DBJ, 1)


def test_loop_region_on_cyclic_4():
    group = load_group("cyclic:4")
    star = StarMap.inverse(group)
    for alpha in S:
        for beta in THETA:
            for gamma in THETA:
                for delta in THETA + [G0 * t for t in THETA]:
                    q = MultQuadruple(alpha, beta, gamma, delta)
                    assert LoopTable.build(group, star, 2, q).is_loop() == q.in_loop_region, q


def test_reduced_quadruples_have_neutral_zero_and_inverses(d4):
    s3 = load_group("symmetric:3")
    for q in enumerate_quadruples():
        loop = LoopTable.build(d4, StarMap.inverse(d4), 2, q)
        assert loop.neutral_element() == 0
        assert loop.has_two_sided_inverses()
        assert LoopTable.build(s3, StarMap.inverse(s3), 0, q).has_two_sided_inverses()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_shifting_by_g0_gives_isomorphic_loops(d4, n):
    star = StarMap.inverse(d4)
    f = shift_map(d4, d4.power(2, n))
    for q in enumerate_quadruples():
        a = LoopTable.build(d4, star, 2, q)
        b = LoopTable.build(d4, star, 2, q.shifted(n))
        assert check_isomorphism(a, b, f), q


def test_opposite_loops(d4):
    star = StarMap.inverse(d4)
    for q in enumerate_quadruples():
        a = LoopTable.build(d4, star, 2, q)
        b = LoopTable.build(d4, star, 2, q.opposite())
        assert a.opposite() == b
        assert a.check_identity(IDENTITIES["lbol"]) == b.check_identity(IDENTITIES["rbol"])


@pytest.mark.parametrize("spec", ["dihedral:4", "quaternion:8"])
def test_star_on_gu_gives_isomorphic_loops(spec):
    group = load_group(spec)
    star = StarMap.inverse(group)
    f = star_coset_map(star)
    for beta, beta2 in STAR_TWIST_BETAS:
        for gamma, gamma2 in STAR_TWIST_GAMMAS:
            for delta in (G0 * XY, G0 * YX_, G0 * X_Y):
                q = MultQuadruple(XY, beta, gamma, delta)
                a = LoopTable.build(group, star, 2, q)
                b = LoopTable.build(group, star, 2, q.star_twisted(beta2, gamma2))
                assert check_isomorphism(a, b, f), q


def test_identity_star_on_elementary_abelian_group():
    group = load_group("cyclic:2 x cyclic:2")
    star = StarMap.identity(group)
    for g0 in g0_candidates(group, star):
        for q in enumerate_quadruples():
            loop = LoopTable.build(group, star, g0.index, q)
            assert loop.is_loop()
            assert loop.is_associative()
            assert loop.is_commutative()


def test_check_isomorphism_arguments():
    a = build("cyclic:4", CHEIN, 2)
    assert check_isomorphism(a, a, np.arange(8))
    with pytest.raises(ValueError):
        check_isomorphism(a, build("cyclic:2", CHEIN), np.arange(8))
    with pytest.raises(ValueError):
        check_isomorphism(a, a, np.zeros(8, dtype=int))


def test_divisions():
    loop = build("symmetric:3", CHEIN)
    t = loop.table
    for a in range(12):
        for b in range(12):
            assert t[a, loop.left_division[a, b]] == b
            assert t[loop.right_division[b, a], a] == b


def test_non_diassociative_loop():
    loop = LoopTable(LOOP5)
    assert loop.is_latin()
    assert loop.is_loop()
    assert not loop.is_diassociative()
    assert repr(loop) == "<LoopTable of order 5>"



def test_dumps(tmp_path):
    loop = build("cyclic:4", CHEIN, 2)
    text = loop.dumps()
    assert text.startswith("# group cyclic:4\n# star [0 3 2 1]\n# g0 2\n# quadruple yx,xy*,g0y*x\n8\n")
    assert np.array_equal(parse_cayley(text).table, loop.table)
    path = tmp_path / "loop.txt"
    loop.write(path)
    assert path.read_text() == text
