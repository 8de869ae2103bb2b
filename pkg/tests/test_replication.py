import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigsb.assoc_poly import AssocPoly, multiply
from trigsb.lie_poly import LiePoly, bracket
from trigsb.lyndon import enumerate_ls_words
from trigsb.replication import (
    DASHV,
    PERP,
    VDASH,
    Membership,
    ModeError,
    NotPolylinear,
    TriPoly,
    all_subsets,
    alphabet_for,
    anticommutativity,
    associativity,
    dashv,
    encode,
    free_basis,
    in_V,
    jacobi,
    member,
    op,
    perp,
    phi,
    replicate,
    replicated_identities,
    tri_lie_identities,
    vdash,
    zero_identities,
)


def gen(name, mode="tri"):
    return TriPoly.gen(name, mode)


def test_replicated_anticommutativity():
    phi_ = anticommutativity()
    assert str(replicate(phi_, {1}, "tri")) == "(x2 |- x1) + (x1 -| x2)"
    assert str(replicate(phi_, {2}, "tri")) == "(x2 -| x1) + (x1 |- x2)"
    assert str(replicate(phi_, {1, 2}, "tri")) == "(x2 <> x1) + (x1 <> x2)"


def test_replicated_jacobi_single_emphasis():
    got = replicate(jacobi(), {1}, "di")
    assert str(got) == "((x3 |- x1) -| x2) + ((x2 -| x3) |- x1) + ((x1 -| x2) -| x3)"


def test_subsets_by_mode():
    assert all_subsets(3, "di") == [{1}, {2}, {3}]
    assert all_subsets(2, "tri") == [{1}, {2}, {1, 2}]


def test_replicate_rejects_bad_input():
    x1, x2 = gen("x1", "plain"), gen("x2", "plain")
    with pytest.raises(ModeError):
        replicate(replicate(anticommutativity(), {1}, "tri"), {1}, "tri")
    with pytest.raises(ValueError):
        replicate(anticommutativity(), {1, 2}, "di")
    with pytest.raises(NotPolylinear):
        replicate(op("*", x1, x1), {1}, "tri")
    with pytest.raises(ValueError):
        replicate(anticommutativity(), set(), "tri")
    with pytest.raises(ValueError):
        replicate(op("*", x1, x2), {3}, "tri")


def test_mode_errors():
    with pytest.raises(ModeError):
        perp(gen("x", "di"), gen("y", "di"))
    with pytest.raises(ModeError):
        vdash(gen("x", "di"), gen("y", "tri"))


@pytest.mark.parametrize("mode", ["di", "tri"])
def test_identities_vanish_under_encoding(mode):
    ids = replicated_identities([anticommutativity(), jacobi()], mode)
    ids += zero_identities(mode) + tri_lie_identities(mode)
    A = alphabet_for(["x1", "x2", "x3"], mode)
    for f in ids:
        assert not encode(f, A, "lie"), str(f)


def test_associative_replication_vanishes_in_assoc_encoding():
    A = alphabet_for(["x1", "x2", "x3"], "tri")
    for f in replicated_identities([associativity()], "tri"):
        assert not encode(f, A, "assoc"), str(f)


def test_encoding_lands_in_V():
    rng = random.Random(3)
    for mode in ["di", "tri"]:
        A = alphabet_for(["x", "y"], mode)
        ops = [VDASH, DASHV] + ([PERP] if mode == "tri" else [])
        for _ in range(30):
            t = gen(rng.choice("xy"), mode)
            for _ in range(rng.randint(1, 3)):
                s = gen(rng.choice("xy"), mode)
                t = op(rng.choice(ops), t, s) if rng.random() < 0.5 else op(rng.choice(ops), s, t)
            e = encode(t, A, "lie")
            assert not e or in_V(e, mode)


def test_encoding_rules():
    A = alphabet_for(["x", "y"], "tri")
    x, y = gen("x"), gen("y")
    X, Y = (LiePoly.letter(A.letter(n), A) for n in ["x", "y"])
    Xd, Yd = (LiePoly.letter(A.letter(n + "."), A) for n in ["x", "y"])
    assert encode(vdash(x, y), A) == bracket(X, Yd)
    assert encode(dashv(x, y), A) == bracket(Xd, Y)
    assert encode(perp(x, y), A) == bracket(Xd, Yd)


def test_worked_membership():
    S = [dashv(gen("x", "di"), gen("y", "di")) + dashv(gen("y", "di"), gen("x", "di")) + gen("y", "di")]
    res = member(S, gen("y", "di"), ["x", "y"], "lie", "di")
    assert res.status is Membership.NON_MEMBER
    assert str(res.normal_form) == "y."
    res = member(S, dashv(gen("y", "di"), gen("y", "di")), ["x", "y"], "lie", "di")
    assert res.status is Membership.MEMBER
    words = free_basis(S, ["x", "y"], "lie", "di", 5)
    assert len(words) == 6


def test_inconclusive_when_not_certified():
    x, y = gen("x"), gen("y")
    S = [dashv(x, x), dashv(y, y) + vdash(x, y).scale(3)]
    target = perp(perp(x, y), y)
    res = member(S, target, ["x", "y"], "lie", "tri", degree_bound=4, step_bound=1)
    assert res.status is Membership.INCONCLUSIVE
    assert res.state.complete_up_to == 2 < res.degree == 3
    res = member(S, target, ["x", "y"], "lie", "tri", degree_bound=4)
    assert res.status is Membership.NON_MEMBER
    assert str(res.normal_form) == "[[x. y.] y.]"


# -- the dot-erasing map ------------------------------------------------------

A2 = alphabet_for(["x", "y"], "tri")
coef = st.integers(-3, 3)
lie = st.dictionaries(st.sampled_from(enumerate_ls_words(A2, 3)), coef, max_size=4).map(lambda d: LiePoly(d, A2))
words = st.lists(st.sampled_from(list(A2.letters())), min_size=1, max_size=3).map(tuple)
assoc = st.dictionaries(words, coef, max_size=4).map(lambda d: AssocPoly(d, A2))


@settings(max_examples=50, deadline=None)
@given(lie, lie)
def test_phi_is_an_averaging_operator_lie(f, g):
    target = bracket(phi(f), phi(g))
    assert phi(bracket(phi(f), g)) == target
    assert phi(bracket(f, phi(g))) == target
    assert phi(phi(f)) == phi(f)


@settings(max_examples=50, deadline=None)
@given(assoc, assoc)
def test_phi_is_an_averaging_operator_assoc(f, g):
    target = multiply(phi(f), phi(g))
    assert phi(multiply(phi(f), g)) == target
    assert phi(multiply(f, phi(g))) == target
    assert phi(phi(f)) == phi(f)


def test_single_emphasis_tri_replication_is_di_replication():
    for ident in (anticommutativity(), jacobi()):
        n = len(ident.names())
        for i in range(1, n + 1):
            tri = replicate(ident, {i}, "tri")
            assert "<>" not in str(tri)
            assert str(tri) == str(replicate(ident, {i}, "di"))
