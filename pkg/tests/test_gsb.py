import random

import pytest

from trigsb.assoc_poly import AssocPoly
from trigsb.gsb import (
    BasisNotCertified,
    CacheError,
    GsbState,
    check_compositions,
    complete,
    compositions,
    enumerate_reduced,
    normal_form,
)
from trigsb.lie_poly import LiePoly
from trigsb.replication import build_state
from trigsb.symbols import Alphabet
from trigsb.words import contains
from trigsb.textio import parse_poly, parse_tri

from corpus import random_system


def test_worked_leibniz_example():
    S = [parse_tri("(x -| y) + (y -| x) + y", ["x", "y"], "di")]
    st = build_state(S, ["x", "y"], "lie", "di", 5)
    assert [str(r) for r in st.relations] == ["y", "[y. x] + y."]
    assert st.complete_up_to == 5 and st.is_complete
    words = enumerate_reduced(st, 5, lambda w: st.alphabet.dotted_degree(w) == 1)
    assert len(words) == 6


def test_commutative_quotient_of_free_associative_algebra():
    A = Alphabet(["x", "y"], doubled=False)
    x, y = A.letter("x"), A.letter("y")
    st = complete([AssocPoly({(x, y): 1, (y, x): -1}, A)], flavor="assoc", degree_bound=5, alphabet=A)
    assert [str(r) for r in st.relations] == ["x y - y x"]
    counts = [sum(1 for w in enumerate_reduced(st, 5) if len(w) == n) for n in range(1, 6)]
    assert counts == [n + 1 for n in range(1, 6)]


def test_free_associative_counts_without_relations():
    A = Alphabet(["a", "b", "c"], doubled=False)
    st = complete([], flavor="assoc", degree_bound=3, alphabet=A)
    words = enumerate_reduced(st, 3)
    assert len(words) == 3 + 9 + 27


def test_overlap_composition_completion():
    # x x - y: overlap x x x produces x y - y x
    A = Alphabet(["x", "y"], doubled=False)
    x, y = A.letter("x"), A.letter("y")
    st = complete([AssocPoly({(x, x): 1, (y,): -1}, A)], flavor="assoc", degree_bound=6, alphabet=A)
    assert {str(r) for r in st.relations} == {"x x - y", "x y - y x"}
    assert check_compositions(st.relations, 6) == []


def test_compositions_cover_both_overlap_orientations():
    A = Alphabet(["x", "y"], doubled=False)
    x, y = A.letter("x"), A.letter("y")
    f = AssocPoly({(x, y): 1, (y,): 1}, A)
    g = AssocPoly({(y, x): 1, (x,): 1}, A)
    witnesses = {w for w, _ in compositions(f, g, "assoc")}
    assert (x, y, x) in witnesses and (y, x, y) in witnesses


def test_normal_form_is_independent_of_reduction_order():
    rng = random.Random(7)
    for mode in ["di", "tri"] * 5:
        S = random_system(rng, mode)
        st = build_state(S, ["x", "y"], "lie", mode, 4)
        A = st.alphabet
        for _ in range(5):
            f = LiePoly({w: rng.randint(-2, 2) for w in [(rng.choice(list(A.letters())),)]}, A)
            for t in rng.sample(sorted(_ls(A, 3)), 4):
                f = f + LiePoly({t: rng.randint(-2, 2)}, A)
            a = normal_form(f, st)
            b = normal_form(f, st, order="random", rng=random.Random(rng.random()))
            assert a == b


def _ls(A, n):
    from trigsb.lyndon import enumerate_ls_words

    return enumerate_ls_words(A, n)


def test_completed_bases_have_trivial_compositions():
    rng = random.Random(11)
    for mode in ["di", "tri"] * 4:
        st = build_state(random_system(rng, mode), ["x", "y"], "lie", mode, 4)
        if st.max_dotted is None:
            assert check_compositions(st.relations, 4) == []
        lead = st.leading_words()
        for i, r in enumerate(st.relations):
            assert r.leading()[1] == 1
            # no leading word contains another one
            assert not any(contains(lead[i], v) for j, v in enumerate(lead) if j != i)


def test_basis_requires_certification():
    A = Alphabet(["x", "y"], doubled=False)
    st = complete([], flavor="assoc", degree_bound=2, alphabet=A)
    with pytest.raises(BasisNotCertified):
        enumerate_reduced(st, 3)


def test_step_bound_lowers_certified_degree():
    A = Alphabet(["x", "y"], doubled=False)
    x, y = A.letter("x"), A.letter("y")
    f = AssocPoly({(x, x, y): 1, (y, x): -1}, A)
    g = AssocPoly({(y, y, x): 1, (x, y): -1}, A)
    st = complete([f, g], flavor="assoc", degree_bound=8, step_bound=1, alphabet=A)
    assert st.complete_up_to < 8 and not st.is_complete


def test_cache_round_trip_and_checksum():
    S = [parse_tri("(x -| y) + (y -| x) + y", ["x", "y"], "di")]
    st = build_state(S, ["x", "y"], "lie", "di", 4)
    st.source = "abc"
    text = st.to_text()
    back = GsbState.from_text(text)
    assert back.relations == st.relations
    assert (back.alphabet, back.flavor, back.max_dotted, back.source) == (st.alphabet, "lie", 1, "abc")
    assert back.to_text() == text
    with pytest.raises(CacheError):
        GsbState.from_text(text.replace("[y. x] + y.", "[y. x] - y."))
    with pytest.raises(CacheError):
        GsbState.from_text("garbage\n")


def test_parse_poly_lie_and_assoc():
    A = Alphabet(["x", "y"])
    assert str(parse_poly("[y. x] + y.", A, "lie")) == "[y. x] + y."
    assert str(parse_poly("x. y - y x.", A, "assoc")) == "x. y - y x."
