import random
from fractions import Fraction

import pytest

from trigsb.lie_poly import LiePoly
from trigsb.oracle import (
    DegreeOverflow,
    Echelon,
    echelons_equal,
    encode_kernel_dimension,
    free_dimension,
    ideal_in_V,
    ideal_span,
    linearly_independent,
    member_oracle,
    multilinear_trees,
    rank,
    same_span,
    tri_ideal_span,
)
from trigsb.replication import TriPoly, dashv, perp
from trigsb.symbols import Alphabet

from corpus import random_system, witt


def test_echelon_basics():
    e = Echelon()
    assert e.add({(1,): 1, (0,): 2}) == {(1,): 1, (0,): 2}
    assert e.add({(1,): 3, (0,): 6}) is None
    e.add({(0,): Fraction(1, 2)})
    assert e.contains({(1,): 1})
    assert e.pivots() == [(0,), (1,)]
    assert rank([{(0,): 1}, {(0,): 2}, {(1,): 1}]) == 2


def test_span_helpers():
    A = Alphabet(["x", "y"], doubled=False)
    x, y = LiePoly.letter(1, A), LiePoly.letter(0, A)
    assert linearly_independent([x, y])
    assert not linearly_independent([x, y, x + y])
    assert same_span([x, y], [x + y, x - y])
    assert not same_span([x], [y])


@pytest.mark.parametrize("d", [1, 2, 3])
def test_free_leibniz_dimension_is_d_to_the_n(d):
    assert free_dimension("di", "lie", d, 5) == {n: d ** n for n in range(1, 6)}


@pytest.mark.parametrize("d", [1, 2])
def test_free_tri_lie_dimension_counts_dotted_ls_words(d):
    dims = free_dimension("tri", "lie", d, 5)
    assert dims == {n: witt(2 * d, n) - witt(d, n) for n in range(1, 6)}


def test_multilinear_tree_counts():
    # Catalan number times operation choices times leaf orderings
    assert len(multilinear_trees(2, "di")) == 2 * 2
    assert len(multilinear_trees(3, "tri")) == 2 * 9 * 6
    assert encode_kernel_dimension(2, "di") == 2
    assert encode_kernel_dimension(3, "tri") == 94


def test_worked_example_by_oracle():
    g = lambda n: TriPoly.gen(n, "di")  # noqa: E731
    S = [dashv(g("x"), g("y")) + dashv(g("y"), g("x")) + g("y")]
    assert not member_oracle(S, g("y"), "lie", "di", 4, gens=["x", "y"])
    assert member_oracle(S, dashv(g("y"), g("y")), "lie", "di", 4, gens=["x", "y"])


def test_degree_overflow():
    g = lambda n: TriPoly.gen(n, "tri")  # noqa: E731
    t = perp(perp(g("x"), g("y")), g("y"))
    with pytest.raises(DegreeOverflow):
        member_oracle([g("x")], t, "lie", "tri", 2, gens=["x", "y"])
    A = Alphabet(["x", "y"], doubled=False)
    span = ideal_span([LiePoly.letter(0, A)], "lie", 2, A)
    with pytest.raises(DegreeOverflow):
        LiePoly({(1, 1, 0): 1}, A) in span


def test_closure_under_letters_matches_tri_operation_closure():
    rng = random.Random(5)
    for i in range(6):
        mode = "di" if i % 2 == 0 else "tri"
        S = random_system(rng, mode)
        a = ideal_in_V(S, ["x", "y"], "lie", mode, 4)
        b = tri_ideal_span(S, ["x", "y"], "lie", mode, 4)
        assert echelons_equal(a, b)


def test_worked_example_elements_of_F():
    g = lambda n: TriPoly.gen(n, "di")  # noqa: E731
    S = [dashv(g("x"), g("y")) + dashv(g("y"), g("x")) + g("y")]
    A = Alphabet(["x", "y"])
    letter = lambda name: LiePoly.letter(A.letter(name), A)  # noqa: E731
    # the undotted y is phi(f) itself; the dotted letters stay outside the ideal
    assert member_oracle(S, letter("y"), "lie", "di", 4, gens=["x", "y"])
    assert not member_oracle(S, letter("x."), "lie", "di", 4, gens=["x", "y"])
    assert not member_oracle(S, letter("y."), "lie", "di", 4, gens=["x", "y"])
