import pytest

from trigsb.symbols import Alphabet, Generator, InvalidAlphabet, double
from trigsb.words import (
    compare_deglex,
    contains,
    deglex_key,
    find_occurrences,
    format_word,
    occurrence_positions,
    overlap_suffix_prefix,
    parse_word,
)


def test_letter_order_dotted_above_undotted():
    A = Alphabet(["x", "y", "z"])
    x, y, z = (A.letter(n) for n in "xyz")
    xd, yd, zd = (A.letter(n + ".") for n in "xyz")
    assert x > y > z
    assert xd > yd > zd > x
    assert A.erase_dot(yd) == y and A.add_dot(y) == yd
    assert A.dotted_degree([xd, y, zd]) == 2
    assert str(A) == "x. > y. > z. > x > y > z"


def test_plain_alphabet_has_no_dots():
    A = Alphabet(["a", "b"], doubled=False)
    assert list(A.letters()) == [0, 1]
    assert A.dotted() == []
    with pytest.raises(InvalidAlphabet):
        A.add_dot(0)
    with pytest.raises(KeyError):
        A.letter("a.")


@pytest.mark.parametrize("base", [[], ["x", "x"], ["1x"], ["x-y"]])
def test_invalid_alphabets(base):
    with pytest.raises(InvalidAlphabet):
        Alphabet(base)


def test_double_and_equality():
    assert double(["x", "y"]) == Alphabet(["x", "y"])
    assert Alphabet(["x", "y"]) != Alphabet(["y", "x"])
    assert str(Generator("x", True)) == "x."


def test_deglex():
    assert deglex_key((0, 0, 0)) > deglex_key((5, 5))
    assert compare_deglex((1, 0), (0, 1)) == 1
    assert compare_deglex((0, 1), (0, 1)) == 0
    assert compare_deglex((0,), (1,)) == -1


def test_occurrences_and_overlaps():
    w = (1, 0, 1, 0, 1)
    assert occurrence_positions(w, (1, 0, 1)) == [0, 2]
    assert find_occurrences(w, (0, 1)) == [((1,), (0, 1)), ((1, 0, 1), ())]
    assert contains(w, (0, 1, 0)) and not contains(w, (0, 0))
    # proper overlaps: suffix of v1 equals prefix of v2
    ov = overlap_suffix_prefix((2, 1, 0), (1, 0, 3))
    assert ov == [((2,), (1, 0), (3,))]


def test_word_text_round_trip():
    A = Alphabet(["x", "y"])
    w = parse_word("x. y y x.", A)
    assert format_word(w, A) == "x. y y x."
