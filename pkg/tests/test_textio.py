from fractions import Fraction

import pytest

from trigsb.symbols import Alphabet
from trigsb.textio import (
    ParseError,
    format_problem,
    format_table,
    parse_poly,
    parse_problem,
    parse_tri,
)

HEAD = "variety lie\nmode di\ngens x > y\nrels\n"


def test_worked_problem():
    pf = parse_problem(HEAD + "  (x -| y) + (y -| x) + y;\n")
    assert (pf.variety, pf.mode, pf.gens) == ("lie", "di", ["x", "y"])
    assert [str(r) for r in pf.rels] == ["(y -| x) + (x -| y) + y"]


def test_problem_round_trip():
    text = (
        "variety lie\nmode tri\ngens x > y\nrels\n"
        "  (x -| y) + 2 (y <> x) - 1/2 (x |- (x -| y));  # comment\n"
        "  [x <> y] + x;\n"
    )
    pf = parse_problem(text)
    assert [str(r) for r in pf.rels] == ["-1/2 (x |- (x -| y)) + 2 (y <> x) + (x -| y)", "(x <> y) + x"]
    again = parse_problem(format_problem(pf))
    assert again.rels == pf.rels and again.gens == pf.gens


@pytest.mark.parametrize(
    "body, where, message",
    [
        (" (x -| y)\n", "line 5, col 2", "missing its terminating ';'"),
        (" (x -| z);\n", "line 5, col 8", "unknown generator z"),
        (" (x <> y);\n", "line 5, col 5", "<> is not available in di mode"),
        (" x.;\n", "line 5, col 2", "dotted letter x."),
        (" (x $ y);\n", "line 5, col 5", "unexpected character"),
        (" (x -| y) + 3;\n", "line 5, col 11", "constant terms"),
        (" ((x -| y);\n", "line 5, col 11", "expected ')'"),
    ],
)
def test_parse_errors_carry_positions(body, where, message):
    with pytest.raises(ParseError) as exc:
        parse_problem(HEAD + body)
    assert str(exc.value).startswith(where)
    assert message in str(exc.value)


def test_header_errors():
    with pytest.raises(ParseError, match="variety must be lie or assoc"):
        parse_problem("variety foo\n")
    with pytest.raises(ParseError, match="duplicate generator"):
        parse_problem("gens x > x\n")


def test_table_block():
    text = (
        "variety lie\nmode tri\ntable\n  dim 2\n  basis e1 e2\n"
        "  perp(e1,e2) = e2\n  vdash(1,2) = 1/2*e2 - e1\n  dashv(e2,e1) = -e2\n"
    )
    pf = parse_problem(text)
    assert pf.gens == ["e1", "e2"]
    assert pf.table.entries[1] == ("vdash", "e1", "e2", [(Fraction(1, 2), "e2"), (Fraction(-1), "e1")])
    assert format_table(pf.table).splitlines()[3] == "vdash(e1,e2) = 1/2*e2 - e1"


@pytest.mark.parametrize(
    "block, message",
    [
        (" dim 2\n perp(e1,e3) = e1\n", "unknown basis element e3"),
        (" dim 2\n basis a\n", "basis has 1 labels but dim is 2"),
        (" dim 2\n foo(1,2) = e1\n", "unknown table operation"),
        (" dim 2\n perp(1,2) = 2 e1 +\n", "bad linear form"),
    ],
)
def test_table_errors(block, message):
    with pytest.raises(ParseError, match=message):
        parse_problem("variety lie\nmode tri\ntable\n" + block)


def test_parse_tri_and_poly():
    f = parse_tri("(x |- y) - (y -| x)", ["x", "y"], "di")
    assert str(f) == "-(y -| x) + (x |- y)"
    A = Alphabet(["x", "y"])
    with pytest.raises(ParseError):
        parse_poly("[x. z]", A, "lie")
