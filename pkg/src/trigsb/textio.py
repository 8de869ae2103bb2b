"""Parsing of polynomials, term polynomials, tables and problem files.

One tokenizer and one expression grammar serve every text input:

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ((op | juxtaposition) factor)*
    factor := NUM ['/' NUM] | NAME ['.'] | '(' expr ')' | '[' factor [op] factor ']'
    op     := '|-' | '-|' | '<>' | '*'

A scalar next to anything scales it.  What products mean depends on the
target: in ``F`` a product or plain bracket is the Lie bracket (Lie flavor)
or concatenation resp. commutator (associative flavor); in di/tri terms only
the three replicated operations are allowed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .assoc_poly import AssocPoly, commutator, multiply
from .lie_poly import LiePoly, bracket
from .replication import DASHV, PERP, PROD, VDASH, ModeError, TriPoly, op
from .symbols import Alphabet, InvalidAlphabet


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.msg, self.line, self.col = msg, line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + msg)


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*\.?)
  | (?P<op>\|-|-\||<>)
  | (?P<punct>[-+*/\[\]();])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind if kind != "punct" else s, s, line, col))
            col += len(s)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


# -- generic expression trees ---------------------------------------------------

@dataclass
class Node:
    kind: str  # num, gen, add, neg, op, bracket
    args: tuple
    tok: Token


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind) -> Token:
        t = self.next()
        if t.kind != kind:
            got = t.text or "end of input"
            raise ParseError(f"expected {kind!r}, got {got!r}", t.line, t.col)
        return t

    def expr(self, stop=("eof",)) -> Node:
        t = self.peek()
        sign = None
        if t.kind in "+-":
            sign = self.next()
        node = self.term()
        if sign is not None and sign.kind == "-":
            node = Node("neg", (node,), sign)
        while self.peek().kind in ("+", "-"):
            s = self.next()
            rhs = self.term()
            if s.kind == "-":
                rhs = Node("neg", (rhs,), s)
            node = Node("add", (node, rhs), s)
        return node

    def _starts_factor(self, t: Token) -> bool:
        return t.kind in ("num", "name", "(", "[")

    def term(self) -> Node:
        node = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" or t.kind == "*":
                self.next()
                node = Node("op", (t.text, node, self.factor()), t)
            elif self._starts_factor(t):
                node = Node("op", ("", node, self.factor()), t)
            else:
                return node

    def factor(self) -> Node:
        t = self.next()
        if t.kind == "num":
            val = Fraction(int(t.text))
            if self.peek().kind == "/":
                self.next()
                d = self.expect("num")
                if int(d.text) == 0:
                    raise ParseError("division by zero", d.line, d.col)
                val = Fraction(int(t.text), int(d.text))
            return Node("num", (val,), t)
        if t.kind == "name":
            return Node("gen", (t.text,), t)
        if t.kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "[":
            a = self.bracket_operand()
            o = self.peek()
            name = ""
            if o.kind in ("op", "*"):
                self.next()
                name = o.text
            b = self.bracket_operand()
            self.expect("]")
            return Node("bracket", (name, a, b), t)
        got = t.text or "end of input"
        raise ParseError(f"unexpected {got!r}", t.line, t.col)

    def bracket_operand(self) -> Node:
        t = self.peek()
        if t.kind == "-":
            self.next()
            return Node("neg", (self.factor(),), t)
        return self.factor()


def parse_tree(text: str, line: int = 1, col: int = 1) -> Node:
    p = _Parser(tokenize(text, line, col))
    node = p.expr()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
    return node


# -- evaluation ------------------------------------------------------------------

def _fail(node: Node, msg: str):
    raise ParseError(msg, node.tok.line, node.tok.col)


def _scalar_mix(a, b, node):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    if isinstance(a, Fraction):
        return b.scale(a)
    if isinstance(b, Fraction):
        return a.scale(b)
    return None


def _add(a, b, node):
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        _fail(node, "constant terms are not allowed")
    return a + b


def eval_poly(node: Node, alphabet: Alphabet, flavor: str, allow_dots: bool = True):
    """Evaluate an expression tree as an element of ``F`` (Lie or associative)."""
    cls = LiePoly if flavor == "lie" else AssocPoly

    def ev(n: Node):
        k = n.kind
        if k == "num":
            return n.args[0]
        if k == "gen":
            name = n.args[0]
            if name.endswith(".") and not allow_dots:
                _fail(n, f"dotted letter {name} is not allowed here")
            try:
                return cls.letter(alphabet.letter(name), alphabet)
            except KeyError:
                _fail(n, f"unknown generator {name}")
        if k == "neg":
            v = ev(n.args[0])
            return -v
        if k == "add":
            return _add(ev(n.args[0]), ev(n.args[1]), n)
        name, a, b = n.args
        x, y = ev(a), ev(b)
        mixed = _scalar_mix(x, y, n)
        if mixed is not None:
            if k == "bracket":
                _fail(n, "bracket of a scalar")
            return mixed
        if name in (VDASH, DASHV, PERP):
            _fail(n, f"operation {name} needs di or tri mode")
        if flavor == "lie":
            return bracket(x, y)
        if k == "bracket":
            return commutator(x, y)
        return multiply(x, y)

    v = ev(node)
    if isinstance(v, Fraction):
        if v == 0:
            return cls({}, alphabet)
        _fail(node, "constant terms are not allowed")
    return v


def eval_tri(node: Node, gens, mode: str):
    """Evaluate an expression tree as a term polynomial in the given mode."""
    names = set(gens)

    def ev(n: Node):
        k = n.kind
        if k == "num":
            return n.args[0]
        if k == "gen":
            name = n.args[0]
            if name.endswith("."):
                _fail(n, f"dotted letter {name} is not allowed in relations")
            if name not in names:
                _fail(n, f"unknown generator {name}")
            return TriPoly.gen(name, mode)
        if k == "neg":
            return -ev(n.args[0])
        if k == "add":
            return _add(ev(n.args[0]), ev(n.args[1]), n)
        name, a, b = n.args
        x, y = ev(a), ev(b)
        mixed = _scalar_mix(x, y, n)
        if mixed is not None:
            if k == "bracket":
                _fail(n, "bracket of a scalar")
            return mixed
        if mode == "plain":
            if name not in ("", PROD):
                _fail(n, f"operation {name} needs di or tri mode")
            name = PROD
        else:
            if name in ("", PROD):
                _fail(n, f"a product in {mode} mode needs one of |- -| " + ("<>" if mode == "tri" else ""))
            if name == PERP and mode == "di":
                _fail(n, "operation <> is not available in di mode")
        try:
            return op(name, x, y)
        except ModeError as e:
            _fail(n, str(e))

    v = ev(node)
    if isinstance(v, Fraction):
        if v == 0:
            return TriPoly({}, mode)
        _fail(node, "constant terms are not allowed")
    return v


def parse_poly(text: str, alphabet: Alphabet, flavor: str = "lie", allow_dots: bool = True):
    return eval_poly(parse_tree(text), alphabet, flavor, allow_dots)


def parse_tri(text: str, gens, mode: str = "tri") -> TriPoly:
    return eval_tri(parse_tree(text), gens, mode)


# -- problem files ----------------------------------------------------------------

@dataclass
class TableSpec:
    dim: int
    labels: list
    entries: list = field(default_factory=list)  # (op, i, j, [(coef, label)])


@dataclass
class ProblemFile:
    variety: str = "lie"
    mode: str = "di"
    gens: list = field(default_factory=list)
    rels: list = field(default_factory=list)
    rel_texts: list = field(default_factory=list)
    table: TableSpec | None = None

    def alphabet(self) -> Alphabet:
        return Alphabet(self.gens, doubled=self.mode != "plain")

    def parse_target(self, text: str) -> TriPoly:
        return parse_tri(text, self.gens, self.mode)


_TABLE_OPS = ("bracket", "vdash", "dashv", "perp")
_ENTRY = re.compile(r"\s*([A-Za-z]+)\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*=\s*(.*)$")
_COEF = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)?\s*$")


def parse_linear_form(text: str, labels, line: int, col: int) -> list:
    """``c1*b1 + c2*b2 - ...`` into ``[(Fraction, label), ...]``; ``0`` is empty."""
    s = text.strip()
    if s == "0":
        return []
    pieces = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
    if not pieces or "".join(pieces) != s.replace(" ", ""):
        raise ParseError(f"bad linear form {text!r}", line, col)
    out = []
    for piece in pieces:
        m = _COEF.match(piece)
        if not m or not m.group(3):
            raise ParseError(f"bad term {piece!r} in linear form", line, col)
        sign, c, label = m.groups()
        coef = Fraction(c) if c else Fraction(1)
        if sign == "-":
            coef = -coef
        if label not in labels:
            raise ParseError(f"unknown basis element {label}", line, col)
        out.append((coef, label))
    return out


def _table_index(tok: str, labels, line, col) -> str:
    if tok in labels:
        return tok
    if tok.isdigit() and 1 <= int(tok) <= len(labels):
        return labels[int(tok) - 1]
    raise ParseError(f"unknown basis element {tok}", line, col)


def parse_table_lines(lines: list[tuple[int, str]]) -> TableSpec:
    dim = None
    labels = None
    entries = []
    for ln, raw in lines:
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        head = text.split(None, 1)[0]
        if head == "dim":
            parts = text.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'dim n'", ln, 1)
            dim = int(parts[1])
        elif head == "basis":
            labels = text.split()[1:]
            try:
                Alphabet(labels, doubled=False) if labels else None
            except InvalidAlphabet as e:
                raise ParseError(str(e), ln, 1) from None
        else:
            m = _ENTRY.match(text)
            if not m:
                raise ParseError(f"cannot read table line {text!r}", ln, 1)
            name, i, j, rhs = m.groups()
            if name not in _TABLE_OPS:
                raise ParseError(f"unknown table operation {name!r}", ln, 1)
            if dim is None:
                raise ParseError("'dim' must come before products", ln, 1)
            if labels is None:
                labels = [f"e{k + 1}" for k in range(dim)]
            a = _table_index(i, labels, ln, 1)
            b = _table_index(j, labels, ln, 1)
            entries.append((name, a, b, parse_linear_form(rhs, labels, ln, raw.find("=") + 2)))
    if dim is None:
        raise ParseError("table without 'dim'", lines[0][0] if lines else None, 1)
    if labels is None:
        labels = [f"e{k + 1}" for k in range(dim)]
    if len(labels) != dim:
        raise ParseError(f"basis has {len(labels)} labels but dim is {dim}", lines[0][0] if lines else None, 1)
    return TableSpec(dim, labels, entries)


def format_linear_form(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (c, label) in enumerate(terms):
        a = abs(c)
        body = label if a == 1 else f"{a}*{label}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(parts)


def format_table(t: TableSpec) -> str:
    lines = [f"dim {t.dim}", "basis " + " ".join(t.labels)]
    for name, a, b, terms in t.entries:
        lines.append(f"{name}({a},{b}) = {format_linear_form(terms)}")
    return "\n".join(lines)


def parse_problem(text: str) -> ProblemFile:
    pf = ProblemFile()
    lines = text.split("\n")
    seen_gens = False
    i = 0
    rel_src: list[tuple[int, str]] = []
    table_src: list[tuple[int, str]] | None = None
    while i < len(lines):
        raw = lines[i]
        ln = i + 1
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        i += 1
        if not stripped:
            continue
        key, _, rest = stripped.partition(" ")
        rest = rest.strip()
        col = raw.find(key) + 1
        if key == "variety":
            if rest not in ("lie", "assoc"):
                raise ParseError(f"variety must be lie or assoc, got {rest!r}", ln, col)
            pf.variety = rest
        elif key == "mode":
            if rest not in ("plain", "di", "tri"):
                raise ParseError(f"mode must be plain, di or tri, got {rest!r}", ln, col)
            pf.mode = rest
        elif key == "gens":
            names = [s.strip() for s in rest.split(">")]
            for n in names:
                if n.endswith("."):
                    raise ParseError("dotted generators are derived and cannot be declared", ln, col)
            try:
                Alphabet(names, doubled=False)
            except InvalidAlphabet as e:
                raise ParseError(str(e), ln, col) from None
            pf.gens = names
            seen_gens = True
        elif key == "rels":
            start_col = raw.find("rels") + 5
            rel_src.append((ln, " " * (start_col - 1) + raw[start_col - 1:]))
            while i < len(lines) and lines[i].split("#", 1)[0].strip().split(" ", 1)[0] != "table":
                rel_src.append((i + 1, lines[i]))
                i += 1
        elif key == "table":
            table_src = [(k + 1, lines[k]) for k in range(i, len(lines))]
            i = len(lines)
        else:
            raise ParseError(f"unknown directive {key!r}", ln, col)
    if table_src is not None:
        pf.table = parse_table_lines(table_src)
        if not seen_gens:
            pf.gens = list(pf.table.labels)
            seen_gens = True
    if not seen_gens:
        raise ParseError("missing 'gens' line", None, None)
    _parse_rels(pf, rel_src)
    return pf


def _parse_rels(pf: ProblemFile, src: list[tuple[int, str]]):
    if not src:
        return
    first = src[0][0]
    text = "\n".join(s for _, s in src)
    # keep line numbers: lines in src are consecutive
    toks = tokenize(text, first, 1)
    start = 0
    for k, t in enumerate(toks):
        if t.kind == ";":
            chunk = toks[start:k] + [Token("eof", "", t.line, t.col)]
            if len(chunk) == 1:
                raise ParseError("empty relation", t.line, t.col)
            p = _Parser(chunk)
            node = p.expr()
            if p.peek().kind != "eof":
                bad = p.peek()
                raise ParseError(f"unexpected {bad.text!r}", bad.line, bad.col)
            rel = eval_tri(node, pf.gens, pf.mode)
            if not rel:
                raise ParseError("relation is zero", chunk[0].line, chunk[0].col)
            pf.rels.append(rel)
            start = k + 1
    if toks[start].kind != "eof":
        t = toks[start]
        raise ParseError("relation is missing its terminating ';'", t.line, t.col)


def format_problem(pf: ProblemFile) -> str:
    lines = [f"variety {pf.variety}", f"mode {pf.mode}", "gens " + " > ".join(pf.gens), "rels"]
    for r in pf.rels:
        lines.append(f"  {r};")
    if pf.table is not None:
        lines.append("table")
        lines.append(format_table(pf.table))
    return "\n".join(lines) + "\n"
