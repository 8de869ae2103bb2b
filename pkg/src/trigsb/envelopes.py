"""Finite-dimensional multiplication tables and presentations of their envelopes.

Two envelopes are covered:

* the Lie tri-algebra envelope of a Lie algebra ``L``, presented in
  ``Lie<X u X.>`` by ``[x. y.] - mu.(x,y)`` and ``[x y] - mu(x,y)``;
* the associative tri-algebra envelope of a Lie tri-algebra ``L``, presented
  in ``As<X u X.>`` after splitting off ``L0``, the span of all
  ``[a |- b] - [a -| b]`` and ``[a |- b] - [a <> b]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb
from typing import Callable, Mapping, Sequence

from .assoc_poly import AssocPoly
from .gsb import GsbState, complete, compositions, normal_form
from .lie_poly import LiePoly, bracket
from .replication import (
    DASHV,
    PERP,
    VDASH,
    TriPoly,
    associativity,
    commutativity,
    jacobi,
    anticommutativity,
    replicated_identities,
    tri_lie_identities,
    tree_leaves,
    zero_identities,
)
from .symbols import Alphabet

OPS = ("bracket", "vdash", "dashv", "perp")
_TREE_OP = {VDASH: "vdash", DASHV: "dashv", PERP: "perp", "*": "bracket"}


class InvalidTable(ValueError):
    pass


def _zero(n):
    return [Fraction(0)] * n


class MultTable:
    """Bilinear operations on a space with a labelled basis.

    ``ops`` maps an operation name to a dict ``(i, j) -> coefficient list``
    over basis indices; missing products are zero.  When ``vdash`` is given
    but ``dashv`` is not, ``dashv(a, b)`` is taken to be ``-vdash(b, a)``.
    """

    def __init__(self, labels: Sequence[str], ops: Mapping[str, Mapping] | None = None):
        self.labels = list(labels)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise InvalidTable("duplicate basis labels")
        self.ops: dict[str, list[list[list[Fraction]]]] = {}
        for name, entries in (ops or {}).items():
            if name not in OPS:
                raise InvalidTable(f"unknown operation {name!r}")
            grid = [[_zero(self.dim) for _ in range(self.dim)] for _ in range(self.dim)]
            for (i, j), vec in entries.items():
                vec = [Fraction(x) for x in vec]
                if len(vec) != self.dim:
                    raise InvalidTable(f"{name}({i},{j}) has {len(vec)} coordinates, expected {self.dim}")
                grid[i][j] = vec
            self.ops[name] = grid
        if "vdash" in self.ops and "dashv" not in self.ops:
            n = self.dim
            self.ops["dashv"] = [[[-x for x in self.ops["vdash"][j][i]] for j in range(n)] for i in range(n)]

    # -- construction ---------------------------------------------------
    @classmethod
    def from_forms(cls, labels, forms: Mapping[str, Mapping[tuple, Mapping[str, object]]]):
        """Build from ``{op: {(label_a, label_b): {label: coef}}}``."""
        idx = {l: i for i, l in enumerate(labels)}
        ops = {}
        for name, entries in forms.items():
            d = {}
            for (a, b), form in entries.items():
                vec = _zero(len(labels))
                for l, c in form.items():
                    vec[idx[l]] += Fraction(c)
                d[(idx[a], idx[b])] = vec
            ops[name] = d
        return cls(labels, ops)

    @classmethod
    def lie(cls, labels, brackets: Mapping[tuple, Mapping[str, object]]):
        """Lie table from the products ``[a b]`` for some pairs; ``[b a]`` is filled in."""
        full = {}
        for (a, b), form in brackets.items():
            full[(a, b)] = dict(form)
            full[(b, a)] = {l: -Fraction(c) for l, c in form.items()}
        return cls.from_forms(labels, {"bracket": full})

    @classmethod
    def from_spec(cls, spec) -> "MultTable":
        idx = {l: i for i, l in enumerate(spec.labels)}
        ops: dict = {}
        for name, a, b, terms in spec.entries:
            vec = _zero(spec.dim)
            for c, l in terms:
                vec[idx[l]] += c
            ops.setdefault(name, {})
            key = (idx[a], idx[b])
            if key in ops[name]:
                raise InvalidTable(f"{name}({a},{b}) given twice")
            ops[name][key] = vec
        return cls(spec.labels, ops)

    def to_spec(self):
        from .textio import TableSpec

        entries = []
        for name in OPS:
            if name not in self.ops:
                continue
            for i in range(self.dim):
                for j in range(self.dim):
                    vec = self.ops[name][i][j]
                    if any(vec):
                        terms = [(c, self.labels[k]) for k, c in enumerate(vec) if c]
                        entries.append((name, self.labels[i], self.labels[j], terms))
        return TableSpec(self.dim, list(self.labels), entries)

    def to_text(self) -> str:
        from .textio import format_table

        return format_table(self.to_spec()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MultTable":
        from .textio import parse_table_lines

        return cls.from_spec(parse_table_lines(list(enumerate(text.split("\n"), start=1))))

    def copy(self) -> "MultTable":
        t = MultTable(self.labels)
        t.ops = {k: [[list(v) for v in row] for row in g] for k, g in self.ops.items()}
        return t

    def filled(self, names: Sequence[str] = ("vdash", "dashv", "perp")) -> "MultTable":
        """Copy in which each listed operation is explicit (zero if absent)."""
        t = self.copy()
        for name in names:
            if name not in t.ops:
                t.ops[name] = [[_zero(t.dim) for _ in range(t.dim)] for _ in range(t.dim)]
        return t

    # -- arithmetic -------------------------------------------------------
    def basis_vector(self, i: int) -> list[Fraction]:
        v = _zero(self.dim)
        v[i] = Fraction(1)
        return v

    def product(self, name: str, a: Sequence, b: Sequence) -> list[Fraction]:
        if len(a) != self.dim or len(b) != self.dim:
            raise ValueError(f"dimension mismatch: {len(a)}, {len(b)} vs {self.dim}")
        grid = self.ops.get(name)
        out = _zero(self.dim)
        if grid is None:
            return out
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(grid[i][j]):
                    if c:
                        out[k] += xy * c
        return out

    def __eq__(self, other):
        return isinstance(other, MultTable) and self.labels == other.labels and self.to_spec() == other.to_spec()

    def __repr__(self):
        return f"MultTable(dim={self.dim}, ops={sorted(self.ops)})"


def averaging_table(L: MultTable, pi: Sequence[Sequence]) -> MultTable:
    """Lie tri-algebra ``a |- b = [pi a, b]``, ``a -| b = [a, pi b]``, ``a <> b = [a, b]``.

    ``pi`` is a matrix whose column ``j`` is the image of basis vector ``j``;
    it must be an averaging operator on ``L`` (an idempotent endomorphism
    works).
    """
    n = L.dim
    img = [[Fraction(pi[i][j]) for i in range(n)] for j in range(n)]
    ops = {"vdash": {}, "dashv": {}, "perp": {}}
    for i in range(n):
        for j in range(n):
            ei, ej = L.basis_vector(i), L.basis_vector(j)
            ops["vdash"][(i, j)] = L.product("bracket", img[i], ej)
            ops["dashv"][(i, j)] = L.product("bracket", ei, img[j])
            ops["perp"][(i, j)] = L.product("bracket", ei, ej)
    return MultTable(L.labels, ops)


def corrupt_entry(T: MultTable, name: str, i: int, j: int, k: int, delta=1) -> MultTable:
    """Copy of a Lie tri-algebra table with one independent entry shifted by ``delta``.

    ``dashv`` entries move together with the matching ``vdash`` entry so that
    ``a |- b = -(b -| a)`` still holds; ``perp`` entries (``i < j``) move
    together with their skew partner.
    """
    if name not in ("dashv", "perp"):
        raise ValueError("only dashv and perp entries are independent")
    if name == "perp" and i >= j:
        raise ValueError("perp corruptions need i < j")
    C = T.filled()
    d = Fraction(delta)
    if name == "dashv":
        C.ops["dashv"][i][j][k] += d
        C.ops["vdash"][j][i][k] -= d
    else:
        C.ops["perp"][i][j][k] += d
        C.ops["perp"][j][i][k] -= d
    return C


# -- validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    message: str = "ok"
    identity: str | None = None
    arguments: tuple | None = None

    def __bool__(self):
        return self.ok


def evaluate_term(T: MultTable, f: TriPoly, assignment: Mapping[str, Sequence]) -> list[Fraction]:
    def ev(t):
        if isinstance(t, str):
            return list(assignment[t])
        return T.product(_TREE_OP[t[0]], ev(t[1]), ev(t[2]))

    out = _zero(T.dim)
    for t, c in f.items():
        v = ev(t)
        out = [x + c * y for x, y in zip(out, v)]
    return out


def identities_for(kind: str) -> list[TriPoly]:
    if kind == "lie":
        return [anticommutativity(), jacobi()]
    if kind == "tri_lie":
        return tri_lie_identities("tri")
    if kind == "di_lie":
        return tri_lie_identities("di")
    if kind == "tri_com":
        return replicated_identities([commutativity(), associativity()], "tri") + zero_identities("tri")
    if kind == "tri_as":
        return replicated_identities([associativity()], "tri") + zero_identities("tri")
    raise ValueError(f"unknown table kind {kind!r}")


def _check_identities(T: MultTable, ids: Sequence[TriPoly]) -> ValidationReport:
    basis = [T.basis_vector(i) for i in range(T.dim)]
    for f in ids:
        names = sorted(set(x for t in f for x in tree_leaves(t)))
        for args in product(range(T.dim), repeat=len(names)):
            v = evaluate_term(T, f, {n: basis[a] for n, a in zip(names, args)})
            if any(v):
                labels = tuple(T.labels[a] for a in args)
                where = ", ".join(f"{n}={l}" for n, l in zip(names, labels))
                return ValidationReport(False, f"{f} fails at {where}", str(f), labels)
    return ValidationReport(True)


def validate_table(T: MultTable, kind: str = "lie") -> ValidationReport:
    """Check every defining identity of ``kind`` on all tuples of basis vectors.

    Identities are multilinear, so this decides validity.  Kinds: ``lie``,
    ``tri_lie``, ``di_lie``, ``tri_com``, ``tri_as``.
    """
    needed = {"lie": ["bracket"], "tri_lie": ["vdash", "perp"], "di_lie": ["vdash"]}.get(kind, [])
    for name in needed:
        if name not in T.ops and T.dim:
            # absent operations are zero tables
            T = T.copy()
            T.ops[name] = [[_zero(T.dim) for _ in range(T.dim)] for _ in range(T.dim)]
    return _check_identities(T, identities_for(kind))


# -- presentations ------------------------------------------------------------

@dataclass
class EnvelopePresentation:
    kind: str  # "perp" or "minus"
    alphabet: Alphabet
    relations: list
    table: MultTable
    x0: list = field(default_factory=list)  # labels of the L0 basis
    x1: list = field(default_factory=list)
    l0_basis: list = field(default_factory=list)  # L0 basis vectors in the original coordinates
    verified_up_to: int = 0

    def relation_lines(self) -> list[str]:
        return [str(r) for r in self.relations]


def _form(vec, letters, cls, alphabet):
    return cls({(letters[k],): c for k, c in enumerate(vec) if c}, alphabet)


def present_perp(L: MultTable, validate: bool = True) -> EnvelopePresentation:
    """Relations ``[x. y.] - mu.(x,y)`` and ``[x y] - mu(x,y)`` for ``x > y``.

    Basis labels are the generators, the first label being the greatest.
    """
    if validate:
        rep = validate_table(L, "lie")
        if not rep:
            raise InvalidTable(rep.message)
    A = Alphabet(L.labels, doubled=True)
    und = [A.letter(l, dotted=False) for l in L.labels]
    dot = [A.letter(l, dotted=True) for l in L.labels]
    rels = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            mu = L.product("bracket", L.basis_vector(i), L.basis_vector(j))
            for letters in (dot, und):
                x, y = LiePoly.letter(letters[i], A), LiePoly.letter(letters[j], A)
                rels.append(bracket(x, y) - _form(mu, letters, LiePoly, A))
    return EnvelopePresentation("perp", A, rels, L, x1=list(L.labels))


def perp_state(P: EnvelopePresentation, degree_bound: int) -> GsbState:
    return complete(P.relations, flavor="lie", degree_bound=degree_bound, alphabet=P.alphabet)


def verify_perp_gsb(P: EnvelopePresentation, degree_bound: int = 4) -> bool:
    """Whether completion up to ``degree_bound`` leaves the relation set unchanged."""
    S = perp_state(P, degree_bound)
    ok = S.is_complete and sorted(map(str, S.relations)) == sorted(str(r.monic()) for r in P.relations)
    if ok:
        P.verified_up_to = max(P.verified_up_to, degree_bound)
    return ok


def _rref(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form with pivots in the earliest possible columns."""
    from sympy import Matrix, Rational

    if not rows:
        return []
    M = Matrix([[Rational(x.numerator, x.denominator) for x in r] for r in rows])
    R, piv = M.rref()
    return [[Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(M.cols)] for i in range(len(piv))]


def _inverse(cols: list[list[Fraction]]) -> list[list[Fraction]]:
    from sympy import Matrix, Rational

    n = len(cols)
    M = Matrix(n, n, lambda i, j: Rational(cols[j][i].numerator, cols[j][i].denominator))
    Inv = M.inv()
    return [[Fraction(int(Inv[i, j].p), int(Inv[i, j].q)) for j in range(n)] for i in range(n)]


def l0_vectors(T: MultTable) -> list[list[Fraction]]:
    out = []
    for i in range(T.dim):
        for j in range(T.dim):
            a, b = T.basis_vector(i), T.basis_vector(j)
            vd = T.product("vdash", a, b)
            out.append([x - y for x, y in zip(vd, T.product("dashv", a, b))])
            out.append([x - y for x, y in zip(vd, T.product("perp", a, b))])
    return [v for v in out if any(v)]


def adapted_table(T: MultTable):
    """Split the basis as ``X1 u X0`` with ``X0`` a basis of ``L0``.

    Returns ``(table in the new basis, x1 labels, x0 labels, L0 rows)``.  The
    rows of ``X0`` come from row reduction with the earliest pivots; ``X1``
    keeps the non-pivot basis vectors.  New labels list ``X1`` first.
    """
    rows = _rref(l0_vectors(T))
    pivots = [next(k for k, c in enumerate(r) if c) for r in rows]
    x1_idx = [k for k in range(T.dim) if k not in pivots]
    x1 = [T.labels[k] for k in x1_idx]
    x0 = [f"{T.labels[p]}_0" for p in pivots]
    clash = set(x0) & set(T.labels)
    if clash:
        raise InvalidTable(f"label clash in the adapted basis: {sorted(clash)}")
    cols = [T.basis_vector(k) for k in x1_idx] + rows
    inv = _inverse(cols) if cols else []
    n = T.dim

    def to_new(v):
        return [sum(inv[i][k] * v[k] for k in range(n)) for i in range(n)]

    ops = {}
    for name in T.ops:
        d = {}
        for i in range(n):
            for j in range(n):
                d[(i, j)] = to_new(T.product(name, cols[i], cols[j]))
        ops[name] = d
    return MultTable(x1 + x0, ops), x1, x0, rows


def present_minus(T: MultTable, validate: bool = True) -> EnvelopePresentation:
    """Relations for the associative tri-algebra envelope of a Lie tri-algebra.

    Over ``As<X u X.>`` with ``X = X1 u X0``:
    ``x`` for ``x`` in ``X0``; ``xy - yx - mu_dashv(x,y)`` for ``x > y`` in ``X1``;
    ``x.y - yx. - mu_dashv.(x,y)`` for ``x`` in ``X``, ``y`` in ``X1``;
    ``x.y. - y.x. - mu_perp.(x,y)`` for ``x > y`` in ``X``.
    """
    if validate:
        rep = validate_table(T, "tri_lie")
        if not rep:
            raise InvalidTable(rep.message)
    N, x1, x0, rows = adapted_table(T)
    A = Alphabet(N.labels, doubled=True)
    und = [A.letter(l, dotted=False) for l in N.labels]
    dot = [A.letter(l, dotted=True) for l in N.labels]
    n1 = len(x1)
    e = N.basis_vector
    rels = []

    def word(*letters):
        return AssocPoly({tuple(letters): 1}, A)

    for k in range(n1, N.dim):
        rels.append(word(und[k]))
    for i in range(n1):
        for j in range(i + 1, n1):
            mu = N.product("dashv", e(i), e(j))
            rels.append(word(und[i], und[j]) - word(und[j], und[i]) - _form(mu, und, AssocPoly, A))
    for i in range(N.dim):
        for j in range(n1):
            mu = N.product("dashv", e(i), e(j))
            rels.append(word(dot[i], und[j]) - word(und[j], dot[i]) - _form(mu, dot, AssocPoly, A))
    for i in range(N.dim):
        for j in range(i + 1, N.dim):
            mu = N.product("perp", e(i), e(j))
            rels.append(word(dot[i], dot[j]) - word(dot[j], dot[i]) - _form(mu, dot, AssocPoly, A))
    return EnvelopePresentation("minus", A, rels, N, x0=x0, x1=x1, l0_basis=rows)


def minus_defining_system(P: EnvelopePresentation) -> list:
    """The undoubled-and-doubled system ``S u phi(S)`` written in the adapted basis.

    ``S`` holds ``x.y - yx. - mu_dashv.(x,y)`` for all basis pairs and
    ``x.y. - y.x. - mu_perp.(x,y)`` for ``x > y``.  The envelope relations
    present the same algebra exactly when each of these reduces to zero
    modulo them.
    """
    from .replication import phi

    N, A = P.table, P.alphabet
    und = [A.letter(l, dotted=False) for l in N.labels]
    dot = [A.letter(l, dotted=True) for l in N.labels]
    e = N.basis_vector
    out = []
    for i in range(N.dim):
        for j in range(N.dim):
            mu = N.product("dashv", e(i), e(j))
            w = AssocPoly({(dot[i], und[j]): 1, (und[j], dot[i]): -1}, A)
            out.append(w - _form(mu, dot, AssocPoly, A))
            if i < j:
                mu = N.product("perp", e(i), e(j))
                w = AssocPoly({(dot[i], dot[j]): 1, (dot[j], dot[i]): -1}, A)
                out.append(w - _form(mu, dot, AssocPoly, A))
    return [p for p in out + [phi(q) for q in out] if p]


@dataclass
class CompositionReport:
    ok: bool
    checked: int = 0
    families: dict = field(default_factory=dict)  # dotted pattern -> number of compositions
    failures: list = field(default_factory=list)  # (witness, f, g, remainder)
    unreduced: list = field(default_factory=list)  # defining relations with nonzero remainder

    def __bool__(self):
        return self.ok


def _pattern(w, A: Alphabet) -> str:
    return "".join("x." if A.is_dotted(a) else "x" for a in w)


def minus_compositions(P: EnvelopePresentation, degree_bound: int = 4, check_system: bool = True) -> CompositionReport:
    """Reduce every composition with witness degree <= bound modulo the relations.

    With ``check_system`` the full defining system is reduced as well, which
    catches tables whose defects vanish from the envelope relations.
    """
    rels = [r.monic() for r in P.relations]
    A = P.alphabet
    rep = CompositionReport(True)
    for i, f in enumerate(rels):
        for g in rels[i:]:
            for w, c in compositions(f, g, "assoc"):
                if len(w) > degree_bound:
                    continue
                rep.checked += 1
                key = _pattern(w, A)
                rep.families[key] = rep.families.get(key, 0) + 1
                rem = normal_form(c, rels)
                if rem:
                    rep.ok = False
                    rep.failures.append((w, f, g, rem))
    if check_system:
        for p in minus_defining_system(P):
            rem = normal_form(p, rels)
            if rem:
                rep.ok = False
                rep.unreduced.append((p, rem))
    return rep


def verify_minus_gsb(P: EnvelopePresentation, degree_bound: int = 4) -> bool:
    rep = minus_compositions(P, degree_bound)
    if rep.ok:
        P.verified_up_to = max(P.verified_up_to, degree_bound)
    return rep.ok


def minus_state(P: EnvelopePresentation, degree_bound: int) -> GsbState:
    return complete(P.relations, flavor="assoc", degree_bound=degree_bound, alphabet=P.alphabet)


def multichoose(n: int, k: int) -> int:
    if k == 0:
        return 1
    if n <= 0:
        return 0
    return comb(n + k - 1, k)


def tensor_count(n: int, d1: int, d: int) -> int:
    """Degree-``n`` dimension of ``U(L/L0)`` tensor the augmentation ideal of ``U(L)``."""
    return sum(multichoose(d1, n - m) * multichoose(d, m) for m in range(1, n + 1))


@dataclass
class PbwBasis:
    words: list
    counts: dict


def pbw_basis_minus(P: EnvelopePresentation, max_deg: int, verify: bool = True) -> PbwBasis:
    """Words ``x1..xk y1.. ym.`` with ``xi`` in ``X1``, ``yj`` in ``X``, both nondecreasing, ``m >= 1``."""
    if P.verified_up_to < max_deg:
        if not verify or not verify_minus_gsb(P, max_deg):
            raise InvalidTable(f"presentation is not verified up to degree {max_deg}")
    A = P.alphabet
    x1 = sorted(A.letter(l, dotted=False) for l in P.x1)
    xd = sorted(A.letter(l, dotted=True) for l in P.table.labels)
    words = []
    for n in range(1, max_deg + 1):
        for m in range(1, n + 1):
            for left in combinations_with_replacement(x1, n - m):
                for right in combinations_with_replacement(xd, m):
                    words.append(tuple(left) + tuple(right))
    words.sort(key=lambda w: (len(w), w))
    counts = {n: 0 for n in range(1, max_deg + 1)}
    for w in words:
        counts[len(w)] += 1
    return PbwBasis(words, counts)


def reduced_counts(S: GsbState, max_deg: int, keep: Callable | None = None) -> dict[int, int]:
    from .gsb import enumerate_reduced

    counts = {n: 0 for n in range(1, max_deg + 1)}
    for w in enumerate_reduced(S, max_deg, keep):
        counts[len(w)] += 1
    return counts
