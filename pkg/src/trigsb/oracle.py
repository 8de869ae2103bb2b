"""Brute-force linear algebra used to cross-check the rewriting engine.

Everything here is truncated at a maximal degree ``D``: the ideal generated
by ``S`` is replaced by the smallest subspace of ``F_{<=D}`` that contains
the generators of degree ``<= D`` and is closed under multiplication by
letters whenever the product still has degree ``<= D``.  Relations need not
be homogeneous, so spans live in the filtered space rather than per degree.

Vectors are sparse dicts ``monomial -> Fraction``; row reduction is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from .assoc_poly import AssocPoly
from .lie_poly import LiePoly, bracket
from .lyndon import enumerate_ls_words
from .poly import Poly
from .replication import (
    DASHV,
    PERP,
    PROD,
    VDASH,
    TriPoly,
    alphabet_for,
    encode,
    op,
    phi,
    tree_leaves,
    tree_str,
)
from .symbols import Alphabet
from .words import deglex_key


class DegreeOverflow(ValueError):
    pass


class Echelon:
    """Row echelon form over Q; a row's pivot is its greatest monomial under ``key``."""

    def __init__(self, key: Callable = deglex_key):
        self.key = key
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec) -> dict:
        v = {w: Fraction(c) for w, c in dict(vec).items() if c}
        key = self.key
        while True:
            hits = [w for w in v if w in self.rows]
            if not hits:
                return v
            w = max(hits, key=key)
            c = v[w]
            for u, d in self.rows[w].items():
                x = v.get(u, 0) - c * d
                if x:
                    v[u] = x
                else:
                    v.pop(u, None)

    def add(self, vec) -> dict | None:
        """Insert a vector; returns the new row, or ``None`` if it was dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        p = max(r, key=self.key)
        c = r[p]
        row = {w: x / c for w, x in r.items()}
        self.rows[p] = row
        return row

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def pivots(self):
        return sorted(self.rows, key=self.key)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots()]


def rank(vectors: Iterable, key: Callable = deglex_key) -> int:
    e = Echelon(key)
    for v in vectors:
        e.add(v if isinstance(v, dict) else dict(v.items()))
    return len(e)


def _as_dict(p) -> dict:
    return dict(p.items())


def linearly_independent(polys: Sequence) -> bool:
    return rank([_as_dict(p) for p in polys]) == len(polys)


def same_span(a: Sequence, b: Sequence, key: Callable = deglex_key) -> bool:
    ea, eb = Echelon(key), Echelon(key)
    for p in a:
        ea.add(_as_dict(p))
    for p in b:
        eb.add(_as_dict(p))
    return len(ea) == len(eb) and all(ea.contains(r) for r in eb.basis())


# -- ideals in F ---------------------------------------------------------------

class IdealSpan:
    """Truncated ideal span in ``F`` with a membership test."""

    def __init__(self, alphabet: Alphabet, flavor: str, max_deg: int, echelon: Echelon):
        self.alphabet = alphabet
        self.flavor = flavor
        self.max_deg = max_deg
        self.echelon = echelon

    def __contains__(self, f) -> bool:
        if f.degree() > self.max_deg:
            raise DegreeOverflow(f"degree {f.degree()} exceeds the span bound {self.max_deg}")
        return self.echelon.contains(_as_dict(f))

    def dimension(self) -> int:
        return len(self.echelon)

    def dimension_by_leading_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.echelon.rows:
            out[len(p)] = out.get(len(p), 0) + 1
        return out

    def basis(self) -> list:
        cls = LiePoly if self.flavor == "lie" else AssocPoly
        return [cls(r, self.alphabet) for r in self.echelon.basis()]

    def intersect(self, keep: Callable) -> Echelon:
        """Rows spanning the part of the span supported on monomials with ``keep``.

        Re-eliminates with every rejected monomial ranked above every kept one.
        """
        key = lambda w: (bool(keep(w)) is False, deglex_key(w))  # noqa: E731
        e = Echelon(key)
        for r in self.echelon.basis():
            e.add(r)
        out = Echelon()
        for p, r in e.rows.items():
            if keep(p):
                out.add(r)
        return out


def _flavor(S, flavor):
    if flavor:
        return flavor
    for s in S:
        return "lie" if isinstance(s, LiePoly) else "assoc"
    raise ValueError("flavor required for an empty relation list")


def ideal_span(S: Sequence[Poly], flavor: str | None = None, max_deg: int = 4, alphabet: Alphabet | None = None) -> IdealSpan:
    """Truncated two-sided ideal generated by ``S`` in the free Lie or associative algebra."""
    flavor = _flavor(S, flavor)
    if alphabet is None:
        if not S:
            raise ValueError("alphabet required for an empty relation list")
        alphabet = S[0].alphabet
    cls = LiePoly if flavor == "lie" else AssocPoly
    e = Echelon()
    queue = []
    for s in S:
        if s.degree() <= max_deg:
            row = e.add(_as_dict(s))
            if row is not None:
                queue.append(row)
    letters = list(alphabet.letters())
    while queue:
        r = queue.pop()
        if max(len(w) for w in r) >= max_deg:
            continue
        p = cls(r, alphabet)
        for a in letters:
            x = cls.letter(a, alphabet)
            prods = [bracket(x, p)] if flavor == "lie" else [x * p, p * x]
            for q in prods:
                row = e.add(_as_dict(q))
                if row is not None:
                    queue.append(row)
    return IdealSpan(alphabet, flavor, max_deg, e)


def _encoded(S, alphabet, variety):
    out = []
    for s in S:
        out.append(encode(s, alphabet, variety) if isinstance(s, TriPoly) else s)
    return out


def doubled_system(S_enc: Sequence[Poly]) -> list[Poly]:
    out = list(S_enc)
    for s in S_enc:
        p = phi(s)
        if p:
            out.append(p)
    return out


def member_oracle(S, f, flavor: str = "lie", mode: str = "di", max_deg: int = 4, gens=None) -> bool:
    """Membership of ``f`` in the truncated ideal of ``S`` (plus ``phi(S)`` in di/tri mode).

    ``S`` and ``f`` may be term polynomials (encoded first, needs ``gens``) or
    elements of ``F``.
    """
    alphabet = None
    if gens is not None:
        alphabet = alphabet_for(gens, mode)
    elif isinstance(f, Poly):
        alphabet = f.alphabet
    else:
        raise ValueError("gens required to encode term polynomials")
    S_enc = _encoded(S, alphabet, flavor)
    target = _encoded([f], alphabet, flavor)[0]
    if target.degree() > max_deg:
        raise DegreeOverflow(f"target degree {target.degree()} exceeds max_deg {max_deg}")
    rels = doubled_system(S_enc) if mode in ("di", "tri") else S_enc
    span = ideal_span(rels, flavor, max_deg, alphabet)
    return target in span


def v_filter(alphabet: Alphabet, mode: str):
    if mode == "di":
        return lambda w: alphabet.dotted_degree(w) == 1
    if mode == "tri":
        return lambda w: alphabet.dotted_degree(w) >= 1
    return lambda w: True


def free_monomials(mode: str, variety: str, gens, max_deg: int) -> list:
    alphabet = alphabet_for(gens, mode)
    keep = v_filter(alphabet, mode)
    letters = sorted(alphabet.letters())
    if variety == "lie":
        words = enumerate_ls_words(letters, max_deg)
    else:
        words = [w for n in range(1, max_deg + 1) for w in product(letters, repeat=n)]
    return [w for w in words if keep(w)]


def free_dimension(mode: str, variety: str, num_gens: int, max_deg: int) -> dict[int, int]:
    """Per-degree number of basis monomials of the free di/tri (or plain) algebra."""
    gens = [f"x{i + 1}" for i in range(num_gens)]
    out = {n: 0 for n in range(1, max_deg + 1)}
    for w in free_monomials(mode, variety, gens, max_deg):
        out[len(w)] += 1
    return out


# -- the tri-operation side --------------------------------------------------------

def _tri_ops(mode):
    return [VDASH, DASHV] + ([PERP] if mode == "tri" else [])


def _apply(name, f, g):
    from .replication import _product

    if name == VDASH:
        return _product(phi(f), g)
    if name == DASHV:
        return _product(f, phi(g))
    return _product(f, g)


def tri_ideal_span(S, gens, variety: str = "lie", mode: str = "tri", max_deg: int = 4) -> Echelon:
    """Ideal of the subalgebra ``V`` generated by ``S`` under the tri-operations.

    Starts from ``S_enc`` and closes under ``v |- J``, ``J -| v``, ``v -| J``,
    ``J |- v``, ``J <> v`` and ``v <> J`` (the last two only in tri mode) for
    basis monomials ``v`` of ``V``, truncated at ``max_deg``.
    """
    alphabet = alphabet_for(gens, mode)
    cls = LiePoly if variety == "lie" else AssocPoly
    S_enc = _encoded(S, alphabet, variety)
    vbasis = [cls({w: 1}, alphabet) for w in free_monomials(mode, variety, gens, max_deg - 1)]
    e = Echelon()
    queue = []
    for s in S_enc:
        if s and s.degree() <= max_deg:
            row = e.add(_as_dict(s))
            if row is not None:
                queue.append(row)
    while queue:
        r = queue.pop()
        j = cls(r, alphabet)
        dj = j.degree()
        for v in vbasis:
            if dj + v.degree() > max_deg:
                continue
            prods = []
            for name in _tri_ops(mode):
                prods.append(_apply(name, v, j))
                prods.append(_apply(name, j, v))
            for q in prods:
                row = e.add(_as_dict(q))
                if row is not None:
                    queue.append(row)
    return e


def ideal_in_V(S, gens, variety: str = "lie", mode: str = "tri", max_deg: int = 4) -> Echelon:
    """``(S u phi(S)) n V`` in ``F``, truncated at ``max_deg``."""
    alphabet = alphabet_for(gens, mode)
    S_enc = _encoded(S, alphabet, variety)
    span = ideal_span(doubled_system(S_enc), variety, max_deg, alphabet)
    return span.intersect(v_filter(alphabet, mode))


def echelons_equal(a: Echelon, b: Echelon) -> bool:
    return len(a) == len(b) and all(a.contains(r) for r in b.basis())


# -- identities in the free tri-magma ------------------------------------------------

def _tree_key(t):
    return (len(tree_leaves(t)), tree_str(t))


def _shapes(names: tuple, ops):
    if len(names) == 1:
        yield names[0]
        return
    for i in range(1, len(names)):
        for left in _shapes(names[:i], ops):
            for right in _shapes(names[i:], ops):
                for o in ops:
                    yield (o, left, right)


def multilinear_trees(n: int, mode: str) -> list:
    """Every tree with leaves ``x1..xn`` (each once) over the operations of the mode."""
    ops = [PROD] if mode == "plain" else _tri_ops(mode)
    names = [f"x{i + 1}" for i in range(n)]
    out = []
    for perm in permutations(names):
        out.extend(_shapes(perm, ops))
    return out


def _rename(f: TriPoly, mapping: dict) -> TriPoly:
    from .replication import substitute

    return substitute(f, mapping)


def consequences(identities: Sequence[TriPoly], n: int, mode: str) -> list[TriPoly]:
    """Multilinear degree-``n`` consequences (``n`` = 2 or 3) of identities of degree <= ``n``.

    Degree-``n`` identities contribute all variable renamings; degree-2
    identities at ``n = 3`` contribute substitutions of a product for one
    variable and products with a third variable on either side.
    """
    if n not in (2, 3):
        raise ValueError("only degrees 2 and 3 are supported")
    ops = [PROD] if mode == "plain" else _tri_ops(mode)
    names = [f"x{i + 1}" for i in range(n)]
    out = []
    for p in identities:
        vs = sorted(p.names())
        k = len(vs)
        if k == n:
            for perm in permutations(names):
                out.append(_rename(p, {a: TriPoly.gen(b, mode) for a, b in zip(vs, perm)}))
        elif k == 2 and n == 3:
            for a, b, c in permutations(names):
                xa, xb, xc = (TriPoly.gen(s, mode) for s in (a, b, c))
                for o in ops:
                    prod = op(o, xa, xb)
                    out.append(_rename(p, {vs[0]: prod, vs[1]: xc}))
                    out.append(_rename(p, {vs[0]: xc, vs[1]: prod}))
                    q = _rename(p, {vs[0]: xa, vs[1]: xb})
                    out.append(op(o, q, xc))
                    out.append(op(o, xc, q))
    return [q for q in out if q]


def tri_span(polys: Sequence[TriPoly]) -> Echelon:
    e = Echelon(_tree_key)
    for p in polys:
        e.add(dict(p.items()))
    return e


def encode_kernel_dimension(n: int, mode: str, variety: str = "lie") -> int:
    """Dimension of the multilinear degree-``n`` identities satisfied by the encoding."""
    trees = multilinear_trees(n, mode)
    gens = [f"x{i + 1}" for i in range(n)]
    alphabet = alphabet_for(gens, mode)
    images = [encode(TriPoly({t: 1}, mode), alphabet, variety) for t in trees]
    return len(trees) - rank([_as_dict(p) for p in images])


def in_encode_kernel(p: TriPoly, variety: str = "lie") -> bool:
    gens = sorted(p.names())
    alphabet = alphabet_for(gens, p.mode)
    return not encode(p, alphabet, variety)
