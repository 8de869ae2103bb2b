"""Lie polynomials in the basis of non-associative LS words.

A basis element is stored by its frontier (an associative LS word); the
bracketing is always the standard one.  Arbitrary bracket trees are brought
into the basis bottom-up: each bracket of two basis words is either already a
standard bracketing, or is pivoted through the Jacobi identity on the
standard factorization of the smaller factor.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .lyndon import (
    STAR,
    NotAnLSWord,
    _rk,
    format_nls,
    is_ls_word,
    standard_bracketing,
    standard_factorization,
)
from .poly import Poly, ZeroPolynomialError
from .words import Word

__all__ = [
    "LiePoly",
    "MagmaTerm",
    "bracket",
    "to_nls_basis",
    "leading",
    "monic",
    "evaluate",
    "ZeroPolynomialError",
]

# A magma term is a letter id or a pair of magma terms.
MagmaTerm = object


class LiePoly(Poly):
    __slots__ = ()
    flavor = "lie"

    def __init__(self, terms, alphabet, check: bool = False):
        super().__init__(terms, alphabet)
        if check:
            for w in self._terms:
                if not is_ls_word(w):
                    raise NotAnLSWord(f"monomial {w} is not an LS word")

    @classmethod
    def letter(cls, a: int, alphabet, coef=1):
        return cls({(a,): coef}, alphabet)

    def format_monomial(self, w: Word) -> str:
        return format_nls(w, self.alphabet)

    def map_letters(self, fn) -> "LiePoly":
        out: dict = {}
        for w, c in self._terms.items():
            t = _map_tree(standard_bracketing(w), fn)
            for u, d in _tree_to_terms(t):
                out[u] = out.get(u, 0) + c * d
        return LiePoly(out, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, LiePoly):
            return bracket(self, other)
        return self.scale(other)


def _map_tree(t, fn):
    if isinstance(t, tuple):
        return (_map_tree(t[0], fn), _map_tree(t[1], fn))
    return fn(t)


@lru_cache(maxsize=None)
def _bracket_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """``[[u],[v]]`` in the NLS basis, as ``((word, coef), ...)``."""
    if u == v:
        return ()
    if _rk(u) > _rk(v):
        return tuple((w, -c) for w, c in _bracket_words(v, u))
    # here u precedes v in the reversed-letter order
    if len(u) == 1:
        return ((u + v, 1),)
    u1, u2 = standard_factorization(u)
    if _rk(u2) >= _rk(v):
        return ((u + v, 1),)
    # [[u1 u2] v] = [u1 [u2 v]] - [u2 [u1 v]]
    acc: dict[Word, int] = {}
    for w, c in _bracket_words(u2, v):
        for x, d in _bracket_words(u1, w):
            acc[x] = acc.get(x, 0) + c * d
    for w, c in _bracket_words(u1, v):
        for x, d in _bracket_words(u2, w):
            acc[x] = acc.get(x, 0) - c * d
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def _bracket_terms(f: Mapping[Word, Fraction], g: Mapping[Word, Fraction]) -> dict:
    out: dict[Word, Fraction] = {}
    for u, a in f.items():
        for v, b in g.items():
            if u == v:
                continue
            ab = a * b
            for w, c in _bracket_words(u, v):
                out[w] = out.get(w, 0) + ab * c
    return out


def bracket(f: LiePoly, g: LiePoly) -> LiePoly:
    """Bilinear bracket, result in the NLS basis."""
    f._check(g)
    return LiePoly(_bracket_terms(f._terms, g._terms), f.alphabet)


def _tree_to_terms(t) -> list[tuple[Word, Fraction]]:
    if not isinstance(t, tuple):
        return [((t,), Fraction(1))]
    left = dict(_tree_to_terms(t[0]))
    right = dict(_tree_to_terms(t[1]))
    return list(_bracket_terms(left, right).items())


def to_nls_basis(t: MagmaTerm, alphabet) -> LiePoly:
    """Rewrite a bracket tree (nested pairs over letter ids) in the NLS basis."""
    return LiePoly(dict(_tree_to_terms(t)), alphabet)


def apply_scheme(scheme, g: LiePoly) -> LiePoly:
    """Substitute ``g`` for the hole of a bracketing scheme."""

    def ev(node):
        if node is STAR:
            return g._terms
        if isinstance(node, tuple):
            return _bracket_terms(ev(node[0]), ev(node[1]))
        return {(node,): Fraction(1)}

    return LiePoly(ev(scheme), g.alphabet)


def leading(f: LiePoly):
    return f.leading()


def monic(f: LiePoly) -> LiePoly:
    return f.monic()


def from_words(terms: Mapping[Sequence[int], object], alphabet) -> LiePoly:
    """LiePoly from NLS frontiers; raises if a word is not LS."""
    return LiePoly({tuple(w): c for w, c in terms.items()}, alphabet, check=True)


def evaluate(f: LiePoly, assignment: Mapping[int, Sequence], table) -> list[Fraction]:
    """Image of ``f`` under the homomorphism fixed by ``assignment``.

    ``table`` is a callable ``(vec, vec) -> vec`` or an object with a
    ``product("bracket", a, b)`` method; vectors are coefficient lists.
    """
    mul = table if callable(table) else (lambda a, b: table.product("bracket", a, b))
    dims = {len(v) for v in assignment.values()}
    if len(dims) > 1:
        raise ValueError(f"assignment vectors have different dimensions: {sorted(dims)}")
    n = dims.pop() if dims else getattr(table, "dim", 0)

    def ev(t):
        if isinstance(t, tuple):
            return mul(ev(t[0]), ev(t[1]))
        try:
            vec = assignment[t]
        except KeyError:
            raise ValueError(f"no value assigned to letter {f.alphabet.name(t)}") from None
        return [Fraction(x) for x in vec]

    out = [Fraction(0)] * n
    for w, c in f.items():
        v = ev(standard_bracketing(w))
        if len(v) != n:
            raise ValueError(f"dimension mismatch: {len(v)} != {n}")
        out = [x + c * y for x, y in zip(out, v)]
    return out
