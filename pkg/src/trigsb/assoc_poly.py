"""Associative polynomials over words, and the Lie-to-associative expansion."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lie_poly import LiePoly
from .lyndon import standard_bracketing
from .poly import Poly
from .words import Word, format_word


class AssocPoly(Poly):
    __slots__ = ()
    flavor = "assoc"

    @classmethod
    def letter(cls, a: int, alphabet, coef=1):
        return cls({(a,): coef}, alphabet)

    def format_monomial(self, w: Word) -> str:
        return format_word(w, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, AssocPoly):
            return multiply(self, other)
        return self.scale(other)

    def map_letters(self, fn) -> "AssocPoly":
        out: dict = {}
        for w, c in self._terms.items():
            u = tuple(fn(a) for a in w)
            out[u] = out.get(u, 0) + c
        return AssocPoly(out, self.alphabet)

    def lmul(self, u: Word) -> "AssocPoly":
        """``u * self`` for a word ``u``."""
        u = tuple(u)
        return AssocPoly({u + w: c for w, c in self._terms.items()}, self.alphabet)

    def rmul(self, u: Word) -> "AssocPoly":
        u = tuple(u)
        return AssocPoly({w + u: c for w, c in self._terms.items()}, self.alphabet)


def multiply(f: AssocPoly, g: AssocPoly) -> AssocPoly:
    f._check(g)
    out: dict[Word, Fraction] = {}
    for u, a in f.items():
        for v, b in g.items():
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return AssocPoly(out, f.alphabet)


def commutator(f: AssocPoly, g: AssocPoly) -> AssocPoly:
    return multiply(f, g) - multiply(g, f)


@lru_cache(maxsize=None)
def _expand_tree(t) -> tuple[tuple[Word, int], ...]:
    if not isinstance(t, tuple):
        return (((t,), 1),)
    left, right = _expand_tree(t[0]), _expand_tree(t[1])
    acc: dict[Word, int] = {}
    for u, a in left:
        for v, b in right:
            acc[u + v] = acc.get(u + v, 0) + a * b
            acc[v + u] = acc.get(v + u, 0) - a * b
    return tuple((w, c) for w, c in acc.items() if c)


def expand_tree(t, alphabet) -> AssocPoly:
    """Associative image of a bracket tree under ``[p, q] -> pq - qp``."""
    return AssocPoly(dict(_expand_tree(t)), alphabet)


def expand_lie(f: LiePoly) -> AssocPoly:
    out: dict[Word, Fraction] = {}
    for w, c in f.items():
        for u, d in _expand_tree(standard_bracketing(w)):
            out[u] = out.get(u, 0) + c * d
    return AssocPoly(out, f.alphabet)


def leading_assoc(f: AssocPoly):
    return f.leading()
