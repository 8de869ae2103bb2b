"""Arithmetic kernel shared by Lie and associative polynomials.

A polynomial is an immutable map from monomial words (tuples of letter ids)
to nonzero ``Fraction`` coefficients over a fixed alphabet.  Subclasses only
decide which words are admissible monomials and how they print.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping

from .words import Word, deglex_key


class ZeroPolynomialError(ValueError):
    pass


class AlphabetMismatch(ValueError):
    pass


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Poly:
    __slots__ = ("_terms", "alphabet", "_hash")
    flavor = "?"

    def __init__(self, terms: Mapping[Word, object] | None, alphabet):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _frac(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean
        self.alphabet = alphabet
        self._hash = None

    # construction helpers
    def _new(self, terms) -> "Poly":
        return type(self)(terms, self.alphabet)

    @classmethod
    def zero(cls, alphabet):
        return cls({}, alphabet)

    @classmethod
    def monomial(cls, word, alphabet, coef=1):
        return cls({tuple(word): coef}, alphabet)

    def _check(self, other: "Poly"):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet!r} vs {other.alphabet!r}")

    # mapping view
    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __contains__(self, w):
        return w in self._terms

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return self._new(out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) - c
        return self._new(out)

    def __neg__(self):
        return self._new({w: -c for w, c in self._terms.items()})

    def scale(self, c) -> "Poly":
        c = _frac(c)
        if not c:
            return self._new({})
        return self._new({w: c * v for w, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.alphabet == other.alphabet
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # order-related
    def sorted_words(self) -> list[Word]:
        """Monomials in descending deg-lex order."""
        return sorted(self._terms, key=deglex_key, reverse=True)

    def leading(self) -> tuple[Word, Fraction]:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        w = max(self._terms, key=deglex_key)
        return w, self._terms[w]

    def leading_word(self) -> Word:
        return self.leading()[0]

    def monic(self) -> "Poly":
        _, c = self.leading()
        return self.scale(1 / c) if c != 1 else self

    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(len(w) for w in self._terms)

    def dotted_degrees(self) -> set[int]:
        return {self.alphabet.dotted_degree(w) for w in self._terms}

    def map_letters(self, fn) -> "Poly":
        """Apply a letter substitution; subclasses renormalize if needed."""
        raise NotImplementedError

    # printing
    def format_monomial(self, w: Word) -> str:
        raise NotImplementedError

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, w in enumerate(self.sorted_words()):
            c = self._terms[w]
            mono = self.format_monomial(w)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono if a == 1 else f"{a} {mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"
