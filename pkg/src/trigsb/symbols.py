"""Ordered alphabets and the dotted copy of a generator set.

Letters are interned to small integers and the integer order *is* the letter
order: a larger id is a greater letter.  For a base ``x1 > x2 > ... > xk`` the
undotted letters get ids ``k-1, ..., 0`` and the dotted copies get
``2k-1, ..., k``, so every dotted letter exceeds every undotted one and
``x > y`` implies ``x. > y.``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class InvalidAlphabet(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Generator:
    name: str
    dotted: bool = False

    def __post_init__(self):
        if not _NAME.match(self.name):
            raise InvalidAlphabet(f"not an identifier: {self.name!r}")

    def __str__(self):
        return self.name + ("." if self.dotted else "")


class Alphabet:
    """A finite ordered alphabet, optionally doubled by dotted copies.

    ``base`` lists the undotted generator names in descending order.
    """

    def __init__(self, base: Sequence[str], doubled: bool = True):
        base = list(base)
        if not base:
            raise InvalidAlphabet("empty generator list")
        for name in base:
            if not isinstance(name, str) or not _NAME.match(name):
                raise InvalidAlphabet(f"not an identifier: {name!r}")
        if len(set(base)) != len(base):
            dupes = sorted({n for n in base if base.count(n) > 1})
            raise InvalidAlphabet(f"duplicate generator names: {', '.join(dupes)}")
        self.base = tuple(base)
        self.doubled = bool(doubled)
        k = len(base)
        self.k = k
        self.size = 2 * k if doubled else k
        gens = [None] * self.size
        for i, name in enumerate(base):
            gens[k - 1 - i] = Generator(name, False)
            if doubled:
                gens[2 * k - 1 - i] = Generator(name, True)
        self._gens: tuple[Generator, ...] = tuple(gens)
        self._ids = {g: i for i, g in enumerate(gens)}

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.base == other.base
            and self.doubled == other.doubled
        )

    def __hash__(self):
        return hash((self.base, self.doubled))

    def __repr__(self):
        return f"Alphabet({list(self.base)!r}, doubled={self.doubled})"

    def __str__(self):
        return " > ".join(str(self.generator(i)) for i in self.descending())

    # -- letters ------------------------------------------------------------
    def generator(self, letter: int) -> Generator:
        return self._gens[letter]

    def letter(self, gen: Generator | str, dotted: bool | None = None) -> int:
        """Id of a generator; strings ending in ``.`` denote dotted letters."""
        if isinstance(gen, str):
            if dotted is None:
                dotted = gen.endswith(".")
                gen = gen[:-1] if dotted else gen
            gen = Generator(gen, dotted)
        try:
            return self._ids[gen]
        except KeyError:
            raise KeyError(f"unknown generator {gen}") from None

    def name(self, letter: int) -> str:
        return str(self._gens[letter])

    def letters(self) -> range:
        return range(self.size)

    def descending(self) -> list[int]:
        return list(range(self.size - 1, -1, -1))

    def undotted(self) -> list[int]:
        """Undotted letters, greatest first."""
        return list(range(self.k - 1, -1, -1))

    def dotted(self) -> list[int]:
        if not self.doubled:
            return []
        return list(range(2 * self.k - 1, self.k - 1, -1))

    def is_dotted(self, letter: int) -> bool:
        return letter >= self.k

    def erase_dot(self, letter: int) -> int:
        return letter - self.k if letter >= self.k else letter

    def add_dot(self, letter: int) -> int:
        if not self.doubled:
            raise InvalidAlphabet("alphabet has no dotted letters")
        return letter + self.k if letter < self.k else letter

    def dotted_degree(self, word: Iterable[int]) -> int:
        k = self.k
        return sum(1 for a in word if a >= k)

    def plain(self) -> "Alphabet":
        return Alphabet(self.base, doubled=False)


def double(base: Sequence[str | Generator]) -> Alphabet:
    """Doubled alphabet ``x1. > x2. > ... > x1 > x2 > ...`` over ``base``."""
    names = []
    for g in base:
        if isinstance(g, Generator):
            if g.dotted:
                raise InvalidAlphabet("dotted letters are derived, not declared")
            g = g.name
        names.append(g)
    return Alphabet(names, doubled=True)


def erase_dot(g: Generator) -> Generator:
    return Generator(g.name, False)
