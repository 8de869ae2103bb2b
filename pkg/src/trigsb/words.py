"""Associative words as tuples of letter ids.

Words are compared deg-lex: by length first, then letter by letter.  Because
letter ids follow the alphabet order, ``deglex_key`` is simply
``(len(w), w)``.
"""

from __future__ import annotations

from typing import Sequence

Word = tuple  # tuple[int, ...]


def deglex_key(w: Word):
    return (len(w), w)


def compare_deglex(u: Word, v: Word) -> int:
    """Return -1, 0 or 1 as ``u`` is smaller than, equal to or greater than ``v``."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


def find_occurrences(w: Word, v: Word) -> list[tuple[Word, Word]]:
    """All splits ``w = prefix + v + suffix``, leftmost first."""
    n, m = len(w), len(v)
    out = []
    for i in range(n - m + 1):
        if w[i:i + m] == v:
            out.append((w[:i], w[i + m:]))
    return out


def occurrence_positions(w: Word, v: Word) -> list[int]:
    n, m = len(w), len(v)
    return [i for i in range(n - m + 1) if w[i:i + m] == v]


def contains(w: Word, v: Word) -> bool:
    m = len(v)
    return any(w[i:i + m] == v for i in range(len(w) - m + 1))


def overlap_suffix_prefix(v1: Word, v2: Word) -> list[tuple[Word, Word, Word]]:
    """Proper overlaps ``v1 = u u'`` and ``v2 = u' u''`` with ``u'`` nonempty.

    ``|u'| < min(|v1|, |v2|)`` so containment is excluded; the witness word is
    ``u u' u''``.
    """
    out = []
    for k in range(1, min(len(v1), len(v2))):
        if v1[len(v1) - k:] == v2[:k]:
            out.append((v1[:len(v1) - k], v2[:k], v2[k:]))
    return out


def format_word(w: Word, alphabet) -> str:
    return " ".join(alphabet.name(a) for a in w)


def parse_word(text: str, alphabet) -> Word:
    return tuple(alphabet.letter(tok) for tok in text.split())


def dotted_degree(w: Sequence[int], alphabet) -> int:
    return alphabet.dotted_degree(w)
