"""Lyndon-Shirshov words, standard and special bracketings.

Convention: a word is LS when it is strictly greater than each of its proper
rotations.  This is the classical Lyndon property for the reversed letter
order, so the internal helpers work with ``_rk(w)`` (negated letters) and
reuse the usual min-Lyndon algorithms.

Bracket trees are nested pairs ``(left, right)`` whose leaves are letter ids;
``STAR`` marks the hole in a special bracketing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .words import Word, deglex_key


class NotAnLSWord(ValueError):
    pass


class InternalInvariantError(AssertionError):
    pass


class _Star:
    __slots__ = ()

    def __repr__(self):
        return "*"


STAR = _Star()


def _rk(w: Word) -> tuple:
    return tuple(-a for a in w)


@lru_cache(maxsize=None)
def is_ls_word(u: Word) -> bool:
    n = len(u)
    if n == 0:
        return False
    for i in range(1, n):
        if not u > u[i:] + u[:i]:
            return False
    return True


@lru_cache(maxsize=None)
def standard_factorization(u: Word) -> tuple[Word, Word]:
    """Split ``u = v w`` with ``w`` the longest proper LS suffix."""
    if len(u) < 2:
        raise NotAnLSWord(f"no standard factorization of a letter: {u}")
    for i in range(1, len(u)):
        if is_ls_word(u[i:]):
            return u[:i], u[i:]
    raise InternalInvariantError(f"no LS suffix in {u}")  # a letter always is


@lru_cache(maxsize=None)
def standard_bracketing(u: Word):
    """Standard bracketing ``[u]`` as a nested pair tree."""
    if not is_ls_word(u):
        raise NotAnLSWord(f"not an LS word: {u}")
    if len(u) == 1:
        return u[0]
    v, w = standard_factorization(u)
    return (standard_bracketing(v), standard_bracketing(w))


def frontier(tree) -> Word:
    if isinstance(tree, tuple):
        return frontier(tree[0]) + frontier(tree[1])
    return (tree,)


def tree_degree(tree) -> int:
    if isinstance(tree, tuple):
        return tree_degree(tree[0]) + tree_degree(tree[1])
    return 1


def format_tree(tree, alphabet) -> str:
    if isinstance(tree, tuple):
        return f"[{format_tree(tree[0], alphabet)} {format_tree(tree[1], alphabet)}]"
    if tree is STAR:
        return "*"
    return alphabet.name(tree)


def format_nls(u: Word, alphabet) -> str:
    return format_tree(standard_bracketing(u), alphabet)


def ls_factorization(c: Word) -> list[Word]:
    """Duval factorization of ``c`` into LS words ``c1 c2 ... ck``.

    Factors are nonincreasing for the reversed-letter lexicographic order.
    """
    s = _rk(c)
    n = len(s)
    out = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(c[i:i + j - k])
            i += j - k
    return out


def _leading_of_tree(tree, star_lead):
    """Leading associative word and coefficient of a bracket tree.

    Uses that the leading term of a product is the product of leading terms;
    returns ``None`` when the two candidate words of a bracket coincide, since
    then the top terms cancel and nothing is certified.
    """
    if tree is STAR:
        return star_lead, 1
    if not isinstance(tree, tuple):
        return (tree,), 1
    left = _leading_of_tree(tree[0], star_lead)
    right = _leading_of_tree(tree[1], star_lead)
    if left is None or right is None:
        return None
    (a, ca), (b, cb) = left, right
    ab, ba = a + b, b + a
    if ab > ba:
        return ab, ca * cb
    if ba > ab:
        return ba, -ca * cb
    return None


def _spans(tree, start=0):
    """Yield ``(start, length, path)`` for every node of a bracket tree."""
    stack = [(tree, start, ())]
    while stack:
        node, s, path = stack.pop()
        n = tree_degree(node)
        yield s, n, path
        if isinstance(node, tuple):
            stack.append((node[0], s, path + (0,)))
            stack.append((node[1], s + tree_degree(node[0]), path + (1,)))


def _replace(tree, path, sub):
    if not path:
        return sub
    left, right = tree
    if path[0] == 0:
        return (_replace(left, path[1:], sub), right)
    return (left, _replace(right, path[1:], sub))


@lru_cache(maxsize=None)
def special_bracketing(w: Word, pos: int, vlen: int):
    """Bracketing scheme ``{u * u'}`` for the LS subword ``v = w[pos:pos+vlen]``.

    Substituting any monic Lie polynomial with leading word ``[v]`` for the
    hole gives a polynomial with leading word ``[w]`` and coefficient 1.  The
    scheme comes from the subtree of ``[w]`` that starts at the occurrence
    and covers ``v``, re-bracketed as ``[...[[v] c1] ...] ck]`` along the LS
    factorization of its remaining tail.  The claimed leading term is
    recomputed before the scheme is returned.
    """
    v = w[pos:pos + vlen]
    if len(v) != vlen or vlen == 0:
        raise NotAnLSWord(f"bad occurrence ({pos}, {vlen}) in {w}")
    if not is_ls_word(w):
        raise NotAnLSWord(f"not an LS word: {w}")
    if not is_ls_word(v):
        raise NotAnLSWord(f"subword is not LS: {v}")
    tree = standard_bracketing(w)
    best = None
    for s, n, path in _spans(tree):
        if s == pos and n >= vlen and (best is None or n < best[0]):
            best = (n, path)
    if best is None:
        raise InternalInvariantError(f"no subtree of [{w}] starts with {v} at {pos}")
    n, path = best
    sub = STAR
    for c in ls_factorization(w[pos + vlen:pos + n]):
        sub = (sub, standard_bracketing(c))
    scheme = _replace(tree, path, sub)
    lead = _leading_of_tree(scheme, v)
    if lead != (w, 1):
        raise InternalInvariantError(
            f"special bracketing of {v} in {w} has leading term {lead}"
        )
    return scheme


def enumerate_ls_words(letters: Iterable[int] | int, max_deg: int) -> list[Word]:
    """All LS words of degree ``<= max_deg`` over ``letters``, deg-lex ascending.

    ``letters`` may be an alphabet, an iterable of letter ids, or a size ``k``
    meaning ids ``0..k-1``.
    """
    if isinstance(letters, int):
        letters = range(letters)
    elif hasattr(letters, "letters"):
        letters = letters.letters()
    desc = sorted(set(letters), reverse=True)
    k = len(desc)
    if max_deg < 1 or k == 0:
        return []
    out = []
    # Duval's generation of min-Lyndon words over ranks; rank r is letter desc[r]
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(desc[r] for r in w))
        m = len(w)
        while len(w) < max_deg:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    out.sort(key=deglex_key)
    return out


def all_words(letters: Iterable[int], n: int) -> list[Word]:
    from itertools import product

    return [tuple(p) for p in product(sorted(letters), repeat=n)]
