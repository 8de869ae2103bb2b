"""Di- and tri-algebra terms, replication of identities, and the doubled encoding.

A term tree is a generator name (``str``) or a triple ``(op, left, right)``
with ``op`` one of ``"|-"`` (vdash), ``"-|"`` (dashv), ``"<>"`` (perp) or
``"*"`` (the single product of the base variety).  ``TriPoly`` holds a linear
combination of trees.

Encoding sends a term into ``F = Var<X u X.>``: leaves go to dotted letters,
``a |- b`` to ``phi(a) b``, ``a -| b`` to ``a phi(b)`` and ``a <> b`` to ``ab``,
where ``phi`` erases dots.  Membership of ``f`` in the ideal generated by ``S``
is then decided by a Gröbner-Shirshov basis of ``S_enc u phi(S_enc)``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .assoc_poly import AssocPoly, multiply
from .gsb import GsbState, complete, enumerate_reduced, normal_form
from .lie_poly import LiePoly, bracket
from .poly import _frac
from .symbols import Alphabet

VDASH, DASHV, PERP, PROD = "|-", "-|", "<>", "*"
MODES = ("plain", "di", "tri")
_MODE_OPS = {"plain": {PROD}, "di": {VDASH, DASHV}, "tri": {VDASH, DASHV, PERP}}


class ModeError(ValueError):
    pass


class NotPolylinear(ValueError):
    pass


# -- term trees -------------------------------------------------------------

def tree_str(t) -> str:
    if isinstance(t, str):
        return t
    op, a, b = t
    return f"({tree_str(a)} {op} {tree_str(b)})"


def tree_degree(t) -> int:
    return 1 if isinstance(t, str) else tree_degree(t[1]) + tree_degree(t[2])


def tree_leaves(t) -> list[str]:
    return [t] if isinstance(t, str) else tree_leaves(t[1]) + tree_leaves(t[2])


def tree_ops(t) -> set[str]:
    return set() if isinstance(t, str) else {t[0]} | tree_ops(t[1]) | tree_ops(t[2])


def _tree_key(t):
    return (tree_degree(t), tree_str(t))


class TriPoly:
    """Linear combination of term trees in a fixed mode."""

    __slots__ = ("_terms", "mode")

    def __init__(self, terms=None, mode: str = "tri"):
        if mode not in MODES:
            raise ModeError(f"unknown mode {mode!r}")
        self.mode = mode
        clean = {}
        for t, c in (terms or {}).items():
            c = _frac(c)
            if c:
                bad = tree_ops(t) - _MODE_OPS[mode]
                if bad:
                    raise ModeError(f"operation {sorted(bad)[0]} is not available in {mode} mode")
                clean[t] = c
        self._terms = clean

    @classmethod
    def gen(cls, name: str, mode: str = "tri", coef=1):
        return cls({name: coef}, mode)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if not isinstance(other, TriPoly):
            raise TypeError(f"cannot combine TriPoly with {type(other).__name__}")
        if other.mode != self.mode:
            raise ModeError(f"mixing {self.mode} and {other.mode} terms")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return TriPoly(out, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TriPoly({t: -c for t, c in self._terms.items()}, self.mode)

    def scale(self, c):
        c = _frac(c)
        return TriPoly({t: c * v for t, v in self._terms.items()}, self.mode)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.mode == other.mode and self._terms == other._terms

    def __hash__(self):
        return hash((self.mode, frozenset(self._terms.items())))

    def degree(self) -> int:
        return max((tree_degree(t) for t in self._terms), default=0)

    def names(self) -> set[str]:
        return {x for t in self._terms for x in tree_leaves(t)}

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda tc: _tree_key(tc[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self.sorted_terms()):
            body = tree_str(t)
            if abs(c) != 1:
                body = f"{abs(c)} {body}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"TriPoly({str(self)!r}, mode={self.mode!r})"


def op(name: str, f: TriPoly, g: TriPoly) -> TriPoly:
    """Bilinear extension of one operation to term polynomials."""
    f._check(g)
    out: dict = {}
    for a, c in f.items():
        for b, d in g.items():
            t = (name, a, b)
            out[t] = out.get(t, 0) + c * d
    return TriPoly(out, f.mode)


def vdash(f, g):
    return op(VDASH, f, g)


def dashv(f, g):
    return op(DASHV, f, g)


def perp(f, g):
    return op(PERP, f, g)


# -- replication ------------------------------------------------------------

def _natural_key(name: str):
    m = re.match(r"(.*?)(\d*)$", name)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def _check_polylinear(phi: TriPoly) -> list[str]:
    names = None
    for t in phi:
        leaves = tree_leaves(t)
        if len(set(leaves)) != len(leaves):
            raise NotPolylinear(f"repeated variable in {tree_str(t)}")
        if names is None:
            names = set(leaves)
        elif set(leaves) != names:
            raise NotPolylinear("monomials use different variables")
    return sorted(names or (), key=_natural_key)


def _relabel(t, emph: set[str]):
    """Returns (new tree, contains emphasized leaf)."""
    if isinstance(t, str):
        return t, t in emph
    _, a, b = t
    a2, ea = _relabel(a, emph)
    b2, eb = _relabel(b, emph)
    if ea and eb:
        name = PERP
    elif eb:
        name = VDASH
    else:
        name = DASHV
    return (name, a2, b2), ea or eb


def replicate(phi: TriPoly, H: Iterable[int], mode: str = "tri", variables: Sequence[str] | None = None) -> TriPoly:
    """Replicated identity ``phi_H`` of a polylinear identity in the base product.

    ``H`` holds 1-based positions into ``variables`` (default: the variables
    of ``phi`` in natural order, so ``x1, x2, ...``).  Each product node
    becomes ``-|`` when only its left argument (or neither) holds an
    emphasized leaf, ``|-`` when only the right one does, and ``<>`` when both
    do.
    """
    if phi.mode != "plain":
        raise ModeError("replicate expects an identity in the plain product")
    if mode not in ("di", "tri"):
        raise ModeError(f"replication target must be di or tri, not {mode!r}")
    names = _check_polylinear(phi)
    variables = list(variables) if variables is not None else names
    if set(variables) != set(names):
        raise NotPolylinear("variable list does not match the identity")
    H = sorted(set(H))
    if not H:
        raise ValueError("H must be nonempty")
    if H[0] < 1 or H[-1] > len(variables):
        raise ValueError(f"H out of range 1..{len(variables)}: {H}")
    if mode == "di" and len(H) != 1:
        raise ValueError("di mode replicates with exactly one emphasized variable")
    emph = {variables[i - 1] for i in H}
    out: dict = {}
    for t, c in phi.items():
        t2, _ = _relabel(t, emph)
        out[t2] = out.get(t2, 0) + c
    return TriPoly(out, mode)


def _x(i, mode):
    return TriPoly.gen(f"x{i}", mode)


def anticommutativity() -> TriPoly:
    x1, x2 = _x(1, "plain"), _x(2, "plain")
    return op(PROD, x1, x2) + op(PROD, x2, x1)


def jacobi() -> TriPoly:
    x1, x2, x3 = (_x(i, "plain") for i in (1, 2, 3))
    p = lambda a, b: op(PROD, a, b)  # noqa: E731
    return p(p(x1, x2), x3) + p(p(x2, x3), x1) + p(p(x3, x1), x2)


def commutativity() -> TriPoly:
    x1, x2 = _x(1, "plain"), _x(2, "plain")
    return op(PROD, x1, x2) - op(PROD, x2, x1)


def associativity() -> TriPoly:
    x1, x2, x3 = (_x(i, "plain") for i in (1, 2, 3))
    p = lambda a, b: op(PROD, a, b)  # noqa: E731
    return p(p(x1, x2), x3) - p(x1, p(x2, x3))


def all_subsets(n: int, mode: str):
    from itertools import combinations

    sizes = [1] if mode == "di" else range(1, n + 1)
    return [set(c) for k in sizes for c in combinations(range(1, n + 1), k)]


def replicated_identities(identities: Sequence[TriPoly], mode: str) -> list[TriPoly]:
    """``phi_H`` for every identity and every admissible ``H``."""
    out = []
    for phi in identities:
        n = len(_check_polylinear(phi))
        for H in all_subsets(n, mode):
            out.append(replicate(phi, H, mode))
    return out


def zero_identities(mode: str) -> list[TriPoly]:
    """Identities saying the inner operation is irrelevant at a non-emphasized slot.

    For the binary product these are ``(a op b) |- c = (a op' b) |- c`` and
    ``c -| (a op b) = c -| (a op' b)``.
    """
    ops = [DASHV, VDASH] + ([PERP] if mode == "tri" else [])
    x1, x2, x3 = (_x(i, mode) for i in (1, 2, 3))
    out = []
    for o in ops[1:]:
        out.append(vdash(op(ops[0], x1, x2), x3) - vdash(op(o, x1, x2), x3))
        out.append(dashv(x1, op(ops[0], x2, x3)) - dashv(x1, op(o, x2, x3)))
    return out


def tri_lie_identities(mode: str = "tri") -> list[TriPoly]:
    """Reduced defining identities of Lie tri-algebras (Leibniz algebras in di mode).

    Skew-symmetry between ``|-`` and ``-|`` (and of ``<>``), the left-normed
    symmetry ``[[x1|-x2]|-x3] = -[[x2|-x1]|-x3]``, the left Leibniz identity,
    and in tri mode also the perp rules.
    """
    x1, x2, x3 = (_x(i, mode) for i in (1, 2, 3))
    V, D, P = vdash, dashv, perp
    out = [
        V(x1, x2) + D(x2, x1),
        V(V(x1, x2), x3) + V(V(x2, x1), x3),
        V(V(x1, x2), x3) - V(x1, V(x2, x3)) + V(x2, V(x1, x3)),
    ]
    if mode == "tri":
        out += [
            P(x1, x2) + P(x2, x1),
            V(P(x1, x2), x3) - V(V(x1, x2), x3),
            P(V(x1, x2), x3) - V(x1, P(x2, x3)) - P(V(x1, x3), x2),
            P(P(x1, x2), x3) + P(P(x2, x3), x1) + P(P(x3, x1), x2),
        ]
    return out


def substitute(f: TriPoly, mapping: dict) -> TriPoly:
    """Replace leaves by term polynomials (multilinear substitution)."""

    def sub(t) -> TriPoly:
        if isinstance(t, str):
            return mapping.get(t, TriPoly.gen(t, f.mode))
        return op(t[0], sub(t[1]), sub(t[2]))

    out = TriPoly({}, f.mode)
    for t, c in f.items():
        out = out + sub(t).scale(c)
    return out


def permuted(f: TriPoly) -> list[TriPoly]:
    names = sorted(f.names(), key=_natural_key)
    out = []
    for perm in permutations(names):
        out.append(substitute(f, {a: TriPoly.gen(b, f.mode) for a, b in zip(names, perm)}))
    return out


# -- the doubled encoding ------------------------------------------------------

def phi(f):
    """Erase all dots: the idempotent endomorphism ``x. -> x`` of ``F``."""
    A = f.alphabet
    return f.map_letters(A.erase_dot)


def _product(f, g):
    if isinstance(f, LiePoly):
        return bracket(f, g)
    return multiply(f, g)


def poly_type(variety: str):
    if variety == "lie":
        return LiePoly
    if variety == "assoc":
        return AssocPoly
    raise ValueError(f"unknown variety {variety!r}")


def alphabet_for(gens: Sequence[str] | Alphabet, mode: str) -> Alphabet:
    if isinstance(gens, Alphabet):
        base = gens.base
    else:
        base = list(gens)
    return Alphabet(base, doubled=mode != "plain")


def encode(t: TriPoly, alphabet: Alphabet, variety: str = "lie"):
    """Image of a term polynomial in ``F`` under the doubled encoding.

    In plain mode leaves stay undotted and ``*`` is the product of ``F``.
    """
    cls = poly_type(variety)
    plain = t.mode == "plain"
    if plain == alphabet.doubled:
        raise ModeError("plain terms need an undoubled alphabet, di/tri terms a doubled one")
    memo = {}

    def enc(tree):
        if tree in memo:
            return memo[tree]
        if isinstance(tree, str):
            try:
                a = alphabet.letter(tree, dotted=not plain)
            except KeyError:
                raise KeyError(f"unknown generator {tree}") from None
            r = cls.letter(a, alphabet)
        else:
            name, x, y = tree
            ex, ey = enc(x), enc(y)
            if name == VDASH:
                r = _product(phi(ex), ey)
            elif name == DASHV:
                r = _product(ex, phi(ey))
            else:
                r = _product(ex, ey)
        memo[tree] = r
        return r

    out = cls({}, alphabet)
    for tree, c in t.items():
        out = out + enc(tree).scale(c)
    return out


def in_V(f, mode: str) -> bool:
    """Whether every monomial has positive (tri) or exactly one (di) dotted letter."""
    A = f.alphabet
    if mode == "di":
        return all(A.dotted_degree(w) == 1 for w in f)
    if mode == "tri":
        return all(A.dotted_degree(w) >= 1 for w in f)
    raise ModeError(f"in_V is defined for di and tri modes, not {mode!r}")


def relation_system(S: Sequence[TriPoly], alphabet: Alphabet, variety: str) -> list:
    """Nonzero elements of ``S_enc u phi(S_enc)`` (just ``S_enc`` in plain mode)."""
    out = []
    seen = set()
    for s in S:
        e = encode(s, alphabet, variety)
        cands = [e] if not alphabet.doubled else [e, phi(e)]
        for p in cands:
            if p and p not in seen:
                seen.add(p)
                out.append(p)
    return out


class Membership(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    INCONCLUSIVE = "inconclusive"


@dataclass
class MemberResult:
    status: Membership
    normal_form: object
    degree: int
    state: GsbState

    def __bool__(self):
        return self.status is Membership.MEMBER


def _mode_of(S, f, mode):
    modes = {p.mode for p in list(S) + [f]}
    if mode is None:
        if len(modes) != 1:
            raise ModeError("cannot infer a single mode")
        return modes.pop()
    if modes - {mode}:
        raise ModeError(f"terms are not all in {mode} mode")
    return mode


def build_state(
    S: Sequence[TriPoly],
    gens,
    variety: str = "lie",
    mode: str = "di",
    degree_bound: int = 4,
    step_bound: int = 100_000,
) -> GsbState:
    alphabet = alphabet_for(gens, mode)
    rels = relation_system(S, alphabet, variety)
    flavor = "lie" if variety == "lie" else "assoc"
    return complete(
        rels,
        flavor=flavor,
        degree_bound=degree_bound,
        step_bound=step_bound,
        alphabet=alphabet,
        max_dotted=1 if mode == "di" else None,
    )


def member(
    S: Sequence[TriPoly],
    f: TriPoly,
    gens,
    variety: str = "lie",
    mode: str | None = None,
    degree_bound: int | None = None,
    step_bound: int = 100_000,
    state: GsbState | None = None,
) -> MemberResult:
    """Decide whether ``f`` lies in the ideal of the di/tri-algebra generated by ``S``.

    Returns ``MEMBER`` when the encoded target reduces to zero,
    ``NON_MEMBER`` when it does not and the basis is certified up to its
    degree, and ``INCONCLUSIVE`` otherwise.
    """
    mode = _mode_of(S, f, mode)
    alphabet = alphabet_for(gens, mode)
    target = encode(f, alphabet, variety)
    d = target.degree()
    if state is None:
        if degree_bound is None:
            rel_deg = max((encode(s, alphabet, variety).degree() for s in S), default=0)
            degree_bound = max(d + rel_deg, 1)
        state = build_state(S, alphabet, variety, mode, degree_bound, step_bound)
    nf = normal_form(target, state)
    if not nf:
        status = Membership.MEMBER
    elif state.complete_up_to >= d:
        status = Membership.NON_MEMBER
    else:
        status = Membership.INCONCLUSIVE
    return MemberResult(status, nf, d, state)


def free_basis(
    S: Sequence[TriPoly],
    gens,
    variety: str = "lie",
    mode: str = "di",
    max_deg: int = 4,
    step_bound: int = 100_000,
    state: GsbState | None = None,
):
    """Reduced monomials of degree <= ``max_deg`` that lie in ``V``."""
    if state is None:
        state = build_state(S, gens, variety, mode, max_deg, step_bound)
    A = state.alphabet
    if mode == "di":
        keep = lambda w: A.dotted_degree(w) == 1  # noqa: E731
    elif mode == "tri":
        keep = lambda w: A.dotted_degree(w) >= 1  # noqa: E731
    else:
        keep = None
    return enumerate_reduced(state, max_deg, keep)
