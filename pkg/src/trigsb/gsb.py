"""Normal forms, compositions and degree-bounded Shirshov completion.

The engine works for both flavors: Lie polynomials in the NLS basis, where
eliminating ``s`` from a word ``u s u'`` uses the special bracketing
``{u s u'}``, and associative polynomials, where it is plain multiplication.

Completion is truncated by degree.  Because the deg-lex order is degree
compatible, eliminations never raise degree, so once every composition whose
witness has degree <= d is trivial, normal forms decide membership for
elements of degree <= d in the ideal truncated at degree d.
"""

from __future__ import annotations

import hashlib
import heapq
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .assoc_poly import AssocPoly
from .lie_poly import LiePoly, apply_scheme
from .lyndon import enumerate_ls_words, is_ls_word, special_bracketing
from .poly import Poly
from .words import Word, contains, deglex_key, occurrence_positions, overlap_suffix_prefix

log = logging.getLogger(__name__)

LIE = "lie"
ASSOC = "assoc"


class InvalidInput(ValueError):
    pass


class BasisNotCertified(RuntimeError):
    pass


class CacheError(ValueError):
    pass


def poly_class(flavor: str):
    if flavor == LIE:
        return LiePoly
    if flavor == ASSOC:
        return AssocPoly
    raise InvalidInput(f"unknown flavor {flavor!r}")


def flavor_of(p: Poly) -> str:
    if isinstance(p, LiePoly):
        return LIE
    if isinstance(p, AssocPoly):
        return ASSOC
    raise TypeError(f"not a polynomial: {p!r}")


@dataclass
class GsbState:
    flavor: str
    alphabet: object
    relations: list = field(default_factory=list)
    degree_bound: int = 0
    step_bound: int = 0
    complete_up_to: int = 0
    max_dotted: int | None = None
    parked: list = field(default_factory=list)
    deferred: list = field(default_factory=list)
    steps: int = 0
    source: str = "-"

    @property
    def is_complete(self) -> bool:
        return self.complete_up_to >= self.degree_bound

    def leading_words(self) -> list[Word]:
        return [r.leading_word() for r in self.relations]

    def __str__(self):
        return "\n".join(str(r) for r in self.relations)

    # -- cache file ---------------------------------------------------------
    def body_lines(self) -> list[str]:
        return [str(r) for r in self.relations]

    def to_text(self) -> str:
        body = self.body_lines()
        digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
        md = "none" if self.max_dotted is None else str(self.max_dotted)
        head = [
            "# trigsb gsb cache v1",
            f"alphabet: {' > '.join(self.alphabet.base)}",
            f"doubled: {'yes' if self.alphabet.doubled else 'no'}",
            "order: deglex",
            f"flavor: {self.flavor}",
            f"degree_bound: {self.degree_bound}",
            f"complete_up_to: {self.complete_up_to}",
            f"max_dotted: {md}",
            f"source: {self.source}",
            f"checksum: {digest}",
        ]
        return "\n".join(head + body) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GsbState":
        from .symbols import Alphabet
        from .textio import parse_poly

        lines = text.splitlines()
        if not lines or lines[0].strip() != "# trigsb gsb cache v1":
            raise CacheError("not a gsb cache file")
        head = {}
        i = 1
        keys = ["alphabet", "doubled", "order", "flavor", "degree_bound", "complete_up_to", "max_dotted", "source", "checksum"]
        for key in keys:
            if i >= len(lines) or not lines[i].startswith(key + ":"):
                raise CacheError(f"missing header field {key!r}")
            head[key] = lines[i].split(":", 1)[1].strip()
            i += 1
        body = [ln for ln in lines[i:] if ln.strip()]
        digest = hashlib.sha256("\n".join(body).encode()).hexdigest()
        if head["order"] != "deglex":
            raise CacheError(f"unsupported monomial order {head['order']!r}")
        if digest != head["checksum"]:
            raise CacheError("checksum mismatch")
        alphabet = Alphabet([s.strip() for s in head["alphabet"].split(">")], doubled=head["doubled"] == "yes")
        flavor = head["flavor"]
        rels = [parse_poly(ln, alphabet, flavor) for ln in body]
        md = None if head["max_dotted"] == "none" else int(head["max_dotted"])
        return cls(
            flavor=flavor,
            alphabet=alphabet,
            relations=rels,
            degree_bound=int(head["degree_bound"]),
            complete_up_to=int(head["complete_up_to"]),
            max_dotted=md,
            source=head["source"],
        )


def _relations(S) -> list:
    if isinstance(S, GsbState):
        return S.relations
    return list(S)


# -- elimination --------------------------------------------------------------

@lru_cache(maxsize=200_000)
def _lie_multiple(w: Word, pos: int, s: LiePoly) -> LiePoly:
    scheme = special_bracketing(w, pos, len(s.leading_word()))
    return apply_scheme(scheme, s)


def multiple(w: Word, pos: int, s: Poly) -> Poly:
    """The element ``{u s u'}`` with leading word ``w``, where ``s`` sits at ``pos``."""
    if isinstance(s, LiePoly):
        return _lie_multiple(w, pos, s)
    v = s.leading_word()
    return s.lmul(w[:pos]).rmul(w[pos + len(v):])


def _index(rels):
    return [(r.leading_word(), r) for r in rels]


def _find_reducer(w: Word, index):
    """Leftmost occurrence of any leading word in ``w``; earliest relation wins."""
    best = None
    for v, r in index:
        m = len(v)
        for i in range(len(w) - m + 1):
            if w[i:i + m] == v:
                if best is None or i < best[1]:
                    best = (r, i)
                break
    return best


def normal_form(f: Poly, S, order: str = "greatest", rng=None) -> Poly:
    """Reduce ``f`` until no monomial contains a leading word of ``S``.

    ``order="greatest"`` always eliminates the greatest reducible monomial at
    its leftmost occurrence; ``order="random"`` picks the monomial, relation
    and occurrence with ``rng`` (used to test confluence).
    """
    rels = _relations(S)
    if not rels or not f:
        return f
    index = _index(rels)
    work = dict(f.items())
    if order == "random":
        return _normal_form_random(f, work, index, rng)
    out = {}
    while work:
        w = max(work, key=deglex_key)
        c = work.pop(w)
        hit = _find_reducer(w, index)
        if hit is None:
            out[w] = c
            continue
        s, pos = hit
        for u, d in multiple(w, pos, s).items():
            if u == w:
                continue
            x = work.get(u, 0) - c * d
            if x:
                work[u] = x
            else:
                work.pop(u, None)
    return type(f)(out, f.alphabet)


def _normal_form_random(f, work, index, rng):
    import random

    rng = rng or random.Random(0)
    while True:
        options = []
        for w in work:
            for v, r in index:
                for i in occurrence_positions(w, v):
                    options.append((w, r, i))
        if not options:
            return type(f)(work, f.alphabet)
        options.sort(key=lambda o: (deglex_key(o[0]), deglex_key(o[1].leading_word()), o[2]))
        w, s, pos = rng.choice(options)
        c = work.pop(w)
        for u, d in multiple(w, pos, s).items():
            if u == w:
                continue
            x = work.get(u, 0) - c * d
            if x:
                work[u] = x
            else:
                work.pop(u, None)


# -- compositions -------------------------------------------------------------

def _intersection(f: Poly, g: Poly, u: Word, mid: Word, tail: Word):
    w = u + mid + tail
    if isinstance(f, LiePoly):
        if not is_ls_word(w):
            return None
        return w, multiple(w, 0, f) - multiple(w, len(u), g)
    return w, f.rmul(tail) - g.lmul(u)


def compositions(f: Poly, g: Poly, flavor: str | None = None) -> list[tuple[Word, Poly]]:
    """Nonzero compositions of two monic polynomials.

    Inclusion compositions of ``g`` in ``f`` and intersection compositions in
    both orientations.  Lie intersections exist only for LS witnesses.
    """
    flavor = flavor or flavor_of(f)
    if flavor_of(f) != flavor or flavor_of(g) != flavor:
        raise InvalidInput("flavor mismatch")
    f, g = f.monic(), g.monic()
    fw, gw = f.leading_word(), g.leading_word()
    out = []
    for pos in occurrence_positions(fw, gw):
        c = f - multiple(fw, pos, g)
        if c:
            out.append((fw, c))
    pairs = [(f, g)] if f == g else [(f, g), (g, f)]
    for a, b in pairs:
        for u, mid, tail in overlap_suffix_prefix(a.leading_word(), b.leading_word()):
            r = _intersection(a, b, u, mid, tail)
            if r is not None and r[1]:
                out.append(r)
    return out


def is_trivial(c: Poly, S) -> bool:
    """Sufficient triviality test: the composition reduces to zero."""
    return not normal_form(c, S)


def check_compositions(relations: Sequence[Poly], degree_bound: int) -> list[tuple[Word, Poly, Poly, Poly]]:
    """Compositions of witness degree <= bound whose normal form is nonzero.

    Returns ``(witness, f, g, remainder)`` tuples; an empty list means the set
    is a GSB up to that degree.
    """
    rels = [r.monic() for r in relations]
    bad = []
    for i, f in enumerate(rels):
        for j, g in enumerate(rels):
            if j < i:
                continue
            for a, b in ([(f, g)] if i == j else [(f, g), (g, f)]):
                aw, bw = a.leading_word(), b.leading_word()
                if i != j:
                    for pos in occurrence_positions(aw, bw):
                        if len(aw) <= degree_bound:
                            rem = normal_form(a - multiple(aw, pos, b), rels)
                            if rem:
                                bad.append((aw, a, b, rem))
                for u, mid, tail in overlap_suffix_prefix(aw, bw):
                    if len(u) + len(mid) + len(tail) > degree_bound:
                        continue
                    r = _intersection(a, b, u, mid, tail)
                    if r is None:
                        continue
                    rem = normal_form(r[1], rels)
                    if rem:
                        bad.append((r[0], a, b, rem))
    return bad


# -- completion -----------------------------------------------------------------

class _Completion:
    def __init__(self, flavor, alphabet, degree_bound, step_bound, max_dotted):
        self.flavor = flavor
        self.alphabet = alphabet
        self.bound = degree_bound
        self.step_bound = step_bound
        self.max_dotted = max_dotted
        self.active: dict[int, Poly] = {}
        self.heap: list = []
        self.seq = 0
        self.next_id = 0
        self.steps = 0
        self.parked: list[Poly] = []
        self.deferred: list[Poly] = []

    def _sorted(self):
        return sorted(self.active.values(), key=lambda r: deglex_key(r.leading_word()))

    def _too_dotted(self, w: Word) -> bool:
        return self.max_dotted is not None and self.alphabet.dotted_degree(w) > self.max_dotted

    def add(self, p: Poly):
        queue = [p]
        while queue:
            p = normal_form(queue.pop(0), self._sorted())
            if not p:
                continue
            p = p.monic()
            lw = p.leading_word()
            if len(lw) > self.bound:
                self.deferred.append(p)
                continue
            if self._too_dotted(lw):
                self.parked.append(p)
                continue
            for rid in sorted(self.active):
                r = self.active[rid]
                if contains(r.leading_word(), lw):
                    del self.active[rid]
                    queue.append(r)
            nid = self.next_id
            self.next_id += 1
            self.active[nid] = p
            rels = self._sorted()
            for rid in sorted(self.active):
                if rid == nid:
                    continue
                r = self.active[rid]
                w, c = r.leading()
                tail = r - type(r)({w: c}, r.alphabet)
                if tail:
                    self.active[rid] = type(r)({w: c}, r.alphabet) + normal_form(tail, rels)
            for rid in sorted(self.active):
                self._push_pair(nid, rid)

    def _push_pair(self, a: int, b: int):
        fa, fb = self.active[a], self.active[b]
        orient = [(a, b)] if a == b else [(a, b), (b, a)]
        for x, y in orient:
            xw = self.active[x].leading_word()
            yw = self.active[y].leading_word()
            for u, mid, tail in overlap_suffix_prefix(xw, yw):
                w = u + mid + tail
                if len(w) > self.bound:
                    continue
                if self.flavor == LIE and not is_ls_word(w):
                    continue
                heapq.heappush(self.heap, (len(w), w, self.seq, x, y, len(u), len(mid), len(tail)))
                self.seq += 1
        del fa, fb

    def run(self):
        while self.heap:
            if self.steps >= self.step_bound:
                break
            _, w, _, x, y, lu, lm, lt = heapq.heappop(self.heap)
            if x not in self.active or y not in self.active:
                continue
            self.steps += 1
            f, g = self.active[x], self.active[y]
            fw, gw = f.leading_word(), g.leading_word()
            u, mid, tail = fw[:lu], fw[lu:], gw[lm:]
            _, comp = _intersection(f, g, u, mid, tail)
            if self._too_dotted(w):
                if comp:
                    self.parked.append(comp.monic())
                continue
            rem = normal_form(comp, self._sorted())
            if rem:
                log.debug("witness %s adds %s", w, rem)
                self.add(rem)

    def pending_degree(self):
        alive = [e[0] for e in self.heap if e[3] in self.active and e[4] in self.active]
        return min(alive) if alive else None


def complete(
    relations: Iterable[Poly],
    flavor: str | None = None,
    degree_bound: int | None = None,
    step_bound: int = 100_000,
    alphabet=None,
    max_dotted: int | None = None,
) -> GsbState:
    """Degree-bounded completion of ``relations`` to a GSB.

    Witnesses are processed by ``(degree, word, insertion order)``.  Running
    out of ``step_bound`` is not an error: the state then reports the largest
    degree below every pending witness in ``complete_up_to``.

    With ``max_dotted`` set, relations and compositions whose leading word has
    more dotted letters are parked instead of joining the basis; this is exact
    for queries of dotted degree ``<= max_dotted`` when every relation is
    homogeneous in the dotted letters.
    """
    rels = list(relations)
    for r in rels:
        if not isinstance(r, Poly):
            raise InvalidInput(f"not a polynomial: {r!r}")
        if not r:
            raise InvalidInput("zero relation in input")
    if rels:
        flavor = flavor or flavor_of(rels[0])
        alphabet = alphabet or rels[0].alphabet
        for r in rels:
            if flavor_of(r) != flavor:
                raise InvalidInput("relations of mixed flavor")
            if r.alphabet != alphabet:
                raise InvalidInput("relations over different alphabets")
    if flavor is None or alphabet is None:
        raise InvalidInput("flavor and alphabet are required for an empty relation list")
    if max_dotted is not None:
        for r in rels:
            if len(r.dotted_degrees()) > 1:
                raise InvalidInput(f"parking needs relations homogeneous in dotted letters: {r}")
    if degree_bound is None:
        degree_bound = max([2 * r.degree() for r in rels], default=1)
    if degree_bound < 1:
        raise InvalidInput("degree bound must be positive")

    run = _Completion(flavor, alphabet, degree_bound, step_bound, max_dotted)
    for r in sorted(rels, key=lambda p: (deglex_key(p.leading_word()), str(p))):
        run.add(r.monic())
    run.run()
    pending = run.pending_degree()
    upto = degree_bound if pending is None else min(degree_bound, pending - 1)
    return GsbState(
        flavor=flavor,
        alphabet=alphabet,
        relations=run._sorted(),
        degree_bound=degree_bound,
        step_bound=step_bound,
        complete_up_to=upto,
        max_dotted=max_dotted,
        parked=run.parked,
        deferred=run.deferred,
        steps=run.steps,
    )


# -- reduced words ----------------------------------------------------------------

def _assoc_reduced(letters, forbidden, max_deg):
    out = []
    level = [()]
    for _ in range(max_deg):
        nxt = []
        for w in level:
            for a in letters:
                x = w + (a,)
                if any(len(v) <= len(x) and x[len(x) - len(v):] == v for v in forbidden):
                    continue
                nxt.append(x)
        out.extend(nxt)
        level = nxt
    return out


def enumerate_reduced(S: GsbState, max_deg: int, filter: Callable[[Word], bool] | None = None) -> list[Word]:
    """S-reduced basis words of degree <= ``max_deg`` in deg-lex order.

    Requires the state to be certified complete at least up to ``max_deg``.
    """
    if S.complete_up_to < max_deg:
        raise BasisNotCertified(
            f"basis requested to degree {max_deg} but completion is certified only to {S.complete_up_to}"
        )
    forbidden = S.leading_words()
    letters = sorted(S.alphabet.letters())
    if S.flavor == LIE:
        words = [w for w in enumerate_ls_words(letters, max_deg) if not any(contains(w, v) for v in forbidden)]
    else:
        words = _assoc_reduced(letters, forbidden, max_deg)
    if filter is not None:
        words = [w for w in words if filter(w)]
    words.sort(key=deglex_key)
    return words
