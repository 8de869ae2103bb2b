"""Command line front end: ``trigsb COMMAND PROBLEM [options]``.

Exit codes: 0 success (or member), 1 non-member / verification failed,
2 inconclusive, 64 usage error, 65 bad input data, 66 missing input file.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from .envelopes import (
    InvalidTable,
    MultTable,
    minus_compositions,
    minus_state,
    pbw_basis_minus,
    perp_state,
    present_minus,
    present_perp,
    reduced_counts,
    tensor_count,
    validate_table,
    verify_perp_gsb,
)
from .gsb import CacheError, GsbState, InvalidInput, normal_form
from .lyndon import format_nls
from .replication import Membership, ModeError, build_state, encode, free_basis, member
from .textio import ParseError, ProblemFile, parse_problem
from .words import deglex_key, format_word

EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="trigsb", description="Ideal membership and bases for free di-/tri-algebras via GSB.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def cmd(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("problem", help="problem file ('-' for stdin)")
        p.add_argument("--max-deg", type=int, default=None, help="degree bound for completion")
        p.add_argument("--max-steps", type=int, default=100_000, help="composition step budget")
        p.add_argument("--cache", default=None, help="GSB cache file to read or write")
        return p

    cmd("complete", "compute the GSB of the encoded relations (cached in --cache, default PROBLEM.gsb)")
    cmd("member", "decide membership of --target").add_argument("--target", required=True)
    cmd("nf", "normal form of the encoded --target").add_argument("--target", required=True)
    cmd("basis", "reduced basis monomials up to --max-deg")
    cmd("env-perp", "Lie tri-algebra envelope of the Lie table")
    cmd("env-assoc", "associative tri-algebra envelope of the Lie tri-algebra table")
    cmd("oracle-member", "membership by brute-force linear algebra").add_argument("--target", required=True)
    cmd("oracle-dim", "dimensions of the free algebra (and quotient) by degree")
    return ap


def read_problem(path: str) -> ProblemFile:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_problem(text)


def _flavor(pf):
    return "lie" if pf.variety == "lie" else "assoc"


def _source(pf) -> str:
    body = "\n".join([pf.variety, pf.mode, " > ".join(pf.gens)] + [str(r) for r in pf.rels])
    return hashlib.sha256(body.encode()).hexdigest()[:16]


def fmt_mono(w, alphabet, flavor) -> str:
    return format_nls(w, alphabet) if flavor == "lie" else format_word(w, alphabet)


def header(pf, state=None, extra=()) -> list[str]:
    out = [f"# variety {pf.variety}, mode {pf.mode}, gens {' > '.join(pf.gens)}"]
    if state is not None:
        out.append(f"# degree_bound {state.degree_bound}, complete_up_to {state.complete_up_to}")
    out.extend(f"# {x}" for x in extra)
    return out


def get_state(pf, args, need: int) -> GsbState:
    """Completed state, from ``--cache`` when it is compatible and certified far enough."""
    bound = args.max_deg if args.max_deg is not None else need
    bound = max(bound, need)
    src = _source(pf)
    alphabet = pf.alphabet()
    max_dotted = 1 if pf.mode == "di" else None
    if args.cache and os.path.exists(args.cache):
        try:
            with open(args.cache, encoding="utf-8") as fh:
                st = GsbState.from_text(fh.read())
            if (
                st.source == src
                and st.alphabet == alphabet
                and st.flavor == _flavor(pf)
                and st.max_dotted == max_dotted
                and st.complete_up_to >= need
            ):
                return st
        except (CacheError, ParseError, ValueError) as e:
            print(f"trigsb: ignoring cache {args.cache}: {e}", file=sys.stderr)
    st = build_state(pf.rels, pf.gens, pf.variety, pf.mode, bound, args.max_steps)
    st.source = src
    if args.cache:
        with open(args.cache, "w", encoding="utf-8") as fh:
            fh.write(st.to_text())
    return st


def _rel_degree(pf) -> int:
    A = pf.alphabet()
    return max((encode(r, A, pf.variety).degree() for r in pf.rels), default=1)


def run_complete(pf, args):
    if args.cache is None and args.problem != "-":
        args.cache = args.problem + ".gsb"
    need = args.max_deg if args.max_deg is not None else 2 * _rel_degree(pf)
    st = get_state(pf, args, need)
    extra = [f"parked {len(st.parked)}"] if pf.mode == "di" else []
    if not st.is_complete:
        extra.append("step budget exhausted before the degree bound")
    lines = header(pf, st, extra)
    if args.cache:
        lines.insert(2, f"# cache {args.cache}")
    lines += [str(r) for r in sorted(st.relations, key=lambda r: deglex_key(r.leading_word()))]
    return lines, 0


def _target(pf, args):
    tgt = pf.parse_target(args.target)
    return tgt, encode(tgt, pf.alphabet(), pf.variety)


def run_member(pf, args):
    tgt, enc = _target(pf, args)
    need = max(enc.degree() + _rel_degree(pf), 1)
    st = get_state(pf, args, need)
    res = member(pf.rels, tgt, pf.gens, pf.variety, pf.mode, state=st)
    lines = header(pf, st, [f"target {tgt}", f"encoded {enc}", f"normal form {res.normal_form}"])
    lines.append(res.status.value)
    code = {Membership.MEMBER: 0, Membership.NON_MEMBER: 1, Membership.INCONCLUSIVE: 2}[res.status]
    return lines, code


def run_nf(pf, args):
    tgt, enc = _target(pf, args)
    st = get_state(pf, args, max(enc.degree(), 1))
    nf = normal_form(enc, st)
    return header(pf, st, [f"target {tgt}", f"encoded {enc}"]) + [str(nf)], 0


def run_basis(pf, args):
    if args.max_deg is None:
        raise UsageError("basis needs --max-deg")
    st = get_state(pf, args, args.max_deg)
    if st.complete_up_to < args.max_deg:
        return header(pf, st, [f"basis not certified up to degree {args.max_deg}"]), 2
    words = free_basis(pf.rels, pf.gens, pf.variety, pf.mode, args.max_deg, state=st)
    return header(pf, st) + [fmt_mono(w, st.alphabet, st.flavor) for w in words], 0


def _table(pf) -> MultTable:
    if pf.table is None:
        raise UsageError("this command needs a 'table' block")
    try:
        return MultTable.from_spec(pf.table)
    except InvalidTable as e:
        raise ParseError(str(e)) from None


def _counts_line(name, counts) -> str:
    return f"# {name} " + " ".join(f"{n}:{c}" for n, c in sorted(counts.items()))


def run_env_perp(pf, args):
    T = _table(pf)
    rep = validate_table(T, "lie")
    if not rep:
        return [f"# invalid Lie table: {rep.message}"], EX_DATAERR
    d = args.max_deg or 4
    P = present_perp(T)
    ok = verify_perp_gsb(P, d)
    st = perp_state(P, d)
    A = P.alphabet
    lines = [f"# Lie table, dim {T.dim}", f"# gsb verified up to degree {d}: {'yes' if ok else 'no'}"]
    lines.append(_counts_line("reduced words by degree", reduced_counts(st, min(d, 4))))
    lines.append(_counts_line("with a dotted letter", reduced_counts(st, min(d, 4), lambda w: A.dotted_degree(w) >= 1)))
    lines += P.relation_lines()
    return lines, 0 if ok else 1


def run_env_assoc(pf, args):
    T = _table(pf)
    rep = validate_table(T, "tri_lie")
    if not rep:
        return [f"# invalid Lie tri-algebra table: {rep.message}"], EX_DATAERR
    d = args.max_deg or 4
    P = present_minus(T)
    crep = minus_compositions(P, d)
    lines = [
        f"# Lie tri-algebra table, dim {T.dim}",
        "# X1 " + " ".join(P.x1),
        "# X0 " + " ".join(P.x0),
        f"# compositions checked {crep.checked}, all trivial up to degree {d}: {'yes' if crep.ok else 'no'}",
    ]
    if crep.ok:
        P.verified_up_to = d
        pbw = pbw_basis_minus(P, d)
        st = minus_state(P, d)
        A = P.alphabet
        lines.append(_counts_line("pbw words by degree", pbw.counts))
        lines.append(_counts_line("reduced words by degree", reduced_counts(st, d, lambda w: A.dotted_degree(w) >= 1)))
        lines.append(_counts_line("tensor count by degree", {n: tensor_count(n, len(P.x1), T.dim) for n in range(1, d + 1)}))
    lines += P.relation_lines()
    return lines, 0 if crep.ok else 1


def run_oracle_member(pf, args):
    from .oracle import member_oracle

    if args.max_deg is None:
        raise UsageError("oracle-member needs --max-deg")
    tgt, enc = _target(pf, args)
    ok = member_oracle(pf.rels, tgt, pf.variety, pf.mode, args.max_deg, gens=pf.gens)
    lines = header(pf, None, [f"target {tgt}", f"encoded {enc}", f"truncation degree {args.max_deg}"])
    lines.append("member" if ok else "non-member")
    return lines, 0 if ok else 1


def run_oracle_dim(pf, args):
    from .oracle import free_monomials, ideal_in_V, ideal_span

    if args.max_deg is None:
        raise UsageError("oracle-dim needs --max-deg")
    D = args.max_deg
    mons = free_monomials(pf.mode, pf.variety, pf.gens, D)
    free = {n: sum(1 for w in mons if len(w) == n) for n in range(1, D + 1)}
    lines = header(pf, None, [f"truncation degree {D}", "degree free quotient(filtered)"])
    for n in range(1, D + 1):
        total = sum(free[k] for k in range(1, n + 1))
        if pf.mode == "plain":
            span = ideal_span(encode_all(pf), pf.variety, n, pf.alphabet())
            sub = span.dimension()
        else:
            sub = len(ideal_in_V(pf.rels, pf.gens, pf.variety, pf.mode, n))
        lines.append(f"{n} {free[n]} {total - sub}")
    return lines, 0


def encode_all(pf):
    A = pf.alphabet()
    return [encode(r, A, pf.variety) for r in pf.rels]


COMMANDS = {
    "complete": run_complete,
    "member": run_member,
    "nf": run_nf,
    "basis": run_basis,
    "env-perp": run_env_perp,
    "env-assoc": run_env_assoc,
    "oracle-member": run_oracle_member,
    "oracle-dim": run_oracle_dim,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        pf = read_problem(args.problem)
        lines, code = COMMANDS[args.command](pf, args)
    except FileNotFoundError as e:
        print(f"trigsb: {e}", file=sys.stderr)
        return EX_NOINPUT
    except UsageError as e:
        print(f"trigsb: {e}", file=sys.stderr)
        return EX_USAGE
    except (ParseError, ModeError, InvalidInput, InvalidTable, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"trigsb: {msg}", file=sys.stderr)
        return EX_DATAERR
    sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
