"""Command-line interface.

Subcommands mirror the library: check (zoned typing), canon, not, meet,
diff, member, enum, embed, negate, eq, and selftest.  Output is
deterministic; pattern-set results print one member per line in
lexicographic order of the printed form.  Exit codes: 0 success (or a true
answer), 1 for a false/ill-typed answer (check, member, eq), 2 for usage,
parse, or validation errors.  An empty result set is not an error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .syntax import (Atom, ParseError, Signature, ZonedContext, parse_context,
                     parse_program, parse_signature, parse_term, parse_type,
                     print_term, print_type)
from .typecheck import TypingError, check, strict_splits
from .canonicalize import NonTerminating, canonicalize
from .patterns import (PatternError, SimpleLinearPattern, embed_term,
                       embed_type, fully_apply, validate_pattern)
from .complement import complement, make_exclusive
from .intersect import intersect, rename_apart
from .algebra import (Clause, clause_complement, enumerate_ground,
                      make_pattern_set, member_set, pattern_sets_equal,
                      relative_complement, set_complement, set_intersect)
from .syntax import evar_names


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_sig(args) -> Signature:
    return parse_signature(_read(args.sig), labeled=not getattr(args, "_plain", False))


def _load_ctx(args, sig):
    text = args.ctx or ""
    return parse_context(text, sig, labeled=not getattr(args, "_plain", False))


def _sorted_members(s):
    return sorted(print_term(t) for t in s.members)


def _pattern(psi, sig, text, a) -> SimpleLinearPattern:
    return fully_apply(psi, sig, parse_term(text, sig), a)


def _parse_set_file(path, sig, args):
    """A set file: optional ``ctx:`` / ``type:`` header lines, then one
    pattern per line; ``%`` starts a comment."""
    ctx_text, type_text, pattern_lines = args.ctx, args.type, []
    for raw in _read(path).splitlines():
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ctx:"):
            ctx_text = line[len("ctx:"):].strip()
        elif line.startswith("type:"):
            type_text = line[len("type:"):].strip()
        else:
            pattern_lines.append(line)
    if type_text is None:
        raise ParseError(f"{path}: no type (add a 'type:' header or pass --type)")
    psi = parse_context(ctx_text or "", sig)
    a = parse_type(type_text, sig)
    members = [_pattern(psi, sig, line, a).term for line in pattern_lines]
    return make_pattern_set(psi, a, members)


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_check(args, out):
    sig = _load_sig(args)
    a = parse_type(args.type, sig)
    ctx = ZonedContext(parse_context(args.gamma or "", sig),
                       parse_context(args.omega or "", sig),
                       parse_context(args.delta or "", sig))
    m = parse_term(args.term, sig)
    try:
        report = check(ctx, sig, m, a)
    except TypingError as e:
        out.append(f"ill-typed: {e}")
        return 1
    out.append(f"type: {print_type(report.inferred_type)}")
    out.append("strict: " + " ".join(sorted(report.strict_set)))
    out.append("used: " + " ".join(sorted(report.used_set)))
    return 0


def _cmd_canon(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    m = parse_term(args.term, sig)
    if not evar_names(m):
        check(ZonedContext(gamma=tuple(psi)), sig, m, a)
    out.append(print_term(canonicalize(psi, sig, m, a)))
    return 0


def _cmd_not(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    s = complement(sig, _pattern(psi, sig, args.pattern, a))
    if args.exclusive:
        s = make_exclusive(sig, s)
    out.extend(_sorted_members(s))
    return 0


def _cmd_meet(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    p1 = _pattern(psi, sig, args.pattern1, a)
    p2 = rename_apart(_pattern(psi, sig, args.pattern2, a),
                      evar_names(p1.term))
    out.extend(_sorted_members(intersect(sig, p1, p2)))
    return 0


def _cmd_diff(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    s1 = make_pattern_set(psi, a, [_pattern(psi, sig, args.pattern1, a).term])
    s2 = make_pattern_set(psi, a, [_pattern(psi, sig, args.pattern2, a).term])
    out.extend(_sorted_members(relative_complement(sig, s1, s2)))
    return 0


def _cmd_member(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    m = parse_term(args.term, sig)
    s = make_pattern_set(psi, a,
                         [_pattern(psi, sig, p, a).term for p in args.patterns])
    ok = member_set(sig, m, s)
    out.append("true" if ok else "false")
    return 0 if ok else 1


def _cmd_enum(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    for t in enumerate_ground(psi, sig, a, args.depth):
        out.append(print_term(t))
    return 0


def _cmd_embed(args, out):
    args._plain = True
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    m = parse_term(args.term, sig, labeled=False)
    a = parse_type(args.type, sig, labeled=False) if args.type else None
    out.append(print_term(embed_term(m, psi, sig, a)))
    return 0


def _cmd_negate(args, out):
    sig = _load_sig(args)
    psi = _load_ctx(args, sig)
    a = parse_type(args.type, sig)
    clauses = [Clause(name, pred, _pattern(psi, sig, print_term(t), a))
               for name, pred, t in parse_program(_read(args.program), sig)]
    neg = clause_complement(sig, clauses)
    printed = sorted(print_term(c.pattern.term) for c in neg)
    pred = neg[0].pred if neg else None
    for i, text in enumerate(printed):
        out.append(f"n{i + 1} : {pred} {text}.")
    return 0


def _cmd_eq(args, out):
    sig = _load_sig(args)
    s1 = _parse_set_file(args.set1, sig, args)
    s2 = _parse_set_file(args.set2, sig, args)
    if s1.psi != s2.psi or s1.type != s2.type:
        raise PatternError("the two sets have different contexts or types")
    for m in enumerate_ground(s1.psi, sig, s1.type, args.depth):
        in1, in2 = member_set(sig, m, s1), member_set(sig, m, s2)
        if in1 != in2:
            side = "first" if in1 else "second"
            out.append(f"different at depth {args.depth}: "
                       f"{print_term(m)} only in the {side} set")
            return 1
    out.append(f"equal at depth {args.depth}")
    return 0


# ---------------------------------------------------------------------------
# Self-test

_LAM_SIG = """
exp : type.
lam : (exp ->u exp) ->1 exp.
app : exp ->1 exp ->1 exp.
"""

_PLAIN_LAM_SIG = """
exp : type.
lam : (exp -> exp) -> exp.
app : exp -> exp -> exp.
"""


def _selftest_cases():
    sig_a = parse_signature("a : type.")
    A = Atom("a")
    sig = parse_signature(_LAM_SIG)
    EXP = Atom("exp")

    def golden_not(name, sigx, ctx_text, pat, expected):
        def run():
            psi = parse_context(ctx_text, sigx)
            got = complement(sigx, _pattern(psi, sigx, pat, A if sigx is sig_a else EXP))
            want = make_pattern_set(psi, got.type,
                                    [_pattern(psi, sigx, e, got.type).term
                                     for e in expected])
            return pattern_sets_equal(got, want)
        return name, run

    cases = [
        golden_not("complement of E[x^0, y^1]", sig_a, "x:a, y:a",
                   "E[x^0, y^1]", ["F[x^1, y^u]", "G[x^u, y^0]"]),
        golden_not("complement of E[x^u, y^1]", sig_a, "x:a, y:a",
                   "E[x^u, y^1]", ["F[x^u, y^0]"]),
        golden_not("complement of a beta-redex pattern", sig, "",
                   r"app @1 (lam @1 (\x^u:exp. E[x^u])) @1 F[]",
                   [r"lam @1 (\x^u:exp. Z[x^u])",
                    r"app @1 (app @1 Z1[] @1 Z2[]) @1 Z3[]"]),
        golden_not("complement of an eta-redex pattern", sig, "",
                   r"lam @1 (\x^u:exp. app @1 E[x^0] @1 x)",
                   [r"lam @1 (\x^u:exp. app @1 Z[x^1] @1 Z'[x^u])",
                    r"lam @1 (\x^u:exp. app @1 Z[x^u] @1 (app @1 Z'[x^u] @1 Z''[x^u]))",
                    r"lam @1 (\x^u:exp. app @1 Z[x^u] @1 (lam @1 (\y^u:exp. Z'[x^u, y^u])))",
                    r"lam @1 (\x^u:exp. lam @1 (\y^u:exp. Z[x^u, y^u]))",
                    r"lam @1 (\x^u:exp. x)",
                    r"app @1 Z[] @1 Z'[]"]),
    ]

    def strict_intersection():
        sigc = parse_signature("a : type. c : a ->1 a ->1 a.")
        psi = parse_context("x:a", sigc)
        got = intersect(sigc, _pattern(psi, sigc, "E[x^1]", A),
                        _pattern(psi, sigc, "c @1 F[x^u] @1 F'[x^u]", A))
        want = make_pattern_set(psi, A, [
            _pattern(psi, sigc, "c @1 H[x^1] @1 H'[x^u]", A).term,
            _pattern(psi, sigc, "c @1 H[x^u] @1 H'[x^1]", A).term])
        return pattern_sets_equal(got, want)
    cases.append(("intersection distributes a strict variable", strict_intersection))

    def param_head_intersection():
        sig_b = parse_signature("a : type.")
        psi = parse_context("y : a ->1 a ->1 a", sig_b)
        empty = intersect(sig_b, _pattern(psi, sig_b, "E[y^0]", A),
                          _pattern(psi, sig_b, "y @1 F[y^1] @1 F'[y^u]", A))
        one = intersect(sig_b, _pattern(psi, sig_b, "E[y^1]", A),
                        _pattern(psi, sig_b, "y @1 F[y^1] @1 F'[y^0]", A))
        want = make_pattern_set(psi, A,
                                [_pattern(psi, sig_b, "y @1 H[y^1] @1 H'[y^0]", A).term])
        return empty.members == () and pattern_sets_equal(one, want)
    cases.append(("intersection at a parameter head", param_head_intersection))

    def negate_program():
        prog = (r"betardx : isredx app @1 (lam @1 (\x^u:exp. E[x^u])) @1 F[]." "\n"
                r"etardx : isredx lam @1 (\x^u:exp. app @1 E'[x^0] @1 x).")
        clauses = [Clause(n, p, _pattern((), sig, print_term(t), EXP))
                   for n, p, t in parse_program(prog, sig)]
        neg = clause_complement(sig, clauses)
        return len(neg) == 6 and all(c.pred == "non_isredx" for c in neg)
    cases.append(("two-clause program negates to six clauses", negate_program))

    def contraction():
        sig2 = parse_signature("a : type. b : type.")
        ctx = ZonedContext(delta=(("x", parse_type("a ->1 a ->1 b", sig2)),
                                  ("y", Atom("a"))))
        m = parse_term("x @1 y @1 y", sig2)
        check(ctx, sig2, m, Atom("b"))
        outcomes = [ok for _, _, ok in strict_splits(ctx, sig2, m, Atom("b"))]
        return outcomes == [True, True, False, False]
    cases.append(("contraction uses exactly two strict splits", contraction))

    def membership_oracle():
        sig_u = parse_signature("a : type. b : a. c : a ->u a.")
        psi = parse_context("x:a", sig_u)
        s = make_pattern_set(psi, A, [_pattern(psi, sig_u, "E[x^0]", A).term])
        en = [print_term(t) for t in enumerate_ground(psi, sig_u, A, 2)]
        return en == ["b", "x", "c @u b", "c @u x"] and \
            member_set(sig_u, parse_term("b", sig_u), s) and \
            not member_set(sig_u, parse_term("x", sig_u), s)
    cases.append(("ground enumeration and membership", membership_oracle))

    def rejection():
        sig_u = parse_signature("a : type. b : a. c : a ->u a.")
        psi = parse_context("x:a", sig_u)
        try:
            complement(sig_u, _pattern(psi, sig_u, "E[x^0]", A))
        except PatternError:
            return True
        return False
    cases.append(("complement rejects a non-embedded signature", rejection))

    def embedding():
        ty = embed_type(parse_type("(exp -> exp) -> exp", labeled=False), "+")
        if print_type(ty) != "(exp ->u exp) ->1 exp":
            return False
        plain = parse_signature(_PLAIN_LAM_SIG, labeled=False)
        k = parse_term(r"lam (\x:exp. lam (\y:exp. x))", plain, labeled=False)
        got = embed_term(k, (), plain)
        want = parse_term(r"lam @1 (\x^u:exp. lam @1 (\y^u:exp. x))", sig)
        return got == want
    cases.append(("embedding of types and terms", embedding))

    def exclusive():
        psi = parse_context("x:a, y:a", sig_a)
        s = make_pattern_set(psi, A, [
            _pattern(psi, sig_a, "F[x^1, y^u]", A).term,
            _pattern(psi, sig_a, "G[x^u, y^0]", A).term])
        got = make_exclusive(sig_a, s)
        want = make_pattern_set(psi, A, [
            _pattern(psi, sig_a, "F[x^1, y^1]", A).term,
            _pattern(psi, sig_a, "G[x^1, y^0]", A).term,
            _pattern(psi, sig_a, "H[x^0, y^0]", A).term])
        return pattern_sets_equal(got, want)
    cases.append(("exclusive form resolves undetermined labels", exclusive))

    def complement_is_exhaustive():
        psi = parse_context("x:exp", sig)
        p = _pattern(psi, sig, r"lam @1 (\y^u:exp. E[x^1, y^u])", EXP)
        s = make_pattern_set(psi, EXP, [p.term])
        c = complement(sig, p)
        for m in enumerate_ground(psi, sig, EXP, 5):
            if member_set(sig, m, s) == member_set(sig, m, c):
                return False
        return True
    cases.append(("complement splits ground terms exactly", complement_is_exhaustive))

    return cases


def _cmd_selftest(args, out):
    failed = 0
    for name, run in _selftest_cases():
        try:
            ok = run()
        except Exception as e:  # a crash is a failure, keep testing
            ok = False
            out.append(f"FAIL {name} ({type(e).__name__}: {e})")
        else:
            out.append(("ok   " if ok else "FAIL ") + name)
        if not ok:
            failed += 1
    total = len(_selftest_cases())
    out.append(f"{total - failed} passed, {failed} failed")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# Argument parsing

def _build_parser():
    top = argparse.ArgumentParser(
        prog="strictpat",
        description="Pattern complement and intersection for a strict "
                    "lambda-calculus")
    sub = top.add_subparsers(dest="cmd", required=True)

    def add(name, help_, *, sig=True, ctx=True, type_=True, depth=False):
        p = sub.add_parser(name, help=help_)
        if sig:
            p.add_argument("--sig", required=True, metavar="FILE",
                           help="signature file")
        if ctx:
            p.add_argument("--ctx", metavar="CTX", default=None,
                           help="parameter context, e.g. 'x:a, y:a'")
        if type_:
            p.add_argument("--type", metavar="TYPE", default=None)
        if depth:
            p.add_argument("--depth", type=int, required=True, metavar="N")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("check", "zoned typing of a term", ctx=False)
    p.add_argument("--gamma", metavar="CTX", default=None)
    p.add_argument("--omega", metavar="CTX", default=None)
    p.add_argument("--delta", metavar="CTX", default=None)
    p.add_argument("term")

    p = add("canon", "canonical (beta-normal eta-long) form")
    p.add_argument("term")

    p = add("not", "complement of a pattern")
    p.add_argument("--exclusive", action="store_true",
                   help="resolve undetermined labels into a disjoint cover")
    p.add_argument("pattern")

    p = add("meet", "intersection of two patterns")
    p.add_argument("pattern1")
    p.add_argument("pattern2")

    p = add("diff", "instances of the first pattern not matching the second")
    p.add_argument("pattern1")
    p.add_argument("pattern2")

    p = add("member", "does the ground term match any of the patterns")
    p.add_argument("term")
    p.add_argument("patterns", nargs="+", metavar="pattern")

    p = add("enum", "enumerate ground canonical terms", depth=True)

    p = add("embed", "embed a simply-typed term (label-free input)")
    p.add_argument("term")

    p = add("negate", "negate the clause heads of a program")
    p.add_argument("--program", required=True, metavar="FILE")

    p = add("eq", "compare two pattern-set files on ground terms", depth=True)
    p.add_argument("set1", metavar="SETFILE")
    p.add_argument("set2", metavar="SETFILE")

    p = sub.add_parser("selftest", help="run the bundled example suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return top


_HANDLERS = {
    "check": _cmd_check,
    "canon": _cmd_canon,
    "not": _cmd_not,
    "meet": _cmd_meet,
    "diff": _cmd_diff,
    "member": _cmd_member,
    "enum": _cmd_enum,
    "embed": _cmd_embed,
    "negate": _cmd_negate,
    "eq": _cmd_eq,
    "selftest": _cmd_selftest,
}


def run(args) -> int:
    """Execute a parsed invocation; returns the exit code."""
    out: list[str] = []
    try:
        code = _HANDLERS[args.cmd](args, out)
    except (ParseError, PatternError, TypingError, NonTerminating,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(out) if args.format == "json" else "\n".join(out)
    if text:
        print(text)
    return code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
