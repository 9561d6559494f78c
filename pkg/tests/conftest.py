"""Shared signatures, pattern corpora, and enumeration helpers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from strictpat import (App, Arrow, Atom, Const, Label, Lam, Term, Var,
                       enumerate_ground, fully_apply, parse_context,
                       parse_signature, parse_term, parse_type)

LABELS = (Label.ONE, Label.ZERO, Label.U)

LAM_SIG = parse_signature("""
exp : type.
lam : (exp ->u exp) ->1 exp.
app : exp ->1 exp ->1 exp.
""")

PLAIN_LAM_SIG = parse_signature("""
exp : type.
lam : (exp -> exp) -> exp.
app : exp -> exp -> exp.
""", labeled=False)

A_SIG = parse_signature("a : type.")

# not positively embedded: the ->u constant puts complements out of reach
AB_SIG = parse_signature("a : type. b : a. c : a ->u a.")

STRICT_SIG = parse_signature("a : type. b : a. c : a ->1 a ->1 a.")

ORACLE_SIG = parse_signature("a : type. c : a.")

EXP = Atom("exp")
A = Atom("a")


def pat(sig, ctx_text, type_text, pattern_text):
    """Parse and fully apply a pattern over a textual context."""
    psi = parse_context(ctx_text, sig)
    a = parse_type(type_text, sig)
    return fully_apply(psi, sig, parse_term(pattern_text, sig), a)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    sig: object
    ctx: str
    type: str
    text: str

    @property
    def pattern(self):
        return pat(self.sig, self.ctx, self.type, self.text)

    @property
    def psi(self):
        return parse_context(self.ctx, self.sig)

    @property
    def a(self):
        return parse_type(self.type, self.sig)


BETA_REDEX = r"app @1 (lam @1 (\x^u:exp. E[x^u])) @1 F[]"
ETA_REDEX = r"lam @1 (\x^u:exp. app @1 E'[x^0] @1 x)"


def complement_corpus():
    """Simple linear patterns over positively embedded signatures."""
    e = []

    def add(name, sig, ctx, ty, text):
        e.append(CorpusEntry(name, sig, ctx, ty, text))

    add("flex-0-1", A_SIG, "x:a, y:a", "a", "E[x^0, y^1]")
    add("flex-u-1", A_SIG, "x:a, y:a", "a", "E[x^u, y^1]")
    add("flex-1-1", A_SIG, "x:a, y:a", "a", "E[x^1, y^1]")
    add("flex-0-0", A_SIG, "x:a, y:a", "a", "E[x^0, y^0]")
    add("flex-u-u", A_SIG, "x:a, y:a", "a", "E[x^u, y^u]")
    add("flex-strict", A_SIG, "x:a", "a", "E[x^1]")
    add("flex-vacuous", A_SIG, "x:a", "a", "E[x^0]")
    add("var-head", A_SIG, "x:a, y:a", "a", "x")
    add("beta-redex", LAM_SIG, "", "exp", BETA_REDEX)
    add("eta-redex", LAM_SIG, "", "exp", ETA_REDEX)
    add("lam-any", LAM_SIG, "", "exp", r"lam @1 (\x^u:exp. E[x^u])")
    add("lam-const", LAM_SIG, "", "exp", r"lam @1 (\x^u:exp. E[x^0])")
    add("lam-strict", LAM_SIG, "", "exp", r"lam @1 (\x^u:exp. E[x^1])")
    add("identity", LAM_SIG, "", "exp", r"lam @1 (\x^u:exp. x)")
    add("app-any", LAM_SIG, "", "exp", "app @1 E[] @1 F[]")
    add("open-strict", LAM_SIG, "x:exp", "exp", "E[x^1]")
    add("open-vacuous", LAM_SIG, "x:exp", "exp", "E[x^0]")
    add("open-app", LAM_SIG, "x:exp", "exp", "app @1 E[x^u] @1 x")
    add("pair-ground", STRICT_SIG, "", "a", "c @1 b @1 b")
    add("pair-any", STRICT_SIG, "", "a", "c @1 E[] @1 F[]")
    add("pair-open", STRICT_SIG, "x:a", "a", "c @1 E[x^1] @1 F[x^u]")
    add("pair-var", STRICT_SIG, "x:a", "a", "c @1 x @1 E[x^0]")
    return e


@lru_cache(maxsize=None)
def ground(sig, psi, a, depth):
    return tuple(enumerate_ground(psi, sig, a, depth))


def ground_for(entry: CorpusEntry, depth: int):
    return ground(entry.sig, entry.psi, entry.a, depth)


def raw_terms(max_nodes: int):
    """Every term buildable from leaves x, y, c, binders \\z^k:a, and
    labeled applications, with at most max_nodes AST nodes.  Includes
    ill-typed terms and redexes; feeds the typing oracle cross-check."""
    leaves = [Var("x"), Var("y"), Const("c")]
    by_size: dict[int, list[Term]] = {1: leaves}

    def at(n):
        if n not in by_size:
            out = []
            for k in LABELS:
                out.extend(Lam("z", k, A, b) for b in at(n - 1))
            for i in range(1, n - 1):
                for f in at(i):
                    for arg in at(n - 1 - i):
                        out.extend(App(f, arg, k) for k in LABELS)
            by_size[n] = out
        return by_size[n]

    for n in range(1, max_nodes + 1):
        yield from at(n)


ORACLE_FUN = Arrow(A, Label.ONE, Arrow(A, Label.ONE, A))
ORACLE_PROBES = (A, Arrow(A, Label.ONE, A), ORACLE_FUN)


def oracle_contexts():
    from strictpat import ZonedContext
    return (
        ZonedContext(delta=(("x", ORACLE_FUN), ("y", A))),
        ZonedContext(gamma=(("y", A),), omega=(("x", A),)),
        ZonedContext(gamma=(("x", Arrow(A, Label.ZERO, A)),),
                     delta=(("y", A),)),
    )


def det_outcome(ctx, sig, m):
    """(inferred type | None, accepted?) for the occurrence-analysis check."""
    from strictpat import TypingError, check, occurrences
    try:
        t, _, _ = occurrences(ctx.flat(), sig, m)
    except TypingError:
        return None, False
    try:
        check(ctx, sig, m, t)
        return t, True
    except TypingError:
        return t, False


def oracle_disagreements(max_nodes, contexts=None, limit=5):
    """Terms where the deterministic and declarative checkers disagree."""
    from strictpat import check_declarative
    bad = []
    for ctx in contexts or oracle_contexts():
        for m in raw_terms(max_nodes):
            t, det_ok = det_outcome(ctx, ORACLE_SIG, m)
            if t is None:
                if any(check_declarative(ctx, ORACLE_SIG, m, p)
                       for p in ORACLE_PROBES):
                    bad.append((ctx, m, "declarative accepts a rejected term"))
            else:
                if check_declarative(ctx, ORACLE_SIG, m, t) != det_ok:
                    bad.append((ctx, m, "verdicts differ at the inferred type"))
                wrong = ORACLE_PROBES[0] if t != ORACLE_PROBES[0] \
                    else ORACLE_PROBES[1]
                if check_declarative(ctx, ORACLE_SIG, m, wrong):
                    bad.append((ctx, m, "declarative accepts a wrong type"))
            if len(bad) >= limit:
                return bad
    return bad


def generate_redexes(rng, count):
    """Well-typed beta-redexes (lam z^k. body) @k arg over the lam/app
    signature, with the binder condition satisfied by construction."""
    from strictpat import ZonedContext, check
    ctx = ZonedContext(gamma=(("x", EXP),))
    psi2 = (("x", EXP), ("z", EXP))
    bodies = ground(LAM_SIG, psi2, EXP, 6)
    args = ground(LAM_SIG, (("x", EXP),), EXP, 5)
    by_label = {Label.ONE: [], Label.ZERO: [], Label.U: list(bodies)}
    for b in bodies:
        report = check(ZonedContext(gamma=psi2), LAM_SIG, b, EXP)
        if "z" in report.strict_set:
            by_label[Label.ONE].append(b)
        if "z" not in report.used_set:
            by_label[Label.ZERO].append(b)
    out = []
    while len(out) < count:
        k = rng.choice(LABELS)
        body = rng.choice(by_label[k])
        redex = App(Lam("z", k, EXP, body), rng.choice(args), k)
        out.append((ctx, redex, EXP))
    return out


def strip_labels(m: Term) -> Term:
    """Forget all occurrence labels (the label-free image of a term)."""
    match m:
        case Lam(x, _, domty, body):
            return Lam(x, Label.U, strip_type(domty), strip_labels(body))
        case App(f, a, _):
            return App(strip_labels(f), strip_labels(a), Label.U)
        case _:
            return m


def strip_type(a):
    match a:
        case Arrow(dom, _, cod):
            return Arrow(strip_type(dom), Label.U, strip_type(cod))
        case _:
            return a
