"""Finite pattern sets and their boolean algebra, with a ground-term
enumeration oracle.

Pattern sets over a shared context and type are closed under intersection
(pairwise), complement (fold intersection over member complements) and
relative complement; union is literal.  ``enumerate_ground`` streams every
canonical EVar-free term up to a size bound in a deterministic order, which
``extensional_eq`` uses to compare sets by their ground instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (Arrow, Atom, EVar, Const, Label, Lam, Signature, Term,
                     Type, Var, arrow_chain, evar_names, fresh_name,
                     make_arrows, make_spine, term_size)
from .typecheck import occurrences
from .patterns import (PreconditionViolated, SimpleLinearPattern,
                       equal_mod_evar_renaming, match_ground, validate_pattern)
from .complement import _FreshNames, complement
from .intersect import intersect, rename_apart


@dataclass(frozen=True)
class PatternSet:
    psi: tuple
    type: Type
    members: tuple  # elaborated pattern Terms, EVar names globally distinct

    def pattern(self, i: int) -> SimpleLinearPattern:
        return SimpleLinearPattern(self.members[i], self.psi, self.type)

    def patterns(self):
        return [self.pattern(i) for i in range(len(self.members))]


def make_pattern_set(psi, a: Type, terms) -> PatternSet:
    """Normalize: drop duplicates (up to alpha and EVar renaming) and make
    EVar names globally distinct across members."""
    psi = tuple(psi)
    out, used = [], set()
    for t in terms:
        if any(equal_mod_evar_renaming(t, u) for u in out):
            continue
        clash = sorted(evar_names(t) & used)
        if clash:
            p = rename_apart(SimpleLinearPattern(t, psi, a), used)
            t = p.term
        used |= evar_names(t)
        out.append(t)
    return PatternSet(psi, a, tuple(out))


def parse_pattern_set(psi, sig: Signature, a: Type, texts) -> PatternSet:
    from .syntax import parse_term
    return make_pattern_set(
        psi, a, [validate_pattern(psi, sig, parse_term(s, sig), a).term
                 for s in texts])


def universal_pattern(psi, a: Type, avoid=(), name: str | None = None) -> Term:
    """The pattern every canonical term of type a matches: eta-long all-u
    binders over a hole applied undetermined to everything in scope.  Only
    types whose arrows are all undetermined admit one."""
    doms, base = arrow_chain(a)
    inner = list(psi)
    binders = []
    avoid = set(avoid) | {x for x, _ in psi}
    for dom, k in doms:
        if k is not Label.U:
            raise PreconditionViolated(
                "the universal pattern exists only at all-u arrow types")
        x = fresh_name("x", avoid)
        avoid.add(x)
        binders.append((x, dom))
        inner.append((x, dom))
    phi = tuple((x, Label.U) for x, _ in inner)
    ety = make_arrows([(t, Label.U) for _, t in inner], base)
    t: Term = EVar(name or "H1", ety, phi)
    for x, dom in reversed(binders):
        t = Lam(x, Label.U, dom, t)
    return t


def _require_same_space(s1: PatternSet, s2: PatternSet):
    if s1.psi != s2.psi or s1.type != s2.type:
        raise PreconditionViolated("pattern sets must share context and type")


def set_union(s1: PatternSet, s2: PatternSet) -> PatternSet:
    _require_same_space(s1, s2)
    return make_pattern_set(s1.psi, s1.type, s1.members + s2.members)


def set_intersect(sig: Signature, s1: PatternSet, s2: PatternSet) -> PatternSet:
    """Union of the pairwise member intersections (EVars renamed apart)."""
    _require_same_space(s1, s2)
    out = []
    for t1 in s1.members:
        p1 = SimpleLinearPattern(t1, s1.psi, s1.type)
        for t2 in s2.members:
            p2 = rename_apart(SimpleLinearPattern(t2, s2.psi, s2.type),
                              evar_names(t1))
            out.extend(intersect(sig, p1, p2).members)
    return make_pattern_set(s1.psi, s1.type, out)


def set_complement(sig: Signature, s: PatternSet) -> PatternSet:
    """Fold member complements with set intersection; the complement of the
    empty set is the singleton universal pattern."""
    if not s.members:
        sig_names = {name for name, _ in sig.decls}
        return make_pattern_set(
            s.psi, s.type, [universal_pattern(s.psi, s.type, avoid=sig_names)])
    result = None
    for i in range(len(s.members)):
        c = complement(sig, s.pattern(i))
        result = c if result is None else set_intersect(sig, result, c)
    return result


def relative_complement(sig: Signature, s1: PatternSet,
                        s2: PatternSet) -> PatternSet:
    """Instances of s1 that are not instances of s2."""
    _require_same_space(s1, s2)
    return set_intersect(sig, s1, set_complement(sig, s2))


def member_set(sig: Signature, m: Term, s: PatternSet) -> bool:
    """Does the ground term m match some member of s?"""
    return any(match_ground(s.psi, sig, m, p) for p in s.patterns())


# ---------------------------------------------------------------------------
# Ground enumeration

@dataclass(frozen=True)
class GroundEnumeration:
    psi: tuple
    type: Type
    depth: int
    terms: tuple

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


def enumerate_ground(psi, sig: Signature, a: Type, depth: int) -> GroundEnumeration:
    """Every canonical EVar-free term of type a over psi with size <= depth,
    sizes ascending, heads in declaration order (signature first, then
    context, then binders)."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    psi = tuple(psi)
    sig_names = {name for name, _ in sig.decls}

    def exact(scope, ty, size):
        if size < 1:
            return
        if isinstance(ty, Arrow):
            x = fresh_name("x", sig_names | {n for n, _ in scope})
            env = dict(scope)
            env[x] = ty.dom
            for body in exact(scope + [(x, ty.dom)], ty.cod, size - 1):
                if ty.label is not Label.U:
                    _, strict, used = occurrences(env, sig, body)
                    if ty.label is Label.ONE and x not in strict:
                        continue
                    if ty.label is Label.ZERO and x in used:
                        continue
                yield Lam(x, ty.label, ty.dom, body)
            return
        heads = [(Const(n), t) for n, t in sig.constants()]
        heads += [(Var(n), t) for n, t in scope]
        for head, hty in heads:
            doms, base = arrow_chain(hty)
            if base != ty:
                continue
            for args in exact_args(scope, doms, size - 1):
                yield make_spine(head, args)

    def exact_args(scope, doms, budget):
        if not doms:
            if budget == 0:
                yield ()
            return
        (dom, k), rest = doms[0], doms[1:]
        for first_size in range(1, budget - len(rest) + 1):
            for first in exact(scope, dom, first_size):
                for more in exact_args(scope, rest, budget - first_size):
                    yield ((first, k), *more)

    terms = []
    for size in range(1, depth + 1):
        terms.extend(exact(list(psi), a, size))
    return GroundEnumeration(psi, a, depth, tuple(terms))


def extensional_eq(sig: Signature, s1: PatternSet, s2: PatternSet,
                   depth: int) -> bool:
    """Do s1 and s2 have the same ground instances up to the size bound?"""
    _require_same_space(s1, s2)
    for m in enumerate_ground(s1.psi, sig, s1.type, depth):
        if member_set(sig, m, s1) != member_set(sig, m, s2):
            return False
    return True


# ---------------------------------------------------------------------------
# Clause complement

@dataclass(frozen=True)
class Clause:
    name: str
    pred: str
    pattern: SimpleLinearPattern


def clause_complement(sig: Signature, clauses) -> list:
    """Negate a cover: clauses n1..nk for predicate non_<pred> whose heads
    jointly match exactly the terms no input clause head matches."""
    clauses = list(clauses)
    if not clauses:
        raise ValueError("no clauses given")
    preds = {c.pred for c in clauses}
    if len(preds) > 1:
        raise ValueError(f"clauses mix predicates: {', '.join(sorted(preds))}")
    psi, a = clauses[0].pattern.psi, clauses[0].pattern.type
    for c in clauses:
        if c.pattern.psi != psi or c.pattern.type != a:
            raise PreconditionViolated("clause heads must share context and type")
    s = make_pattern_set(psi, a, [c.pattern.term for c in clauses])
    comp = set_complement(sig, s)
    pred = preds.pop()
    return [Clause(f"n{i + 1}", f"non_{pred}", comp.pattern(i))
            for i in range(len(comp.members))]


def pattern_sets_equal(s1: PatternSet, s2: PatternSet) -> bool:
    """Structural equality: same members up to order, alpha, and EVar
    renaming (not extensional equality)."""
    if s1.psi != s2.psi or s1.type != s2.type or \
            len(s1.members) != len(s2.members):
        return False
    remaining = list(s2.members)
    for t in s1.members:
        for i, u in enumerate(remaining):
            if equal_mod_evar_renaming(t, u):
                del remaining[i]
                break
        else:
            return False
    return True
