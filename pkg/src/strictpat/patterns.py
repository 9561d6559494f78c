"""Simple linear patterns and the embedding of simply-typed terms.

A simple linear fully-applied pattern is a canonical term in which

  * every abstraction is undetermined (``\\x^u``),
  * every rigid application is strict (``@1``) and matches the head's type,
  * every EVar sits at base type, occurs exactly once, and is applied to
    *all* variables in scope, in standard order (context order, then binder
    nesting order), with arbitrary labels.

The embedding translates simply-typed signatures, contexts and canonical
terms into this fragment: ``(A -> B)+ = A- ->1 B+`` and
``(A -> B)- = A+ ->u B-``, constants positively, abstractions to ``\\x^u``,
applications to ``@1``, EVar arguments to ``^u``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (App, Arrow, Atom, Const, EVar, Label, Lam, Phi,
                     Signature, Term, Type, Var, ZonedContext, all_var_names,
                     arrow_chain, evar_names, free_vars, fresh_name,
                     make_arrows, make_spine, print_term, print_type,
                     rename_free_var, spine)
from .typecheck import TypingError, check


class PatternError(Exception):
    pass


class NotSimple(PatternError):
    pass


class NotLinear(PatternError):
    pass


class NotCanonical(PatternError):
    pass


class PreconditionViolated(PatternError):
    pass


# ---------------------------------------------------------------------------
# The embedding

def embed_type(a: Type, polarity: str = "+") -> Type:
    """Embed a label-free simple type; positive occurrences get strict
    arrows, negative ones undetermined arrows."""
    if polarity not in ("+", "-"):
        raise ValueError(f"polarity must be '+' or '-', got {polarity!r}")
    if isinstance(a, Atom):
        return a
    if a.label is not Label.U:
        raise ValueError("embed_type expects a label-free type")
    if polarity == "+":
        return Arrow(embed_type(a.dom, "-"), Label.ONE, embed_type(a.cod, "+"))
    return Arrow(embed_type(a.dom, "+"), Label.U, embed_type(a.cod, "-"))


def embed_signature(sig: Signature) -> Signature:
    return Signature(tuple((name, ty if ty is None else embed_type(ty, "+"))
                           for name, ty in sig.decls))


def embed_context(ctx) -> tuple:
    return tuple((x, embed_type(a, "+")) for x, a in ctx)


def _plain_type(env, sig, m):
    """Annotation-determined simple type of a label-free term; None if the
    term cannot carry one."""
    match m:
        case Var(x):
            return env.get(x)
        case Const(c):
            return sig.const_type(c)
        case Lam(x, _, a, body):
            bty = _plain_type({**env, x: a}, sig, body)
            return None if bty is None else Arrow(a, Label.U, bty)
        case App(f, _, _):
            fty = _plain_type(env, sig, f)
            return fty.cod if isinstance(fty, Arrow) else None
        case EVar(_, _, _):
            return None
    raise TypeError(f"not a term: {m!r}")


def embed_term(m: Term, psi, sig: Signature, a: Type | None = None) -> Term:
    """Embed a canonical simply-typed term (label-free input) at type a.

    psi and sig are the simply-typed (label-free) context and signature; the
    type is inferred when omitted.  Raises NotCanonical if m is not a
    canonical term of type a.
    """
    env = dict(psi)
    if a is None:
        a = _plain_type(env, sig, m)
        if a is None:
            raise NotCanonical("cannot infer the term's type; pass it explicitly")
    return _embed(env, sig, m, a)


def _embed(env, sig, m, a):
    if isinstance(a, Arrow):
        if a.label is not Label.U:
            raise ValueError("embed_term expects a label-free type")
        if not isinstance(m, Lam):
            raise NotCanonical(f"{print_term(m)} is not an abstraction "
                               f"at type {print_type(a)}")
        if m.domty != a.dom:
            raise NotCanonical(f"binder annotation {print_type(m.domty)} does not "
                               f"match domain {print_type(a.dom)}")
        return Lam(m.var, Label.U, embed_type(a.dom, "+"),
                   _embed({**env, m.var: a.dom}, sig, m.body, a.cod))
    head, args = spine(m)
    if isinstance(head, EVar):
        if args:
            raise NotCanonical(f"EVar {head.name} applied outside its bracket list")
        doms = []
        for x, _ in head.args:
            if x not in env:
                raise NotCanonical(f"EVar argument {x} not in scope")
            doms.append((embed_type(env[x], "+"), Label.U))
        return EVar(head.name, make_arrows(doms, a),
                    tuple((x, Label.U) for x, _ in head.args))
    if isinstance(head, Var):
        hty = env.get(head.name)
        if hty is None:
            raise NotCanonical(f"unbound variable {head.name}")
    elif isinstance(head, Const):
        hty = sig.const_type(head.name)
        if hty is None:
            raise NotCanonical(f"unknown constant {head.name}")
    else:
        raise NotCanonical("beta redex")
    out = head
    for arg, _ in args:
        if not isinstance(hty, Arrow):
            raise NotCanonical(f"over-applied head {print_term(head)}")
        out = App(out, _embed(env, sig, arg, hty.dom), Label.ONE)
        hty = hty.cod
    if hty != a:
        raise NotCanonical(f"spine has type {print_type(hty)}, "
                           f"expected {print_type(a)}")
    return out


def is_positively_embedded(a: Type) -> bool:
    """Is a of the form B1 ->1 ... ->1 Bm ->1 base with each Bi negatively
    embedded (all-u arrows over positively embedded domains)?"""
    doms, _ = arrow_chain(a)
    return all(k is Label.ONE and is_negatively_embedded(d) for d, k in doms)


def is_negatively_embedded(a: Type) -> bool:
    doms, _ = arrow_chain(a)
    return all(k is Label.U and is_positively_embedded(d) for d, k in doms)


def embedding_violations(sig: Signature, psi) -> list:
    """Constants/parameters whose types are not positively embedded.

    The complement operation is complete only over such signatures; anything
    else must be rejected."""
    bad = [(name, ty) for name, ty in sig.constants()
           if not is_positively_embedded(ty)]
    bad += [(x, a) for x, a in psi if not is_positively_embedded(a)]
    return bad


# ---------------------------------------------------------------------------
# Pattern validation

@dataclass(frozen=True)
class SimpleLinearPattern:
    term: Term  # elaborated: every EVar carries its full type
    psi: tuple  # ((name, Type), ...)
    type: Type


def validate_pattern(psi, sig: Signature, term: Term, a: Type) -> SimpleLinearPattern:
    """Check simplicity/linearity/full application and elaborate EVar types."""
    psi = tuple(psi)
    seen_psi = set()
    for x, _ in psi:
        if sig.has(x):
            raise NotSimple(f"context variable {x} shadows a signature constant")
        if x in seen_psi:
            raise NotSimple(f"context variable {x} declared twice")
        seen_psi.add(x)
    evars_seen = set()

    def val(scope, t, ty):
        if isinstance(ty, Arrow):
            if ty.label is not Label.U:
                raise NotSimple(f"pattern type has a determined arrow ->{ty.label}")
            if not isinstance(t, Lam):
                raise NotSimple(f"{print_term(t)} is not an abstraction "
                                f"at type {print_type(ty)}")
            if t.label is not Label.U:
                raise NotSimple(f"abstraction \\{t.var}^{t.label} must be ^u")
            if t.domty != ty.dom:
                raise NotSimple(f"binder annotation {print_type(t.domty)} does not "
                                f"match domain {print_type(ty.dom)}")
            if any(t.var == x for x, _ in scope) or sig.has(t.var):
                raise NotSimple(f"binder {t.var} shadows an enclosing declaration")
            return Lam(t.var, Label.U, t.domty,
                       val(scope + [(t.var, t.domty)], t.body, ty.cod))
        head, args = spine(t)
        if isinstance(head, EVar):
            if args:
                raise NotSimple(f"EVar {head.name} applied outside its bracket list")
            if head.name in evars_seen:
                raise NotLinear(f"EVar {head.name} occurs more than once")
            evars_seen.add(head.name)
            expected = [x for x, _ in scope]
            got = [x for x, _ in head.args]
            if got != expected:
                raise NotSimple(
                    f"EVar {head.name} must be applied to all variables in scope "
                    f"in standard order ({', '.join(expected) or 'none'}), "
                    f"got ({', '.join(got)})")
            ety = make_arrows([(dict(scope)[x], k) for x, k in head.args], ty)
            return EVar(head.name, ety, head.args)
        if isinstance(head, Var):
            hty = dict(scope).get(head.name)
            if hty is None:
                raise NotSimple(f"unbound variable {head.name}")
        elif isinstance(head, Const):
            hty = sig.const_type(head.name)
            if hty is None:
                raise NotSimple(f"unknown constant {head.name}")
        else:
            raise NotSimple("beta redex in pattern")
        out = head
        for arg, k in args:
            if k is not Label.ONE:
                raise NotSimple(f"rigid application @{k} must be @1")
            if not isinstance(hty, Arrow):
                raise NotSimple(f"over-applied head {print_term(head)}")
            if hty.label is not Label.ONE:
                raise NotSimple(f"head applied @1 across a ->{hty.label} arrow")
            out = App(out, val(scope, arg, hty.dom), Label.ONE)
            hty = hty.cod
        if hty != ty:
            raise NotSimple(f"pattern has type {print_type(hty)}, "
                            f"expected {print_type(ty)}")
        return out

    return SimpleLinearPattern(val(list(psi), term, a), psi, a)


def fully_apply(psi, sig: Signature, term: Term, a: Type) -> SimpleLinearPattern:
    """Insert the missing scope variables (label 0) into every EVar and
    normalize argument order, then validate.  EVars already fully applied
    keep their names; completed ones get a primed fresh name."""
    taken = set(evar_names(term))

    def go(scope, t):
        match t:
            case Lam(x, k, ty, body):
                return Lam(x, k, ty, go(scope + [x], body))
            case App(f, arg, k):
                return App(go(scope, f), go(scope, arg), k)
            case EVar(name, _, args):
                amap = dict(args)
                if len(amap) != len(args):
                    raise NotSimple(f"EVar {name} repeats an argument")
                for x in amap:
                    if x not in scope:
                        raise NotSimple(f"EVar argument {x} not in scope")
                full = tuple((x, amap.get(x, Label.ZERO)) for x in scope)
                if full == args:
                    return t
                name2 = fresh_name(name + "'", taken)
                taken.add(name2)
                return EVar(name2, None, full)
            case _:
                return t

    term2 = go([x for x, _ in psi], term)
    return validate_pattern(psi, sig, term2, a)


# ---------------------------------------------------------------------------
# Ground instance matching

@dataclass(frozen=True)
class PhiZoning:
    """The zoned context a labeled variable list induces: u-labeled
    variables become unrestricted, 0-labeled irrelevant, 1-labeled strict."""

    phi: Phi
    context: ZonedContext


def phi_zoning(phi: Phi, types: dict) -> PhiZoning:
    g = tuple((x, types[x]) for x, k in phi if k is Label.U)
    o = tuple((x, types[x]) for x, k in phi if k is Label.ZERO)
    d = tuple((x, types[x]) for x, k in phi if k is Label.ONE)
    return PhiZoning(phi, ZonedContext(g, o, d))


def match_ground(psi, sig: Signature, m: Term, p: SimpleLinearPattern) -> bool:
    """Is the ground term m an instance of p?  m must be canonical at p.type.

    At an EVar the candidate subterm is typechecked under the zoning the
    EVar's labels induce; the structural cases walk abstractions and rigid
    spines in parallel.  Linearity makes a consistency table unnecessary.
    """
    if tuple(psi) != p.psi:
        raise ValueError("psi does not match the pattern's context")

    def go(types, m, t, ty):
        if isinstance(t, EVar):
            _, base = arrow_chain(t.type)
            try:
                check(phi_zoning(t.args, types).context, sig, m, base)
                return True
            except TypingError:
                return False
        if isinstance(t, Lam):
            if not (isinstance(m, Lam) and m.label is t.label and m.domty == t.domty):
                return False
            mb, tb, x = m.body, t.body, t.var
            if m.var != x:
                if x in all_var_names(m.body) or x in types:
                    x = fresh_name(x, all_var_names(m.body) | all_var_names(t.body)
                                   | set(types))
                    tb = rename_free_var(tb, t.var, x)
                mb = rename_free_var(mb, m.var, x)
            return go({**types, x: t.domty}, mb, tb, ty.cod)
        thead, targs = spine(t)
        mhead, margs = spine(m)
        if mhead != thead or len(margs) != len(targs):
            return False
        if isinstance(thead, Const):
            hty = sig.const_type(thead.name)
        else:
            hty = types[thead.name]
        for (marg, mk), (targ, _) in zip(margs, targs):
            if mk is not Label.ONE or not go(types, marg, targ, hty.dom):
                return False
            hty = hty.cod
        return True

    return go(dict(psi), m, p.term, p.type)


# ---------------------------------------------------------------------------
# Equality up to EVar renaming (for deduplication and golden comparisons)

def equal_mod_evar_renaming(t1: Term, t2: Term) -> bool:
    """Alpha-equality that additionally matches EVar names by a bijection."""
    fwd, bwd = {}, {}

    def go(a, b, env_a, env_b, depth):
        match a, b:
            case (Var(x), Var(y)):
                ia, ib = env_a.get(x), env_b.get(y)
                return x == y if ia is None and ib is None else ia == ib
            case (Const(x), Const(y)):
                return x == y
            case (Lam(x, k1, ty1, b1), Lam(y, k2, ty2, b2)):
                if k1 != k2 or ty1 != ty2:
                    return False
                return go(b1, b2, {**env_a, x: depth}, {**env_b, y: depth}, depth + 1)
            case (App(f1, a1, k1), App(f2, a2, k2)):
                return k1 == k2 and go(f1, f2, env_a, env_b, depth) and \
                    go(a1, a2, env_a, env_b, depth)
            case (EVar(n1, _, args1), EVar(n2, _, args2)):
                if fwd.get(n1, n2) != n2 or bwd.get(n2, n1) != n1:
                    return False
                if len(args1) != len(args2):
                    return False
                for (x, k), (y, l) in zip(args1, args2):
                    if k != l:
                        return False
                    ia, ib = env_a.get(x), env_b.get(y)
                    if ia is None and ib is None:
                        if x != y:
                            return False
                    elif ia != ib:
                        return False
                fwd[n1], bwd[n2] = n2, n1
                return True
            case _:
                return False

    return go(t1, t2, {}, {}, 0)
