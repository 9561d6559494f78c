"""Complement of a simple linear pattern.

``complement(sig, p)`` returns a finite pattern set whose ground instances
are exactly the canonical terms that are *not* instances of p.  The
algorithm works position by position:

  * a hole with a determined label at position i contributes, for each such
    i, a fresh hole with that label flipped and every other label relaxed
    to u;
  * an abstraction recurses under the binder;
  * a rigid spine contributes one member per *other* head of matching
    target type (applied to fresh universal arguments), plus, for each
    argument position, the same head with that argument complemented and
    the rest universal.

Completeness needs every constant and parameter type to be positively
embedded (all-strict chains over all-u chains); other signatures are
rejected, since no finite pattern set can describe such complements.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .syntax import (Arrow, Const, EVar, Label, Lam, Phi, Signature, Term,
                     Var, arrow_chain, evar_names, fresh_name, make_arrows,
                     make_spine, print_type, spine)
from .patterns import (PreconditionViolated, SimpleLinearPattern,
                       embedding_violations, validate_pattern)


def not_label(k: Label) -> Optional[Label]:
    """Flip a determined label; undefined (None) on u."""
    return {Label.ONE: Label.ZERO, Label.ZERO: Label.ONE}.get(k)


def not_phi_i(phi: Phi, i: int) -> Optional[Phi]:
    """Flip position i (1-based) of a labeled variable list and relax every
    other position to u; undefined (None) if position i is not determined."""
    if not 1 <= i <= len(phi):
        raise ValueError(f"position {i} out of range for {len(phi)} arguments")
    flipped = not_label(phi[i - 1][1])
    if flipped is None:
        return None
    return tuple((x, flipped if j == i - 1 else Label.U)
                 for j, (x, _) in enumerate(phi))


class ComplementRule(Enum):
    FLEX = "flex"
    UNDER_BINDER = "under-binder"
    DIFFERENT_HEAD = "different-head"
    ARGUMENT = "argument"


@dataclass(frozen=True)
class ComplementRuleTag:
    rule: ComplementRule
    index: Optional[int] = None  # flipped phi position / complemented argument
    head: Optional[str] = None   # replacement head name


class _FreshNames:
    def __init__(self, prefix, taken=()):
        self.prefix = prefix
        self.taken = set(taken)
        self.i = 0

    def fresh(self) -> str:
        while True:
            self.i += 1
            name = f"{self.prefix}{self.i}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _universal_at(a, scope, supply, avoid):
    """The pattern matching every canonical term of (negatively embedded)
    type a over scope: eta-long all-u binders over an all-u hole."""
    doms, base = arrow_chain(a)
    inner = list(scope)
    binders = []
    for dom, k in doms:
        if k is not Label.U:
            raise PreconditionViolated(
                f"type {print_type(a)} is not negatively embedded")
        y = fresh_name("y", avoid | {x for x, _ in inner})
        binders.append((y, dom))
        inner.append((y, dom))
    phi = tuple((x, Label.U) for x, _ in inner)
    ety = make_arrows([(t, Label.U) for _, t in inner], base)
    t: Term = EVar(supply.fresh(), ety, phi)
    for y, dom in reversed(binders):
        t = Lam(y, Label.U, dom, t)
    return t


def complement_tagged(sig: Signature, p: SimpleLinearPattern):
    """Complement members paired with the rule that produced each."""
    bad = embedding_violations(sig, p.psi)
    if bad:
        name, ty = bad[0]
        raise PreconditionViolated(
            f"complement needs a positively embedded signature/context; "
            f"{name} : {print_type(ty)} is not")
    supply = _FreshNames("H", taken=evar_names(p.term))
    avoid = {name for name, _ in sig.decls}

    def heads(scope):
        for name, ty in sig.constants():
            yield Const(name), ty
        for name, ty in scope:
            yield Var(name), ty

    def neg(scope, t, ty):
        if isinstance(t, EVar):
            out = []
            for i in range(1, len(t.args) + 1):
                phi2 = not_phi_i(t.args, i)
                if phi2 is None:
                    continue
                ety = make_arrows([(dict(scope)[x], k) for x, k in phi2], ty)
                out.append((EVar(supply.fresh(), ety, phi2),
                            ComplementRuleTag(ComplementRule.FLEX, index=i)))
            return out
        if isinstance(t, Lam):
            inner = neg(scope + [(t.var, t.domty)], t.body, ty.cod)
            return [(Lam(t.var, Label.U, t.domty, n),
                     ComplementRuleTag(ComplementRule.UNDER_BINDER))
                    for n, _ in inner]
        head, args = spine(t)
        if isinstance(head, Const):
            hty = sig.const_type(head.name)
        else:
            hty = dict(scope)[head.name]
        doms, _ = arrow_chain(hty)
        out = []
        for g, gty in heads(scope):
            if g == head:
                continue
            gdoms, gbase = arrow_chain(gty)
            if gbase != ty:
                continue
            spine_args = [(_universal_at(dom, scope, supply, avoid), Label.ONE)
                          for dom, _ in gdoms]
            out.append((make_spine(g, spine_args),
                        ComplementRuleTag(ComplementRule.DIFFERENT_HEAD,
                                          head=g.name)))
        for i, (arg, _) in enumerate(args):
            for n, _ in neg(scope, arg, doms[i][0]):
                spine_args = [
                    (n if j == i else _universal_at(doms[j][0], scope, supply, avoid),
                     Label.ONE)
                    for j in range(len(args))]
                out.append((make_spine(head, spine_args),
                            ComplementRuleTag(ComplementRule.ARGUMENT, index=i + 1)))
        return out

    return neg(list(p.psi), p.term, p.type)


def complement(sig: Signature, p: SimpleLinearPattern):
    """The pattern set of canonical terms that are not instances of p.

    Requires a positively embedded signature and context (raises
    PreconditionViolated otherwise; no finite pattern set exists there).
    """
    from .algebra import make_pattern_set
    members = [validate_pattern(p.psi, sig, t, p.type).term
               for t, _ in complement_tagged(sig, p)]
    return make_pattern_set(p.psi, p.type, members)


def make_exclusive(sig: Signature, s):
    """Resolve every u label inside every member's EVars into both 1 and 0,
    producing a set with pairwise disjoint members (each ground term matches
    at most one), and drop duplicates."""
    from .algebra import make_pattern_set

    def evars_of(t):
        match t:
            case EVar(_, _, _):
                return [t]
            case Lam(_, _, _, body):
                return evars_of(body)
            case (Const(_) | Var(_)):
                return []
        return evars_of(t.fun) + evars_of(t.arg)

    def replace(t, mapping, supply):
        match t:
            case EVar(name, ty, args):
                if name not in mapping:
                    return t
                phi = mapping[name]
                doms, base = arrow_chain(ty)
                ety = make_arrows([(d, k) for (d, _), (_, k) in zip(doms, phi)], base)
                return EVar(supply.fresh(), ety, phi)
            case Lam(x, k, a, body):
                return Lam(x, k, a, replace(body, mapping, supply))
            case (Const(_) | Var(_)):
                return t
        return type(t)(replace(t.fun, mapping, supply),
                       replace(t.arg, mapping, supply), t.label)

    from itertools import product
    taken = set()
    for t in s.members:
        taken |= evar_names(t)
    supply = _FreshNames("H", taken=taken)
    out = []
    for t in s.members:
        evs = evars_of(t)
        slots = [(e.name, j) for e in evs
                 for j, (_, k) in enumerate(e.args) if k is Label.U]
        for bits in product((Label.ONE, Label.ZERO), repeat=len(slots)):
            assign = dict(zip(slots, bits))
            mapping = {
                e.name: tuple((x, assign.get((e.name, j), k))
                              for j, (x, k) in enumerate(e.args))
                for e in evs}
            out.append(replace(t, mapping, supply))
    return make_pattern_set(s.psi, s.type, out)
