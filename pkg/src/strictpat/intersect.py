"""Intersection (unification) of simple linear patterns.

Linearity makes unification decidable without substitutions: the common
instances of two patterns over the same context and type form a finite
pattern set, computed structurally.

  * hole vs hole: meet the label lists pointwise (1 and 0 clash);
  * hole vs rigid spine: distribute the hole's strict variables over the
    argument positions in every possible way (a strict *parameter head*
    pays for itself), pairing fresh holes with the arguments;
  * rigid vs rigid: heads must agree, arguments intersect pointwise;
  * abstractions recurse under a shared binder.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .syntax import (App, Arrow, Const, EVar, Label, Lam, Phi, Signature,
                     Term, Var, all_var_names, arrow_chain, evar_names,
                     fresh_name, make_arrows, make_spine, rename_free_var,
                     spine)
from .patterns import PreconditionViolated, SimpleLinearPattern, validate_pattern
from .complement import _FreshNames


def label_meet(k1: Label, k2: Label) -> Optional[Label]:
    """Greatest lower bound of two labels; 1 and 0 are incompatible (None)."""
    if {k1, k2} == {Label.ONE, Label.ZERO}:
        return None
    if Label.ONE in (k1, k2):
        return Label.ONE
    if Label.ZERO in (k1, k2):
        return Label.ZERO
    return Label.U


def meet_phi(phi1: Phi, phi2: Phi) -> Optional[Phi]:
    """Pointwise meet of two labeled variable lists over the same variables
    in the same order; None when incompatible."""
    if [x for x, _ in phi1] != [x for x, _ in phi2]:
        raise ValueError("labeled variable lists cover different variables")
    out = []
    for (x, k1), (_, k2) in zip(phi1, phi2):
        k = label_meet(k1, k2)
        if k is None:
            return None
        out.append((x, k))
    return tuple(out)


@dataclass(frozen=True)
class Splitting:
    parts: tuple  # one phi per premise, all over the input's variables


def enumerate_splittings(phi: Phi, n: int, head: Optional[str] = None) -> list:
    """All distributions of phi's strict variables over n premises.

    0-labeled variables stay 0 everywhere and u-labeled stay u; each strict
    variable goes strict into exactly one premise (u elsewhere) — except a
    strict head parameter, which is paid by the head occurrence itself and
    relaxes to u everywhere.  For s distributable strict variables this
    yields n^s splittings; with n = 0 the single empty splitting survives
    iff no strict variable other than the head remains."""
    strict_vars = [x for x, k in phi if k is Label.ONE and x != head]
    if strict_vars and n == 0:
        return []
    out = []
    for assignment in product(range(n), repeat=len(strict_vars)):
        owner = dict(zip(strict_vars, assignment))
        parts = []
        for i in range(n):
            part = []
            for x, k in phi:
                if k is Label.ONE and x in owner:
                    part.append((x, Label.ONE if owner[x] == i else Label.U))
                elif k is Label.ONE:
                    part.append((x, Label.U))  # strict head parameter
                else:
                    part.append((x, k))
            parts.append(tuple(part))
        out.append(Splitting(tuple(parts)))
    return out


def rename_apart(p: SimpleLinearPattern, taken) -> SimpleLinearPattern:
    """Rename p's EVars away from the given names (non-colliding names are
    kept)."""
    taken = set(taken)
    used = set(taken) | set(evar_names(p.term))

    def go(t):
        match t:
            case EVar(name, ty, args):
                if name not in taken:
                    return t
                name2 = fresh_name(name, used)
                used.add(name2)
                return EVar(name2, ty, args)
            case Lam(x, k, a, body):
                return Lam(x, k, a, go(body))
            case App(f, a, k):
                return App(go(f), go(a), k)
            case _:
                return t

    return SimpleLinearPattern(go(p.term), p.psi, p.type)


def intersect(sig: Signature, p1: SimpleLinearPattern,
              p2: SimpleLinearPattern):
    """The pattern set of common instances of p1 and p2.

    Pre: same context and type, disjoint EVar names (rename_apart first).
    """
    from .algebra import make_pattern_set
    if p1.psi != p2.psi or p1.type != p2.type:
        raise PreconditionViolated("patterns must share context and type")
    shared = evar_names(p1.term) & evar_names(p2.term)
    if shared:
        raise PreconditionViolated(
            f"EVar names shared between the patterns: {', '.join(sorted(shared))}; "
            f"rename_apart first")
    supply = _FreshNames("H", taken=evar_names(p1.term) | evar_names(p2.term))

    def head_type(scope, head):
        if isinstance(head, Const):
            return sig.const_type(head.name)
        return dict(scope)[head.name]

    def flex_rigid(scope, phi, t, ty):
        """Members of (fresh hole with labels phi) meet t, at type ty."""
        if isinstance(ty, Arrow):
            # t is an abstraction (patterns are canonical); the hole
            # eta-expands, absorbing the binder undetermined
            x, body = t.var, t.body
            inner = flex_rigid(scope + [(x, t.domty)], phi + ((x, Label.U),),
                               body, ty.cod)
            return [Lam(x, Label.U, t.domty, n) for n in inner]
        if isinstance(t, EVar):
            m = meet_phi(phi, t.args)
            if m is None:
                return []
            ety = make_arrows([(dict(scope)[x], k) for x, k in m], ty)
            return [EVar(supply.fresh(), ety, m)]
        head, args = spine(t)
        if isinstance(head, Var) and dict(phi)[head.name] is Label.ZERO:
            # a rigid occurrence of the head is strict in it, which an
            # irrelevant hole can never cover
            return []
        doms, _ = arrow_chain(head_type(scope, head))
        out = []
        hname = head.name if isinstance(head, Var) else None
        for splitting in enumerate_splittings(phi, len(args), head=hname):
            per_arg = [flex_rigid(scope, part, arg, dom)
                       for part, (arg, _), (dom, _)
                       in zip(splitting.parts, args, doms)]
            for combo in product(*per_arg):
                out.append(make_spine(head, [(c, Label.ONE) for c in combo]))
        return out

    def meet(scope, t1, t2, ty):
        if isinstance(t1, EVar) and isinstance(t2, EVar):
            assert t1.name != t2.name, "flex/flex with a shared EVar"
            m = meet_phi(t1.args, t2.args)
            if m is None:
                return []
            ety = make_arrows([(dict(scope)[x], k) for x, k in m], ty)
            return [EVar(supply.fresh(), ety, m)]
        if isinstance(t1, EVar):
            return flex_rigid(scope, t1.args, t2, ty)
        if isinstance(t2, EVar):
            return flex_rigid(scope, t2.args, t1, ty)
        if isinstance(ty, Arrow):
            x1, x2 = t1.var, t2.var
            b1, b2 = t1.body, t2.body
            scope_names = {n for n, _ in scope}
            if x1 == x2:
                z = x1
            elif x1 not in all_var_names(b2) and x1 not in scope_names:
                z, b2 = x1, rename_free_var(b2, x2, x1)
            else:
                z = fresh_name(x1, all_var_names(b1) | all_var_names(b2)
                               | scope_names)
                b1 = rename_free_var(b1, x1, z)
                b2 = rename_free_var(b2, x2, z)
            inner = meet(scope + [(z, t1.domty)], b1, b2, ty.cod)
            return [Lam(z, Label.U, t1.domty, n) for n in inner]
        h1, args1 = spine(t1)
        h2, args2 = spine(t2)
        if h1 != h2:
            return []
        doms, _ = arrow_chain(head_type(scope, h1))
        per_arg = [meet(scope, a1, a2, dom)
                   for (a1, _), (a2, _), (dom, _) in zip(args1, args2, doms)]
        out = []
        for combo in product(*per_arg):
            out.append(make_spine(h1, [(c, Label.ONE) for c in combo]))
        return out

    members = [validate_pattern(p1.psi, sig, t, p1.type).term
               for t in meet(list(p1.psi), p1.term, p2.term, p1.type)]
    return make_pattern_set(p1.psi, p1.type, members)
