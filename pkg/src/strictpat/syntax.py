"""Syntax of the strict lambda-calculus.

Abstractions and applications carry occurrence labels:

    labels  k ::= 1 (strict) | 0 (irrelevant) | u (undetermined)
    types   A ::= a | A1 ->k A2
    terms   M ::= c | x | \\x^k:A. M | M1 @k M2 | E[x1^k1, ..., xn^kn]

``E[...]`` is an existential variable (a pattern hole) applied to a labeled
list of distinct in-scope variables.  A label-free input mode (plain ``->``,
``\\x:A.``, juxtaposed application, ``E[x, y]``) is accepted for simply-typed
terms destined for embedding into the labeled calculus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional, Union


class Label(Enum):
    ONE = "1"
    ZERO = "0"
    U = "u"

    @property
    def determined(self) -> bool:
        return self is not Label.U

    def __str__(self):
        return self.value


# ---------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return print_type(self)


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    label: Label
    cod: "Type"

    def __str__(self):
        return print_type(self)


Type = Union[Atom, Arrow]


def arrow_chain(a: Type) -> tuple[list[tuple[Type, Label]], Atom]:
    """Split ``A1 ->k1 ... ->kn a`` into ([(A1, k1), ...], a)."""
    doms = []
    while isinstance(a, Arrow):
        doms.append((a.dom, a.label))
        a = a.cod
    return doms, a


def make_arrows(doms, base: Type) -> Type:
    a = base
    for dom, k in reversed(doms):
        a = Arrow(dom, k, a)
    return a


# ---------------------------------------------------------------------------
# Terms

Phi = tuple  # tuple[tuple[str, Label], ...] -- a labeled variable list


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Lam:
    var: str
    label: Label
    domty: Type
    body: "Term"

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"
    label: Label

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class EVar:
    name: str
    type: Optional[Type]  # elaborated during pattern validation; parser leaves None
    args: Phi

    def __str__(self):
        return print_term(self)


Term = Union[Const, Var, Lam, App, EVar]


class EVarArgHit(Exception):
    """Substitution reached an EVar whose argument list mentions the variable."""


def spine(t: Term) -> tuple[Term, tuple[tuple[Term, Label], ...]]:
    """Decompose ``h @k1 M1 ... @kn Mn`` into (h, ((M1, k1), ...))."""
    args = []
    while isinstance(t, App):
        args.append((t.arg, t.label))
        t = t.fun
    return t, tuple(reversed(args))


def make_spine(head: Term, args) -> Term:
    t = head
    for arg, k in args:
        t = App(t, arg, k)
    return t


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(x):
            return frozenset((x,))
        case Const(_):
            return frozenset()
        case Lam(x, _, _, body):
            return free_vars(body) - {x}
        case App(f, a, _):
            return free_vars(f) | free_vars(a)
        case EVar(_, _, args):
            return frozenset(x for x, _ in args)
    raise TypeError(f"not a term: {t!r}")


def all_var_names(t: Term) -> frozenset[str]:
    """Every variable name appearing in t, free or bound (EVar names excluded)."""
    match t:
        case Var(x):
            return frozenset((x,))
        case Const(_):
            return frozenset()
        case Lam(x, _, _, body):
            return all_var_names(body) | {x}
        case App(f, a, _):
            return all_var_names(f) | all_var_names(a)
        case EVar(_, _, args):
            return frozenset(x for x, _ in args)
    raise TypeError(f"not a term: {t!r}")


def evar_names(t: Term) -> frozenset[str]:
    match t:
        case EVar(name, _, _):
            return frozenset((name,))
        case Lam(_, _, _, body):
            return evar_names(body)
        case App(f, a, _):
            return evar_names(f) | evar_names(a)
        case _:
            return frozenset()


def term_size(t: Term) -> int:
    """Size of a term: binders and spine heads cost 1, arguments add up.

    size(h M1 ... Mn) = 1 + sum(size(Mi)); size(\\x. M) = 1 + size(M).
    """
    match t:
        case Lam(_, _, _, body):
            return 1 + term_size(body)
        case App(f, a, _):
            return term_size(f) + term_size(a)
        case _:
            return 1


def fresh_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def rename_free_var(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of a variable, including EVar argument lists.

    This is an alpha-move: callers must pass a `new` that is fresh for `t`.
    """
    match t:
        case Var(x):
            return Var(new) if x == old else t
        case Const(_):
            return t
        case Lam(x, k, a, body):
            if x == old:
                return t
            if x == new and old in free_vars(body):
                raise ValueError(f"renaming {old} -> {new} would be captured")
            return Lam(x, k, a, rename_free_var(body, old, new))
        case App(f, a, k):
            return App(rename_free_var(f, old, new), rename_free_var(a, old, new), k)
        case EVar(name, ty, args):
            return EVar(name, ty, tuple((new if x == old else x, k) for x, k in args))
    raise TypeError(f"not a term: {t!r}")


def subst(n: Term, x: str, m: Term) -> Term:
    """Capture-avoiding substitution [n/x]m.

    Raises EVarArgHit if m contains an EVar whose argument list mentions x:
    EVar arguments must remain variables, so such a substitution has no
    representation in this syntax.
    """
    if x not in free_vars(m):
        return m
    match m:
        case Var(_):
            return n  # m == Var(x), the only Var with x free
        case App(f, a, k):
            return App(subst(n, x, f), subst(n, x, a), k)
        case Lam(y, k, a, body):
            if y in free_vars(n):
                y2 = fresh_name(y, free_vars(n) | free_vars(body) | {x})
                body = rename_free_var(body, y, y2)
                y = y2
            return Lam(y, k, a, subst(n, x, body))
        case EVar(name, _, _):
            raise EVarArgHit(f"cannot substitute for {x}: argument of EVar {name}")
    raise TypeError(f"not a term: {m!r}")


def alpha_eq(t1: Term, t2: Term) -> bool:
    """Equality up to renaming of bound variables.

    EVars must agree on name, argument labels, and argument identity (up to
    the surrounding binders).
    """

    def go(a, b, env_a, env_b, depth):
        match a, b:
            case (Var(x), Var(y)):
                ia, ib = env_a.get(x), env_b.get(y)
                if ia is None and ib is None:
                    return x == y
                return ia == ib
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
                if n1 != n2 or len(args1) != len(args2):
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
                return True
            case _:
                return False

    return go(t1, t2, {}, {}, 0)


# ---------------------------------------------------------------------------
# Signatures and contexts

@dataclass(frozen=True)
class Signature:
    """Ordered declarations: base types (``a : type.``) and constants."""

    decls: tuple[tuple[str, Optional[Type]], ...]  # None marks a base type

    def __post_init__(self):
        seen = set()
        for name, _ in self.decls:
            if name in seen:
                raise ValueError(f"duplicate signature declaration: {name}")
            seen.add(name)

    @cached_property
    def _table(self):
        return dict(self.decls)

    def has(self, name: str) -> bool:
        return name in self._table

    def is_type(self, name: str) -> bool:
        return name in self._table and self._table[name] is None

    def const_type(self, name: str) -> Optional[Type]:
        return self._table.get(name)

    def constants(self) -> Iterator[tuple[str, Type]]:
        for name, ty in self.decls:
            if ty is not None:
                yield name, ty


@dataclass(frozen=True)
class ZonedContext:
    """Three typing zones: gamma (unrestricted), omega (irrelevant),
    delta (strict).  Each is an ordered (name, type) list."""

    gamma: tuple = ()
    omega: tuple = ()
    delta: tuple = ()

    @cached_property
    def gamma_map(self):
        return dict(self.gamma)

    @cached_property
    def omega_map(self):
        return dict(self.omega)

    @cached_property
    def delta_map(self):
        return dict(self.delta)

    def duplicates(self) -> list[str]:
        seen, dups = set(), []
        for name, _ in (*self.gamma, *self.omega, *self.delta):
            if name in seen:
                dups.append(name)
            seen.add(name)
        return dups

    def flat(self) -> dict:
        return {**self.gamma_map, **self.omega_map, **self.delta_map}


# ---------------------------------------------------------------------------
# Concrete syntax

class ParseError(Exception):
    pass


def _where(pos: int) -> str:
    return "at end of input" if pos < 0 else f"at offset {pos}"


_TOKEN_RE = re.compile(
    r"""
      (?P<skip>\s+|%[^\n]*)
    | (?P<arrow>->(?:[10u](?![A-Za-z0-9_']))?)
    | (?P<at>@[10u](?![A-Za-z0-9_']))
    | (?P<hat>\^[10u](?![A-Za-z0-9_']))
    | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    | (?P<punct>[()\[\],:.\\])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        if m.lastgroup != "skip":
            toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature], labeled: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.labeled = labeled

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.next()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, got {tok[1]!r} {_where(tok[2])}")
        return tok

    def at_end(self):
        return self.i >= len(self.toks)

    def done(self):
        if not self.at_end():
            tok = self.peek()
            raise ParseError(f"trailing input {tok[1]!r} at offset {tok[2]}")

    # -- labels

    def label_of(self, text: str) -> Label:
        return Label(text[-1])

    # -- types

    def type_(self) -> Type:
        left = self.type_atom()
        kind, text, pos = self.peek()
        if kind == "arrow":
            self.next()
            if self.labeled and len(text) == 2:
                raise ParseError(f"arrow at offset {pos} needs a label (->1, ->0, ->u)")
            if not self.labeled and len(text) == 3:
                raise ParseError(f"labeled arrow at offset {pos} in label-free input")
            k = self.label_of(text) if len(text) == 3 else Label.U
            return Arrow(left, k, self.type_())
        return left

    def type_atom(self) -> Type:
        kind, text, pos = self.next()
        if kind == "punct" and text == "(":
            a = self.type_()
            self.expect("punct", ")")
            return a
        if kind == "ident":
            if self.sig is not None and not self.sig.is_type(text):
                raise ParseError(f"undeclared base type {text!r} at offset {pos}")
            return Atom(text)
        raise ParseError(f"expected a type, got {text!r} {_where(pos)}")

    # -- terms

    def term(self) -> Term:
        kind, text, _ = self.peek()
        if kind == "punct" and text == "\\":
            return self.lam()
        return self.app()

    def lam(self) -> Term:
        self.expect("punct", "\\")
        _, x, _ = self.expect("ident")
        if self.labeled:
            _, hat, _ = self.expect("hat")
            k = self.label_of(hat)
        else:
            k = Label.U
        self.expect("punct", ":")
        a = self.type_()
        self.expect("punct", ".")
        return Lam(x, k, a, self.term())

    def app(self) -> Term:
        t = self.atom()
        while True:
            kind, text, _ = self.peek()
            if self.labeled:
                if kind != "at":
                    return t
                self.next()
                t = App(t, self.atom(), self.label_of(text))
            else:
                if kind == "ident" or (kind == "punct" and text == "("):
                    t = App(t, self.atom(), Label.U)
                else:
                    return t

    def atom(self) -> Term:
        kind, text, pos = self.next()
        if kind == "punct" and text == "(":
            t = self.term()
            self.expect("punct", ")")
            return t
        if kind != "ident":
            raise ParseError(f"expected a term, got {text!r} {_where(pos)}")
        name = text
        kind2, text2, _ = self.peek()
        if kind2 == "punct" and text2 == "[":
            if self.sig is not None and self.sig.has(name):
                raise ParseError(f"signature constant {name!r} used as an EVar")
            return EVar(name, None, self.phi())
        if self.sig is not None and self.sig.has(name):
            if self.sig.is_type(name):
                raise ParseError(f"base type {name!r} used as a term")
            return Const(name)
        return Var(name)

    def phi(self) -> Phi:
        self.expect("punct", "[")
        entries = []
        kind, text, _ = self.peek()
        if kind == "punct" and text == "]":
            self.next()
            return ()
        while True:
            _, x, _ = self.expect("ident")
            if self.labeled:
                _, hat, _ = self.expect("hat")
                entries.append((x, self.label_of(hat)))
            else:
                entries.append((x, Label.U))
            kind, text, pos = self.next()
            if kind == "punct" and text == "]":
                return tuple(entries)
            if not (kind == "punct" and text == ","):
                raise ParseError(f"expected ',' or ']' {_where(pos)}")


def parse_term(text: str, sig: Signature, labeled: bool = True) -> Term:
    p = _Parser(text, sig, labeled)
    t = p.term()
    p.done()
    return t


def parse_type(text: str, sig: Optional[Signature] = None, labeled: bool = True) -> Type:
    p = _Parser(text, sig, labeled)
    a = p.type_()
    p.done()
    return a


def parse_signature(text: str, labeled: bool = True) -> Signature:
    decls = []
    p = _Parser(text, None, labeled)
    while not p.at_end():
        _, name, _ = p.expect("ident")
        p.expect("punct", ":")
        kind, text2, _ = p.peek()
        if kind == "ident" and text2 == "type":
            p.next()
            decls.append((name, None))
        else:
            p.sig = Signature(tuple(decls))  # validate atoms against earlier decls
            decls.append((name, p.type_()))
            p.sig = None
        p.expect("punct", ".")
    return Signature(tuple(decls))


def parse_context(text: str, sig: Signature, labeled: bool = True):
    """Parse ``x : A, y : B`` into an ordered ((name, type), ...) tuple."""
    p = _Parser(text, sig, labeled)
    entries = []
    if p.at_end():
        return ()
    while True:
        _, name, pos = p.expect("ident")
        if sig.has(name):
            raise ParseError(f"context variable {name!r} shadows a signature constant")
        if any(name == n for n, _ in entries):
            raise ParseError(f"duplicate context variable {name!r} at offset {pos}")
        p.expect("punct", ":")
        entries.append((name, p.type_()))
        if p.at_end():
            return tuple(entries)
        p.expect("punct", ",")


def parse_program(text: str, sig: Signature):
    """Parse clause lines ``name : pred PATTERN.`` into (name, pred, Term)."""
    p = _Parser(text, sig, labeled=True)
    out = []
    while not p.at_end():
        _, name, _ = p.expect("ident")
        p.expect("punct", ":")
        _, pred, _ = p.expect("ident")
        t = p.term()
        p.expect("punct", ".")
        out.append((name, pred, t))
    return out


# ---------------------------------------------------------------------------
# Printing

def print_type(a: Type) -> str:
    if isinstance(a, Atom):
        return a.name
    dom = print_type(a.dom)
    if isinstance(a.dom, Arrow):
        dom = f"({dom})"
    return f"{dom} ->{a.label} {print_type(a.cod)}"


def print_phi(phi: Phi) -> str:
    return "[" + ", ".join(f"{x}^{k}" for x, k in phi) + "]"


def print_term(t: Term) -> str:
    match t:
        case Const(name) | Var(name):
            return name
        case EVar(name, _, args):
            return name + print_phi(args)
        case Lam(x, k, a, body):
            return f"\\{x}^{k}:{print_type(a)}. {print_term(body)}"
        case App(f, arg, k):
            fs = print_term(f)
            if isinstance(f, Lam):
                fs = f"({fs})"
            s = print_term(arg)
            if isinstance(arg, (Lam, App)):
                s = f"({s})"
            return f"{fs} @{k} {s}"
    raise TypeError(f"not a term: {t!r}")


def print_context(ctx) -> str:
    return ", ".join(f"{x}:{print_type(a)}" for x, a in ctx)
