"""Concrete syntax for terms.

Grammar, loosest binding first::

    term   := binder | iff
    binder := "L" name ":" type "." term
            | ("forall" | "exists") name [":" type] "." term
    iff    := impl ["<->" iff]
    impl   := or ["->" impl]
    or     := and ("|" and)*
    and    := unary ("&" unary)*
    unary  := "~" unary | eq
    eq     := post ["=" post]
    post   := atom ("(" term ")")*
    atom   := name | "(" term ")" | binder

Unicode spellings (``λ ∀ ∃ ¬ ∧ ∨ → ↔``) are accepted on input. Variable
types come from their binders; constant types come from a signature or are
inferred from the position the constant occupies.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Mapping, MutableMapping

from ..errors import FormatError, IllTyped, TermSyntaxError
from ..semtype import E, T, Atom, Fn, SemType, is_boolean
from .terms import App, Conn, Const, Eq, Lam, Not, Op, Quant, Quantifier, Term, Var

_ALIASES = {"λ": "L", "∀": "forall", "∃": "exists", "¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sym><->|->|[()~&|=:.<>,λ∀∃¬∧∨→↔])
  | (?P<name>[^\W\d][\w']*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"L", "forall", "exists"}


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        out.append((m.lastgroup, _ALIASES.get(m.group(), m.group())))
    return out


# raw syntax, before types are known


@dataclass(frozen=True)
class _Name:
    name: str


@dataclass(frozen=True)
class _App:
    fn: object
    arg: object


@dataclass(frozen=True)
class _Bind:
    kind: str  # "L", "forall", "exists"
    name: str
    stype: SemType | None
    body: object


@dataclass(frozen=True)
class _Not:
    body: object


@dataclass(frozen=True)
class _Conn:
    op: Op
    left: object
    right: object


@dataclass(frozen=True)
class _Eq:
    left: object
    right: object


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def next(self):
        if self.i >= len(self.toks):
            self.fail("unexpected end of input")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, tok = self.next()
        if tok != value:
            self.fail(f"expected {value!r}, found {tok!r}")

    def fail(self, msg):
        raise TermSyntaxError(f"{msg} in {self.text!r}")

    def parse(self):
        t = self.term()
        if self.i != len(self.toks):
            self.fail(f"unexpected {self.peek()!r}")
        return t

    def term(self):
        if self.peek() in _KEYWORDS:
            return self.binder()
        return self.iff()

    def binder(self):
        kind = self.next()[1]
        k, name = self.next()
        if k != "name" or name in _KEYWORDS:
            self.fail(f"expected a variable after {kind}")
        stype = None
        if self.peek() == ":":
            self.next()
            stype = self.type_()
        elif kind == "L":
            self.fail(f"lambda parameter {name} needs a type")
        self.expect(".")
        return _Bind(kind, name, stype, self.term())

    def type_(self):
        k, tok = self.next()
        if tok in ("e", "t"):
            return Atom(tok)
        if tok != "<":
            self.fail(f"bad type at {tok!r}")
        a = self.type_()
        self.expect(",")
        b = self.type_()
        self.expect(">")
        return Fn(a, b)

    def iff(self):
        left = self.impl()
        if self.peek() == "<->":
            self.next()
            return _Conn(Op.IFF, left, self.iff_rhs())
        return left

    def iff_rhs(self):
        return self.binder() if self.peek() in _KEYWORDS else self.iff()

    def impl(self):
        left = self.or_()
        if self.peek() == "->":
            self.next()
            right = self.binder() if self.peek() in _KEYWORDS else self.impl()
            return _Conn(Op.IMPLIES, left, right)
        return left

    def or_(self):
        left = self.and_()
        while self.peek() == "|":
            self.next()
            left = _Conn(Op.OR, left, self.trailing(self.and_))
        return left

    def and_(self):
        left = self.unary()
        while self.peek() == "&":
            self.next()
            left = _Conn(Op.AND, left, self.trailing(self.unary))
        return left

    def trailing(self, rule):
        # a binder in operand position swallows the rest of the input
        return self.binder() if self.peek() in _KEYWORDS else rule()

    def unary(self):
        if self.peek() == "~":
            self.next()
            return _Not(self.trailing(self.unary))
        return self.eq()

    def eq(self):
        left = self.post()
        if self.peek() == "=":
            self.next()
            return _Eq(left, self.post())
        return left

    def post(self):
        t = self.atom()
        while self.peek() == "(":
            self.next()
            arg = self.term()
            self.expect(")")
            t = _App(t, arg)
        return t

    def atom(self):
        kind, tok = self.next()
        if tok == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "name" and tok not in _KEYWORDS:
            return _Name(tok)
        if tok in _KEYWORDS:
            self.i -= 1
            return self.binder()
        self.fail(f"unexpected {tok!r}")


# elaboration: raw syntax -> typed terms


class _Elaborator:
    def __init__(self, signature: MutableMapping[str, SemType], text: str):
        self.sig = signature
        self.text = text

    def fail(self, reason):
        raise IllTyped(self.text, reason)

    def synth(self, r, env):
        """Typed term, or None when the type cannot be determined bottom-up."""
        if isinstance(r, _Name):
            if r.name in env:
                return Var(r.name, env[r.name])
            if r.name in self.sig:
                return Const(r.name, self.sig[r.name])
            return None
        if isinstance(r, _App):
            f = self.synth(r.fn, env)
            if f is not None:
                ft = _type(f)
                if not isinstance(ft, Fn):
                    self.fail(f"{_show(r.fn)} of type {ft} is applied to an argument")
                return App(f, self.check(r.arg, env, ft.input))
            return None
        if isinstance(r, _Bind):
            if r.kind == "L":
                inner = {**env, r.name: r.stype}
                body = self.synth(r.body, inner)
                if body is None:
                    body = self.check(r.body, inner, _default_type(r.body))
                return Lam(Var(r.name, r.stype), body)
            return self.check(r, env, T)
        if isinstance(r, (_Eq,)):
            return self.check(r, env, T)
        if isinstance(r, _Not):
            body = self.synth(r.body, env)
            return None if body is None else Not(body)
        if isinstance(r, _Conn):
            for side in (r.left, r.right):
                got = self.synth(side, env)
                if got is not None:
                    return self.check(r, env, _type(got))
            return None
        raise AssertionError(r)

    def check(self, r, env, expected: SemType) -> Term:
        if isinstance(r, _Name):
            if r.name in env:
                v = Var(r.name, env[r.name])
                if v.stype != expected:
                    self.fail(f"variable {r.name} : {v.stype} used where {expected} is expected")
                return v
            known = self.sig.setdefault(r.name, expected)
            if known != expected:
                self.fail(f"constant {r.name} : {known} used where {expected} is expected")
            return Const(r.name, expected)
        if isinstance(r, _App):
            f = self.synth(r.fn, env)
            if f is not None:
                ft = _type(f)
                if not isinstance(ft, Fn) or ft.output != expected:
                    self.fail(f"{_show(r.fn)} : {ft} cannot produce {expected}")
                return App(f, self.check(r.arg, env, ft.input))
            a = self.synth(r.arg, env)
            if a is None:
                # an unannotated constant argument of an unknown functor is an individual
                a = self.check(r.arg, env, E)
            return App(self.check(r.fn, env, Fn(_type(a), expected)), a)
        if isinstance(r, _Bind):
            if r.kind == "L":
                if not isinstance(expected, Fn):
                    self.fail(f"abstraction over {r.name} where {expected} is expected")
                if r.stype != expected.input:
                    self.fail(f"parameter {r.name} : {r.stype} where {expected.input} is expected")
                body = self.check(r.body, {**env, r.name: r.stype}, expected.output)
                return Lam(Var(r.name, r.stype), body)
            if expected != T:
                self.fail(f"quantified formula where {expected} is expected")
            vt = r.stype or E
            if vt != E:
                self.fail(f"quantified variable {r.name} must have type e")
            body = self.check(r.body, {**env, r.name: vt}, T)
            kind = Quantifier.FORALL if r.kind == "forall" else Quantifier.EXISTS
            return Quant(kind, Var(r.name, vt), body)
        if isinstance(r, _Eq):
            if expected != T:
                self.fail(f"equation where {expected} is expected")
            return Eq(self.check(r.left, env, E), self.check(r.right, env, E))
        if isinstance(r, _Not):
            if not is_boolean(expected):
                self.fail(f"negation where {expected} is expected")
            return Not(self.check(r.body, env, expected))
        if isinstance(r, _Conn):
            if not is_boolean(expected):
                self.fail(f"connective where {expected} is expected")
            return Conn(r.op, self.check(r.left, env, expected), self.check(r.right, env, expected))
        raise AssertionError(r)


def _default_type(r) -> SemType:
    """Type assumed for a body nothing else determines: a formula under its binders."""
    if isinstance(r, _Bind) and r.kind == "L":
        return Fn(r.stype, _default_type(r.body))
    return T


def _type(t):
    from .terms import infer_type

    return infer_type(t)


def _show(r) -> str:
    if isinstance(r, _Name):
        return r.name
    if isinstance(r, _App):
        return f"{_show(r.fn)}({_show(r.arg)})"
    if isinstance(r, _Bind):
        return f"{r.kind} {r.name}. {_show(r.body)}"
    if isinstance(r, _Not):
        return f"~{_show(r.body)}"
    if isinstance(r, _Eq):
        return f"{_show(r.left)} = {_show(r.right)}"
    return f"({_show(r.left)} {r.op.value} {_show(r.right)})"


def parse_term(
    text: str,
    stype: SemType | None = None,
    signature: MutableMapping[str, SemType] | None = None,
) -> Term:
    """Parse and type ``text``.

    ``signature`` maps constant names to types; constants missing from it
    get the type demanded by their position and are added to it. When
    ``stype`` is given the whole term is checked against it.
    """
    text = unicodedata.normalize("NFC", text)
    raw = _Parser(text).parse()
    sig = signature if signature is not None else {}
    el = _Elaborator(sig, text)
    if stype is not None:
        return el.check(raw, {}, stype)
    t = el.synth(raw, {})
    if t is None:
        t = el.check(raw, {}, T)
    return t


# printing

_PREC = {Op.IFF: 1, Op.IMPLIES: 2, Op.OR: 3, Op.AND: 4}
_UNICODE = {"L": "λ", "forall": "∀", "exists": "∃", Op.NOT: "¬", Op.AND: "∧", Op.OR: "∨", Op.IMPLIES: "→", Op.IFF: "↔"}


def to_text(t: Term, unicode: bool = False) -> str:
    """Render ``t`` so that :func:`parse_term` reads it back."""
    return _show_term(t, 0, unicode)


def _sym(key, unicode):
    if unicode:
        return _UNICODE[key]
    return key.value if isinstance(key, Op) else key


def _show_term(t, ctx, u) -> str:
    # ctx: 0 top/binder body, 1..4 connective operand, 5 negation, 6 equation side, 7 function/atom
    if isinstance(t, (Const, Var)):
        return t.name
    if isinstance(t, App):
        return f"{_show_term(t.fn, 7, u)}({_show_term(t.arg, 0, u)})"
    if isinstance(t, (Lam, Quant)):
        if isinstance(t, Lam):
            head = f"{_sym('L', u)}{t.param.name}:{t.param.stype}" if u else f"L {t.param.name}:{t.param.stype}"
        else:
            kw = t.kind.value
            head = f"{_sym(kw, u)}{t.var.name}" if u else f"{kw} {t.var.name}"
        s = f"{head}. {_show_term(t.body, 0, u)}"
        return s if ctx == 0 else f"({s})"
    if isinstance(t, Not):
        s = f"{_sym(Op.NOT, u)}{_show_term(t.body, 5, u)}"
        return s if ctx <= 5 else f"({s})"
    if isinstance(t, Eq):
        s = f"{_show_term(t.left, 7, u)} = {_show_term(t.right, 7, u)}"
        return s if ctx <= 6 else f"({s})"
    p = _PREC[t.op]
    if t.op in (Op.AND, Op.OR):
        left, right = _show_term(t.left, p, u), _show_term(t.right, p + 1, u)
    else:
        left, right = _show_term(t.left, p + 1, u), _show_term(t.right, p, u)
    s = f"{left} {_sym(t.op, u)} {right}"
    return s if ctx <= p else f"({s})"
