"""Typed lambda terms extended with first-order logic connectives."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from ..errors import (
    AntecedentMismatch,
    IllTyped,
    NotComposable,
    NotImplication,
    TypeMismatch,
)
from ..semtype import E, T, Fn, SemType, compose, is_boolean


class Op(enum.Enum):
    NOT = "~"
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    IFF = "<->"

    @property
    def arity(self):
        return 1 if self is Op.NOT else 2


class Quantifier(enum.Enum):
    FORALL = "forall"
    EXISTS = "exists"


@dataclass(frozen=True)
class Const:
    name: str
    stype: SemType

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var:
    name: str
    stype: SemType

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Lam:
    param: Var
    body: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Not:
    body: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Conn:
    op: Op
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.op.arity != 2:
            raise ValueError(f"{self.op} is not a binary connective")

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Quant:
    kind: Quantifier
    var: Var
    body: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Eq:
    left: "Term"
    right: "Term"

    def __str__(self):
        return to_text(self)


Term = Union[Const, Var, App, Lam, Not, Conn, Quant, Eq]


def app(f: Term, *args: Term) -> Term:
    """Curried application: ``app(aime, a, g)`` is ``aime(a)(g)``."""
    for a in args:
        f = App(f, a)
    return f


def to_text(t: Term) -> str:
    from .syntax import to_text as _to_text

    return _to_text(t)


# typing


def infer_type(t: Term) -> SemType:
    """Type of ``t``; raises :class:`IllTyped` on any violation.

    Connectives accept operands of any type ending in ``t`` (both operands
    the same type) and act pointwise on them.
    """
    return _infer(t, {}, {})


def _infer(t, bound, free) -> SemType:
    if isinstance(t, Const):
        return t.stype
    if isinstance(t, Var):
        known = bound.get(t.name)
        if known is not None:
            if known != t.stype:
                raise IllTyped(to_text(t), f"variable {t.name} bound at {known} used at {t.stype}")
        else:
            prev = free.setdefault(t.name, t.stype)
            if prev != t.stype:
                raise IllTyped(to_text(t), f"free variable {t.name} used at {prev} and {t.stype}")
        return t.stype
    if isinstance(t, App):
        f = _infer(t.fn, bound, free)
        a = _infer(t.arg, bound, free)
        try:
            return compose(f, a)
        except NotComposable:
            raise IllTyped(to_text(t), f"cannot apply {f} to {a}") from None
    if isinstance(t, Lam):
        body = _infer(t.body, {**bound, t.param.name: t.param.stype}, free)
        return Fn(t.param.stype, body)
    if isinstance(t, Not):
        b = _infer(t.body, bound, free)
        if not is_boolean(b):
            raise IllTyped(to_text(t), f"negation of non-boolean type {b}")
        return b
    if isinstance(t, Conn):
        left = _infer(t.left, bound, free)
        right = _infer(t.right, bound, free)
        if left != right or not is_boolean(left):
            raise IllTyped(to_text(t), f"connective operands of types {left} and {right}")
        return left
    if isinstance(t, Quant):
        if t.var.stype != E:
            raise IllTyped(to_text(t), f"quantified variable {t.var.name} has type {t.var.stype}, not e")
        b = _infer(t.body, {**bound, t.var.name: t.var.stype}, free)
        if b != T:
            raise IllTyped(to_text(t), f"quantifier body has type {b}, not t")
        return T
    if isinstance(t, Eq):
        left = _infer(t.left, bound, free)
        right = _infer(t.right, bound, free)
        if left != E or right != E:
            raise IllTyped(to_text(t), f"equality between {left} and {right}; both sides must be e")
        return T
    raise TypeError(f"not a term: {t!r}")


# variables


def free_vars(t: Term) -> frozenset[Var]:
    if isinstance(t, Var):
        return frozenset((t,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.param}
    if isinstance(t, Quant):
        return free_vars(t.body) - {t.var}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    if isinstance(t, Not):
        return free_vars(t.body)
    return free_vars(t.left) | free_vars(t.right)


def names(t: Term) -> set[str]:
    """Every identifier occurring in ``t``: constants, free and bound variables."""
    if isinstance(t, (Var, Const)):
        return {t.name}
    if isinstance(t, Lam):
        return names(t.body) | {t.param.name}
    if isinstance(t, Quant):
        return names(t.body) | {t.var.name}
    if isinstance(t, App):
        return names(t.fn) | names(t.arg)
    if isinstance(t, Not):
        return names(t.body)
    return names(t.left) | names(t.right)


def fresh_name(base: str, avoid) -> str:
    """``base`` followed by the fewest primes giving a name not in ``avoid``."""
    candidate = base
    while candidate in avoid:
        candidate += "'"
    return candidate


def substitute(t: Term, v: Var, s: Term) -> Term:
    """Capture-avoiding replacement of the free occurrences of ``v`` by ``s``."""
    st = infer_type(s)
    if st != v.stype:
        raise TypeMismatch(f"cannot substitute {to_text(s)} : {st} for {v.name} : {v.stype}")
    return subst(t, v, s)


def subst(t: Term, v: Var, s: Term, _fv=None) -> Term:
    """Unchecked :func:`substitute`; used on the hot reduction path."""
    if _fv is None:
        _fv = free_vars(s)
    if isinstance(t, Var):
        return s if t == v else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(subst(t.fn, v, s, _fv), subst(t.arg, v, s, _fv))
    if isinstance(t, Not):
        return Not(subst(t.body, v, s, _fv))
    if isinstance(t, Conn):
        return Conn(t.op, subst(t.left, v, s, _fv), subst(t.right, v, s, _fv))
    if isinstance(t, Eq):
        return Eq(subst(t.left, v, s, _fv), subst(t.right, v, s, _fv))
    # binders
    param = t.param if isinstance(t, Lam) else t.var
    if param == v or v not in free_vars(t.body):
        return t
    body = t.body
    if any(x.name == param.name for x in _fv):
        new = Var(fresh_name(param.name, names(body) | names(s) | {v.name}), param.stype)
        body = subst(body, param, new, frozenset((new,)))
        param = new
    body = subst(body, v, s, _fv)
    if isinstance(t, Lam):
        return Lam(param, body)
    return Quant(t.kind, param, body)


# alpha-equivalence


def alpha_eq(t1: Term, t2: Term) -> bool:
    return _alpha(t1, t2, {}, {}, 0)


def _alpha(a, b, env_a, env_b, depth) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        da, db = env_a.get(a), env_b.get(b)
        if da is None and db is None:
            return a == b
        return da == db
    if isinstance(a, Const):
        return a == b
    if isinstance(a, (Lam, Quant)):
        pa = a.param if isinstance(a, Lam) else a.var
        pb = b.param if isinstance(b, Lam) else b.var
        if pa.stype != pb.stype:
            return False
        if isinstance(a, Quant) and a.kind != b.kind:
            return False
        return _alpha(a.body, b.body, {**env_a, pa: depth}, {**env_b, pb: depth}, depth + 1)
    if isinstance(a, App):
        return _alpha(a.fn, b.fn, env_a, env_b, depth) and _alpha(a.arg, b.arg, env_a, env_b, depth)
    if isinstance(a, Not):
        return _alpha(a.body, b.body, env_a, env_b, depth)
    if isinstance(a, Conn) and a.op != b.op:
        return False
    return _alpha(a.left, b.left, env_a, env_b, depth) and _alpha(a.right, b.right, env_a, env_b, depth)


# inference


def modus_ponens(major: Term, minor: Term) -> Term:
    """From ``phi -> psi`` and ``phi`` conclude ``psi``."""
    if not (isinstance(major, Conn) and major.op is Op.IMPLIES):
        raise NotImplication(f"{to_text(major)} is not an implication")
    if infer_type(major) != T:
        raise NotImplication(f"{to_text(major)} is not a formula of type t")
    if not alpha_eq(major.left, minor):
        raise AntecedentMismatch(f"{to_text(minor)} does not match antecedent {to_text(major.left)}")
    return major.right
