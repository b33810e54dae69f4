"""Normalization of terms by one-redex-at-a-time contraction.

Three kinds of redex are contracted:

* beta: ``(L x. b)(s)`` becomes ``b[x := s]``;
* distribution: an applied connective acts pointwise, so
  ``(P & Q)(s)`` becomes ``P(s) & Q(s)`` and ``(~P)(s)`` becomes ``~P(s)``;
* merge: a connective between two abstractions moves under one binder,
  ``(L x. b) & (L y. c)`` becomes ``L x. (b & c[y := x])`` and
  ``~(L x. b)`` becomes ``L x. ~b``.

The last two only fire on connectives of function type.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import App, Conn, Eq, Lam, Not, Quant, Term, Var, fresh_name, free_vars, names, subst

LEFTMOST_OUTERMOST = "leftmost-outermost"
RIGHTMOST_INNERMOST = "rightmost-innermost"


@dataclass(frozen=True)
class ReductionTrace:
    """``start`` followed by the result of each single contraction."""

    start: Term
    steps: tuple[Term, ...] = field(default=())

    @property
    def final(self) -> Term:
        return self.steps[-1] if self.steps else self.start

    @property
    def terms(self) -> tuple[Term, ...]:
        return (self.start,) + self.steps

    def __len__(self):
        return len(self.steps)


def is_redex(t: Term) -> bool:
    if isinstance(t, App):
        return isinstance(t.fn, (Lam, Conn, Not))
    if isinstance(t, Conn):
        return isinstance(t.left, Lam) and isinstance(t.right, Lam)
    if isinstance(t, Not):
        return isinstance(t.body, Lam)
    return False


def contract(t: Term) -> Term:
    """Contract ``t``, which must itself be a redex."""
    if isinstance(t, App):
        f = t.fn
        if isinstance(f, Lam):
            return subst(f.body, f.param, t.arg)
        if isinstance(f, Conn):
            return Conn(f.op, App(f.left, t.arg), App(f.right, t.arg))
        if isinstance(f, Not):
            return Not(App(f.body, t.arg))
    if isinstance(t, Not) and isinstance(t.body, Lam):
        return Lam(t.body.param, Not(t.body.body))
    if isinstance(t, Conn) and isinstance(t.left, Lam) and isinstance(t.right, Lam):
        return _merge(t)
    raise ValueError("not a redex")


def _merge(t: Conn) -> Lam:
    left, right = t.left, t.right
    x, y = left.param, right.param
    if x != y and x in free_vars(right.body):
        x = Var(fresh_name(x.name, names(left.body) | names(right.body) | {y.name}), x.stype)
        left = Lam(x, subst(left.body, left.param, x))
    body_r = right.body if x == y else subst(right.body, y, x)
    return Lam(x, Conn(t.op, left.body, body_r))


def has_redex(t: Term) -> bool:
    return _find_outer(t) is not None


def _children(t):
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, (Lam, Quant, Not)):
        return (t.body,)
    if isinstance(t, (Conn, Eq)):
        return (t.left, t.right)
    return ()


def _rebuild(t, kids):
    if isinstance(t, App):
        return App(*kids)
    if isinstance(t, Lam):
        return Lam(t.param, kids[0])
    if isinstance(t, Quant):
        return Quant(t.kind, t.var, kids[0])
    if isinstance(t, Not):
        return Not(kids[0])
    if isinstance(t, Conn):
        return Conn(t.op, *kids)
    return Eq(*kids)


def _find_outer(t):
    """Path (tuple of child indices) to the leftmost-outermost redex."""
    if is_redex(t):
        return ()
    for i, c in enumerate(_children(t)):
        p = _find_outer(c)
        if p is not None:
            return (i,) + p
    return None


def _find_inner(t):
    """Path to the rightmost-innermost redex."""
    kids = _children(t)
    for i in reversed(range(len(kids))):
        p = _find_inner(kids[i])
        if p is not None:
            return (i,) + p
    if is_redex(t):
        return ()
    return None


def _replace_at(t, path):
    if not path:
        return contract(t)
    kids = list(_children(t))
    kids[path[0]] = _replace_at(kids[path[0]], path[1:])
    return _rebuild(t, kids)


def step(t: Term, strategy: str = LEFTMOST_OUTERMOST) -> Term | None:
    """One contraction, or None when ``t`` is already normal."""
    finder = _find_outer if strategy == LEFTMOST_OUTERMOST else _find_inner
    path = finder(t)
    if path is None:
        return None
    return _replace_at(t, path)


def beta_normalize(t: Term, strategy: str = LEFTMOST_OUTERMOST, max_steps: int | None = None) -> ReductionTrace:
    if strategy not in (LEFTMOST_OUTERMOST, RIGHTMOST_INNERMOST):
        raise ValueError(f"unknown strategy {strategy!r}")
    steps = []
    current = t
    while True:
        nxt = step(current, strategy)
        if nxt is None:
            return ReductionTrace(t, tuple(steps))
        steps.append(nxt)
        current = nxt
        if max_steps is not None and len(steps) > max_steps:
            raise RuntimeError(f"no normal form within {max_steps} steps")


def normalize(t: Term) -> Term:
    return beta_normalize(t).final
