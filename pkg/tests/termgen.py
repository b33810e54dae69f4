"""Random generators for well-typed terms, formulas and small models."""

import random

from montague.lambdalog import App, Conn, Const, Eq, Lam, Not, Op, Quant, Quantifier, Var
from montague.model import parse_model
from montague.semtype import E, T, Fn, fn, is_boolean

ET = fn(E, T)
EET = fn(E, E, T)

FIRST_ORDER_SIG = {
    "a": E,
    "b": E,
    "g": E,
    "dort": ET,
    "philosophe": ET,
    "aime": EET,
}

HIGHER_ORDER_SIG = {
    **FIRST_ORDER_SIG,
    "tous": fn(ET, T),
    "bien": fn(ET, ET),
    "et": fn(T, T, T),
}

BINARY_OPS = [Op.AND, Op.OR, Op.IMPLIES, Op.IFF]


def var_name(stype, i):
    """Distinct name pools per type, so one name never carries two types."""
    if stype == E:
        return "xyz"[i]
    if stype == T:
        return "pqr"[i]
    if stype == ET:
        return "PQR"[i]
    mangled = str(stype).replace("<", "L").replace(">", "R").replace(",", "")
    return f"v{mangled}{i}"


class TermGen:
    def __init__(self, rng: random.Random, evaluable: bool = False):
        self.rng = rng
        self.evaluable = evaluable
        self.sig = FIRST_ORDER_SIG if evaluable else HIGHER_ORDER_SIG

    def arg_type(self):
        if self.evaluable:
            return E
        return self.rng.choice([E, E, T, ET])

    def leaves(self, stype, ctx):
        out = [Var(n, t) for n, t in ctx.items() if t == stype]
        out += [Const(n, t) for n, t in self.sig.items() if t == stype]
        return out

    def fresh_var(self, stype):
        return Var(var_name(stype, self.rng.randrange(3)), stype)

    def term(self, stype, depth=6, ctx=None):
        ctx = ctx or {}
        leaves = self.leaves(stype, ctx)
        if depth <= 0 or (leaves and self.rng.random() < 0.25):
            if leaves:
                return self.rng.choice(leaves)
            return self.minimal(stype, ctx)
        d = depth - 1
        makers = [self.redex, self.application]
        if isinstance(stype, Fn) and (not self.evaluable or stype.input == E):
            makers.append(self.abstraction)
        if is_boolean(stype):
            makers += [self.negation, self.connective]
        if stype == T:
            makers += [self.quantified, self.equation]
        return self.rng.choice(makers)(stype, d, ctx)

    def minimal(self, stype, ctx):
        if stype == E:
            return Const("a", E)
        if stype == T:
            return Eq(self.term(E, 0, ctx), self.term(E, 0, ctx))
        x = self.fresh_var(stype.input)
        return Lam(x, self.term(stype.output, 0, {**ctx, x.name: x.stype}))

    def redex(self, stype, d, ctx):
        x = self.fresh_var(self.arg_type())
        body = self.term(stype, d, {**ctx, x.name: x.stype})
        return App(Lam(x, body), self.term(x.stype, d, ctx))

    def application(self, stype, d, ctx):
        a = self.arg_type()
        return App(self.term(Fn(a, stype), d, ctx), self.term(a, d, ctx))

    def abstraction(self, stype, d, ctx):
        x = self.fresh_var(stype.input)
        return Lam(x, self.term(stype.output, d, {**ctx, x.name: x.stype}))

    def negation(self, stype, d, ctx):
        return Not(self.term(stype, d, ctx))

    def connective(self, stype, d, ctx):
        return Conn(self.rng.choice(BINARY_OPS), self.term(stype, d, ctx), self.term(stype, d, ctx))

    def quantified(self, stype, d, ctx):
        x = self.fresh_var(E)
        kind = self.rng.choice([Quantifier.FORALL, Quantifier.EXISTS])
        return Quant(kind, x, self.term(T, d, {**ctx, x.name: E}))

    def equation(self, stype, d, ctx):
        return Eq(self.term(E, d, ctx), self.term(E, d, ctx))


def random_type(rng, depth=2):
    if depth == 0 or rng.random() < 0.5:
        return rng.choice([E, T])
    return Fn(random_type(rng, depth - 1), random_type(rng, depth - 1))


def random_model_text(rng, n_entities, constants=("a", "b", "g"), predicates=None):
    """Text of a random model file, plus the facts it declares as a dict."""
    predicates = predicates or {"dort": 1, "philosophe": 1, "aime": 2}
    names = [f"d{i}" for i in range(n_entities)]
    lines = [f"entity {n}" for n in names]
    consts = {c: rng.choice(names) for c in constants}
    lines += [f"const {c} : e = {d}" for c, d in consts.items()]
    facts = {}
    for pred, n in predicates.items():
        rows = [()]
        for _ in range(n):
            rows = [r + (d,) for r in rows for d in names]
        for i, row in enumerate(rows):
            value = rng.random() < 0.5
            facts[pred, row] = value
            # omit most false facts to exercise the closed-world default,
            # but always write one row so the predicate is declared
            if value or i == 0 or rng.random() < 0.3:
                args = "".join(f"({x})" for x in row)
                lines.append(f"fact {pred}{args} = {'vrai' if value else 'faux'}")
    return "\n".join(lines) + "\n", names, consts, facts


def random_model(rng, n_entities):
    text, *_ = random_model_text(rng, n_entities)
    return parse_model(text)


class FormulaGen:
    """First-order formulas over unary ``p``, binary ``r`` and constants ``c0``, ``c1``."""

    def __init__(self, rng, max_quantifiers=2):
        self.rng = rng
        self.max_q = max_quantifiers

    def formula(self, depth=4):
        self.quants_left = self.rng.randint(0, self.max_q)
        return self._f(depth, [])

    def _term(self, scope):
        pool = [Const("c0", E), Const("c1", E)] + [Var(v, E) for v in scope]
        return self.rng.choice(pool)

    def _atom(self, scope):
        k = self.rng.randrange(3)
        if k == 0:
            return App(Const("p", ET), self._term(scope))
        if k == 1:
            return App(App(Const("r", EET), self._term(scope)), self._term(scope))
        return Eq(self._term(scope), self._term(scope))

    def _f(self, depth, scope):
        if depth <= 0:
            return self._atom(scope)
        choices = ["atom", "not", "conn", "conn"]
        if self.quants_left > 0:
            choices += ["quant", "quant", "quant"]
        c = self.rng.choice(choices)
        if c == "atom":
            return self._atom(scope)
        if c == "not":
            return Not(self._f(depth - 1, scope))
        if c == "conn":
            return Conn(self.rng.choice(BINARY_OPS), self._f(depth - 1, scope), self._f(depth - 1, scope))
        self.quants_left -= 1
        v = self.rng.choice(["x", "y"])
        kind = self.rng.choice([Quantifier.FORALL, Quantifier.EXISTS])
        return Quant(kind, Var(v, E), self._f(depth - 1, scope + [v]))


def count_quantifiers(t):
    if isinstance(t, Quant):
        return 1 + count_quantifiers(t.body)
    if isinstance(t, Not):
        return count_quantifiers(t.body)
    if isinstance(t, (Conn, Eq)):
        return count_quantifiers(t.left) + count_quantifiers(t.right)
    if isinstance(t, App):
        return count_quantifiers(t.fn) + count_quantifiers(t.arg)
    if isinstance(t, Lam):
        return count_quantifiers(t.body)
    return 0
