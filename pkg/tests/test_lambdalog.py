import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from montague.errors import AntecedentMismatch, IllTyped, NotImplication, TypeMismatch
from montague.lambdalog import (
    RIGHTMOST_INNERMOST,
    App,
    Conn,
    Const,
    Eq,
    Lam,
    Not,
    Op,
    Quant,
    Quantifier,
    Var,
    alpha_eq,
    app,
    beta_normalize,
    free_vars,
    infer_type,
    modus_ponens,
    parse_term,
    substitute,
)
from montague.lambdalog.reduce import has_redex
from montague.semtype import E, T, fn

from termgen import HIGHER_ORDER_SIG, TermGen, random_type

ET = fn(E, T)
EET = fn(E, E, T)

a, g, s = Const("a", E), Const("g", E), Const("s", E)
aime = Const("aime", EET)
dort = Const("dort", ET)
x, y = Var("x", E), Var("y", E)
P, Q = Var("P", ET), Var("Q", ET)


def term(text, stype=None):
    return parse_term(text, stype, dict(HIGHER_ORDER_SIG, s=E, homme=ET, mortel=ET, préfère=EET, **{"a'": E}))


# nameless reference: bound variables become binder depths, free ones keep names


def nameless(t, env=()):
    if isinstance(t, Var):
        for depth, bound in enumerate(reversed(env)):
            if bound == t:
                return ("bound", depth)
        return ("free", t.name, t.stype)
    if isinstance(t, Const):
        return ("const", t.name, t.stype)
    if isinstance(t, Lam):
        return ("lam", t.param.stype, nameless(t.body, env + (t.param,)))
    if isinstance(t, Quant):
        return ("quant", t.kind, nameless(t.body, env + (t.var,)))
    if isinstance(t, App):
        return ("app", nameless(t.fn, env), nameless(t.arg, env))
    if isinstance(t, Not):
        return ("not", nameless(t.body, env))
    if isinstance(t, Conn):
        return ("conn", t.op, nameless(t.left, env), nameless(t.right, env))
    return ("eq", nameless(t.left, env), nameless(t.right, env))


def nameless_subst(n, v, s):
    """Free names never clash with depths, so substitution is plain replacement."""
    if n[0] == "free":
        return s if (n[1], n[2]) == (v.name, v.stype) else n
    if n[0] in ("bound", "const"):
        return n
    return tuple(nameless_subst(c, v, s) if isinstance(c, tuple) else c for c in n)


class TestInferType:
    def test_applied_predicate(self):
        assert infer_type(app(aime, a, g)) == T

    def test_abstraction(self):
        assert infer_type(Lam(y, app(aime, a, y))) == ET

    def test_equality_needs_entities(self):
        with pytest.raises(IllTyped):
            infer_type(Eq(g, dort))

    def test_bad_application(self):
        with pytest.raises(IllTyped):
            infer_type(App(a, g))

    def test_connective_operands(self):
        with pytest.raises(IllTyped):
            infer_type(Conn(Op.AND, App(dort, g), g))
        with pytest.raises(IllTyped):
            infer_type(Conn(Op.AND, App(dort, g), dort))

    def test_lifted_connective(self):
        assert infer_type(Conn(Op.AND, dort, Lam(x, App(dort, x)))) == ET
        assert infer_type(Not(dort)) == ET

    def test_quantifier_constraints(self):
        assert infer_type(Quant(Quantifier.FORALL, x, App(dort, x))) == T
        with pytest.raises(IllTyped):
            infer_type(Quant(Quantifier.FORALL, P, App(P, a)))
        with pytest.raises(IllTyped):
            infer_type(Quant(Quantifier.EXISTS, x, x))

    def test_scoping(self):
        with pytest.raises(IllTyped):
            infer_type(Conn(Op.AND, App(dort, x), App(Var("x", ET), a)))
        with pytest.raises(IllTyped):
            infer_type(Lam(x, App(Var("x", ET), a)))


class TestFreeVars:
    def test_closed(self):
        assert free_vars(App(dort, g)) == frozenset()

    def test_lambda_binds(self):
        assert free_vars(Lam(x, app(aime, x, y))) == {y}

    def test_quantifier_binds(self):
        assert free_vars(Quant(Quantifier.FORALL, x, app(aime, a, x))) == frozenset()


class TestSubstitute:
    def test_simple(self):
        assert substitute(app(aime, a, y), y, g) == app(aime, a, g)

    def test_no_free_occurrence(self):
        t = Lam(x, App(P, x))
        assert substitute(t, x, g) == t

    def test_capture_avoided_with_prime(self):
        out = substitute(Lam(x, app(aime, x, y)), y, x)
        x1 = Var("x'", E)
        assert out == Lam(x1, app(aime, x1, x))
        assert nameless(out) == nameless_subst(nameless(Lam(x, app(aime, x, y))), y, nameless(x))

    def test_fresh_name_skips_taken_primes(self):
        x1 = Var("x'", E)
        out = substitute(Lam(x, Conn(Op.AND, app(aime, x, y), App(dort, x1))), y, x)
        assert out.param.name == "x''"

    def test_type_mismatch(self):
        with pytest.raises(TypeMismatch):
            substitute(App(P, a), P, a)

    @settings(max_examples=300, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_matches_nameless_reference(self, rng):
        gen = TermGen(rng)
        vt = rng.choice([E, ET])
        v = gen.fresh_var(vt)
        body_ctx = {v.name: vt, "y": E}
        t = gen.term(random_type(rng) if rng.random() < 0.3 else T, 4, body_ctx)
        repl = gen.term(vt, 3, {"x": E, "y": E, "z": E})
        out = substitute(t, v, repl)
        assert nameless(out) == nameless_subst(nameless(t), v, nameless(repl))


class TestBetaNormalize:
    def test_gv_applied_to_subject(self):
        trace = beta_normalize(App(Lam(y, app(aime, a, y)), g))
        assert trace.final == app(aime, a, g)
        assert len(trace) == 1

    def test_verb_applied_to_object(self):
        verb = Lam(x, Lam(y, app(aime, x, y)))
        assert alpha_eq(beta_normalize(App(verb, a)).final, Lam(y, app(aime, a, y)))

    def test_identity(self):
        assert beta_normalize(App(Lam(x, x), Const("c", E))).final == Const("c", E)

    def test_coordination_step(self):
        prefere = Const("préfère", EET)
        ap = Const("a'", E)
        conj = Lam(Q, Lam(P, Conn(Op.AND, P, Q)))
        arg = Lam(x, app(prefere, ap, x))
        out = beta_normalize(App(conj, arg)).final
        assert alpha_eq(out, Lam(P, Conn(Op.AND, P, arg)))

    def test_distribution_and_merge(self):
        both = Conn(Op.AND, dort, Lam(y, app(aime, a, y)))
        out = beta_normalize(App(both, g)).final
        assert out == Conn(Op.AND, App(dort, g), app(aime, a, g))
        merged = beta_normalize(Conn(Op.OR, Lam(x, App(dort, x)), Lam(y, app(aime, a, y)))).final
        assert alpha_eq(merged, Lam(x, Conn(Op.OR, App(dort, x), app(aime, a, x))))
        assert beta_normalize(Not(Lam(x, App(dort, x)))).final == Lam(x, Not(App(dort, x)))

    def test_merge_avoids_capture(self):
        # right body mentions the left parameter free
        t = Conn(Op.AND, Lam(x, App(dort, x)), Lam(y, app(aime, x, y)))
        out = beta_normalize(t).final
        assert free_vars(out) == {x}
        assert alpha_eq(out, Lam(Var("z", E), Conn(Op.AND, App(dort, Var("z", E)), app(aime, x, Var("z", E)))))

    def test_trace_steps_are_single_contractions(self):
        t = term("(L P:<e,t>. L Q:<e,t>. P(a) & Q(g))(dort)(L z:e. aime(z)(z))")
        trace = beta_normalize(t)
        assert trace.terms[0] == t
        assert len(trace) == 3
        assert not has_redex(trace.final)
        for before in trace.terms[:-1]:
            assert has_redex(before)

    def test_leftmost_outermost_order(self):
        inner = App(Lam(y, y), g)
        t = App(Lam(x, App(dort, x)), inner)
        trace = beta_normalize(t)
        assert trace.steps[0] == App(dort, inner)
        trace_in = beta_normalize(t, RIGHTMOST_INNERMOST)
        assert trace_in.steps[0] == App(Lam(x, App(dort, x)), g)
        assert trace.final == trace_in.final == App(dort, g)


class TestAlpha:
    def test_bound_renaming(self):
        assert alpha_eq(Lam(x, App(dort, x)), Lam(y, App(dort, y)))

    def test_constants_differ(self):
        assert not alpha_eq(App(dort, g), App(dort, a))

    def test_quantifier_renaming(self):
        pred = Const("P", ET)
        assert alpha_eq(Quant(Quantifier.FORALL, x, App(pred, x)), Quant(Quantifier.FORALL, y, App(pred, y)))
        assert not alpha_eq(Quant(Quantifier.FORALL, x, App(pred, x)), Quant(Quantifier.EXISTS, y, App(pred, y)))

    def test_free_versus_bound(self):
        assert not alpha_eq(Lam(x, app(aime, x, y)), Lam(y, app(aime, y, y)))
        assert not alpha_eq(Lam(x, x), Lam(Var("x", T), Var("x", T)))


class TestModusPonens:
    homme = Const("homme", ET)
    mortel = Const("mortel", ET)

    def test_socrate(self):
        rule = Conn(Op.IMPLIES, App(self.homme, s), App(self.mortel, s))
        assert modus_ponens(rule, App(self.homme, s)) == App(self.mortel, s)

    def test_not_an_implication(self):
        with pytest.raises(NotImplication):
            modus_ponens(App(self.mortel, s), App(self.homme, s))

    def test_affirming_the_consequent(self):
        rule = Conn(Op.IMPLIES, App(self.homme, s), App(self.mortel, s))
        with pytest.raises(AntecedentMismatch):
            modus_ponens(rule, App(self.mortel, s))

    def test_alpha_equivalent_antecedent(self):
        rule = term("(forall x. homme(x)) -> mortel(s)")
        assert modus_ponens(rule, term("forall y. homme(y)")) == App(self.mortel, s)


# properties over generated well-typed terms

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def generated(seed, depth=6):
    rng = random.Random(seed)
    stype = rng.choice([T, T, ET, E, EET, fn(ET, T)])
    return TermGen(rng).term(stype, depth), stype


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_type_preserved_and_terminates(seed):
    t, stype = generated(seed)
    assert infer_type(t) == stype
    trace = beta_normalize(t, max_steps=10_000)
    assert infer_type(trace.final) == stype
    assert not has_redex(trace.final)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_confluence_of_strategies(seed):
    t, _ = generated(seed)
    lo = beta_normalize(t).final
    ri = beta_normalize(t, RIGHTMOST_INNERMOST).final
    assert alpha_eq(lo, ri)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_normalization_never_adds_free_variables(seed):
    rng = random.Random(seed)
    ctx = {"x": E, "P": ET}
    t = TermGen(rng).term(T, 5, ctx)
    assert free_vars(beta_normalize(t).final) <= free_vars(t)


def rename_bound(t, suffix="_r"):
    """An alpha-variant of ``t`` with every binder renamed."""
    if isinstance(t, (Lam, Quant)):
        old = t.param if isinstance(t, Lam) else t.var
        new = Var(old.name + suffix, old.stype)
        body = substitute(t.body, old, new)
        body = rename_bound(body, suffix)
        return Lam(new, body) if isinstance(t, Lam) else Quant(t.kind, new, body)
    if isinstance(t, App):
        return App(rename_bound(t.fn, suffix), rename_bound(t.arg, suffix))
    if isinstance(t, Not):
        return Not(rename_bound(t.body, suffix))
    if isinstance(t, Conn):
        return Conn(t.op, rename_bound(t.left, suffix), rename_bound(t.right, suffix))
    if isinstance(t, Eq):
        return Eq(rename_bound(t.left, suffix), rename_bound(t.right, suffix))
    return t


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_substitution_respects_alpha_equivalence(seed):
    rng = random.Random(seed)
    gen = TermGen(rng)
    ctx = {"x": E, "y": E}
    t = gen.term(T, 4, ctx)
    variant = rename_bound(t)
    assert alpha_eq(t, variant)
    s = gen.term(E, 2, {"x": E, "z": E})
    assert alpha_eq(substitute(t, x, s), substitute(variant, x, s))
