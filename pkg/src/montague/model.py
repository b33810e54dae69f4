"""Finite models and truth evaluation of terms."""

from __future__ import annotations

import enum
import itertools
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .errors import (
    ArityError,
    FormatError,
    HigherOrderLambda,
    ModelError,
    TypeMismatch,
    UnboundVariable,
    UnknownConstant,
)
from .lambdalog import App, Conn, Const, Eq, Lam, Not, Op, Quant, Quantifier, Term, Var, beta_normalize
from .semtype import E, T, Fn, SemType, arity, fn, parse_type


class Truth(enum.Enum):
    VRAI = "vrai"
    FAUX = "faux"

    def __bool__(self):
        return self is Truth.VRAI

    def __str__(self):
        return self.value

    @classmethod
    def of(cls, b: bool) -> "Truth":
        return cls.VRAI if b else cls.FAUX


VRAI, FAUX = Truth.VRAI, Truth.FAUX


@dataclass(frozen=True)
class Entity:
    name: str

    def __str__(self):
        return self.name


class Func:
    """A finite function, compared pointwise."""

    __slots__ = ("_table", "_hash")

    def __init__(self, table: Mapping):
        self._table = dict(table)
        self._hash = None

    def __call__(self, x):
        try:
            return self._table[x]
        except KeyError:
            raise ArityError(f"{x} is outside the domain of this function") from None

    def items(self):
        return self._table.items()

    def keys(self):
        return self._table.keys()

    def __len__(self):
        return len(self._table)

    def __eq__(self, other):
        return isinstance(other, Func) and self._table == other._table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._table.items()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self._table.items())
        return "{" + inner + "}"


SemValue = Union[Entity, Truth, Func]


@dataclass(frozen=True)
class World:
    entities: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entities", tuple(self.entities))
        if not self.entities:
            raise ModelError("a world needs at least one entity")
        if len(set(self.entities)) != len(self.entities):
            raise ModelError("entity names must be unique")

    def __iter__(self):
        return (Entity(n) for n in self.entities)

    def __contains__(self, item):
        return isinstance(item, Entity) and item.name in self.entities


def domain(stype: SemType, world: World) -> list[SemValue]:
    """Every value of ``stype`` over ``world`` (functions enumerated in full)."""
    if stype == E:
        return list(world)
    if stype == T:
        return [VRAI, FAUX]
    ins = domain(stype.input, world)
    outs = domain(stype.output, world)
    return [Func(zip(ins, combo)) for combo in itertools.product(outs, repeat=len(ins))]


@dataclass
class Model:
    world: World
    interpretation: dict[str, tuple[SemType, SemValue]]

    def value(self, name: str) -> tuple[SemType, SemValue]:
        try:
            return self.interpretation[name]
        except KeyError:
            raise UnknownConstant(f"constant {name} has no interpretation in the model") from None


# truth tables

_TABLE = {
    Op.AND: lambda p, q: p and q,
    Op.OR: lambda p, q: p or q,
    Op.IMPLIES: lambda p, q: (not p) or q,
    Op.IFF: lambda p, q: p == q,
}


def eval_connective(op: Op | str, v1: Truth, v2: Truth | None = None) -> Truth:
    if isinstance(op, str):
        op = Op[op.upper()]
    if op is Op.NOT:
        if v2 is not None:
            raise ArityError("NOT takes one operand")
        return Truth.of(not v1)
    if v2 is None:
        raise ArityError(f"{op.name} takes two operands")
    return Truth.of(_TABLE[op](bool(v1), bool(v2)))


def _pointwise(op, v1, v2=None):
    if isinstance(v1, Truth):
        return eval_connective(op, v1, v2)
    if v2 is None:
        return Func({k: _pointwise(op, v) for k, v in v1.items()})
    return Func({k: _pointwise(op, v, v2(k)) for k, v in v1.items()})


# interpretation


def interpret(t: Term, m: Model, a: Mapping[Var, Entity] | None = None) -> SemValue:
    """Value of ``t`` in ``m`` under the assignment ``a``."""
    return _interp(t, m, dict(a or {}))


def _interp(t, m, a):
    if isinstance(t, Const):
        stype, value = m.value(t.name)
        if stype != t.stype:
            raise TypeMismatch(f"constant {t.name} is {t.stype} in the term but {stype} in the model")
        return value
    if isinstance(t, Var):
        try:
            return a[t]
        except KeyError:
            raise UnboundVariable(f"variable {t.name} has no value") from None
    if isinstance(t, App):
        return _interp(t.fn, m, a)(_interp(t.arg, m, a))
    if isinstance(t, Lam):
        if t.param.stype != E:
            raise HigherOrderLambda(f"cannot interpret abstraction over {t.param.name} : {t.param.stype}")
        return Func({d: _interp(t.body, m, {**a, t.param: d}) for d in m.world})
    if isinstance(t, Not):
        return _pointwise(Op.NOT, _interp(t.body, m, a))
    if isinstance(t, Conn):
        return _pointwise(t.op, _interp(t.left, m, a), _interp(t.right, m, a))
    if isinstance(t, Quant):
        values = (_interp(t.body, m, {**a, t.var: d}) for d in m.world)
        if t.kind is Quantifier.FORALL:
            return Truth.of(all(values))
        return Truth.of(any(values))
    if isinstance(t, Eq):
        return Truth.of(_interp(t.left, m, a) == _interp(t.right, m, a))
    raise TypeError(f"not a term: {t!r}")


def evaluate_sentence(g, lex, m: Model, sentence: str) -> Truth:
    from .translate import translate_sentence

    return interpret(translate_sentence(g, lex, sentence), m, {})


# validation


@dataclass(frozen=True)
class IncompleteFunction:
    constant: str
    missing: tuple[str, ...]

    def __str__(self):
        return f"IncompleteFunction({self.constant}: no value for {', '.join(self.missing)})"


@dataclass(frozen=True)
class UnknownEntity:
    constant: str
    entity: str

    def __str__(self):
        return f"UnknownEntity({self.constant} -> {self.entity})"


@dataclass(frozen=True)
class ShapeMismatch:
    constant: str
    detail: str

    def __str__(self):
        return f"ShapeMismatch({self.constant}: {self.detail})"


def validate_model(m: Model) -> list:
    diags = []
    for name, (stype, value) in m.interpretation.items():
        _validate(name, stype, value, m.world, (), diags)
    return diags


def _validate(name, stype, value, world, path, diags):
    where = "".join(f"({p})" for p in path)
    if stype == E:
        if not isinstance(value, Entity):
            diags.append(ShapeMismatch(name, f"{where or 'value'} should be an entity, got {value!r}"))
        elif value not in world:
            diags.append(UnknownEntity(name, value.name))
        return
    if stype == T:
        if not isinstance(value, Truth):
            diags.append(ShapeMismatch(name, f"{where or 'value'} should be vrai/faux, got {value!r}"))
        return
    if not isinstance(value, Func):
        diags.append(ShapeMismatch(name, f"{where or 'value'} should be a function of type {stype}"))
        return
    expected = domain(stype.input, world)
    missing = [k for k in expected if k not in value.keys()]
    if missing:
        diags.append(IncompleteFunction(name, tuple(f"{name}{where}({k})" for k in missing)))
    extra = [k for k in value.keys() if k not in expected]
    for k in extra:
        if isinstance(k, Entity):
            diags.append(UnknownEntity(name, k.name))
        else:
            diags.append(ShapeMismatch(name, f"argument {k!r} is not of type {stype.input}"))
    for k, v in value.items():
        if k in expected:
            _validate(name, stype.output, v, world, path + (k,), diags)


# model files

_FACT = re.compile(r"^(?P<pred>[^\s(]+)\s*(?P<args>(?:\(\s*[^()\s]+\s*\)\s*)+)=\s*(?P<val>\S+)$")
_ARG = re.compile(r"\(\s*([^()\s]+)\s*\)")


def parse_model(text: str, source: str | None = None) -> Model:
    """Read ``entity``, ``const`` and ``fact`` declarations.

    Atomic facts not listed are false.
    """
    entities: list[str] = []
    consts: dict[str, str] = {}
    facts: dict[str, dict[tuple[str, ...], Truth]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = unicodedata.normalize("NFC", raw).strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "entity":
            if not rest or len(rest.split()) != 1:
                raise ModelError("expected 'entity <name>'", source, lineno)
            if rest in entities:
                raise ModelError(f"entity {rest} declared twice", source, lineno)
            entities.append(rest)
        elif keyword == "const":
            m = re.match(r"^(\S+)\s*:\s*(.+?)\s*=\s*(\S+)$", rest)
            if not m:
                raise ModelError("expected 'const <name> : <type> = <entity>'", source, lineno)
            name, type_text, entity = m.groups()
            try:
                stype = parse_type(type_text)
            except FormatError as exc:
                raise ModelError(str(exc), source, lineno) from None
            if stype != E:
                raise ModelError(f"const {name} must have type e; use 'fact' lines for predicates", source, lineno)
            if name in consts:
                raise ModelError(f"constant {name} declared twice", source, lineno)
            consts[name] = entity
        elif keyword == "fact":
            m = _FACT.match(rest)
            if not m:
                raise ModelError("expected 'fact <pred>(<arg>)... = vrai|faux'", source, lineno)
            pred, val = m.group("pred"), m.group("val")
            if val not in ("vrai", "faux"):
                raise ModelError(f"truth value must be vrai or faux, not {val!r}", source, lineno)
            args = tuple(_ARG.findall(m.group("args")))
            table = facts.setdefault(pred, {})
            if table and len(next(iter(table))) != len(args):
                raise ModelError(f"predicate {pred} used with different arities", source, lineno)
            table[args] = Truth(val)
        else:
            raise ModelError(f"unknown declaration {keyword!r}", source, lineno)

    try:
        world = World(tuple(entities))
    except ModelError as exc:
        raise ModelError(str(exc), source) from None

    def resolve(arg):
        # logical constants first, then bare entity names
        name = consts.get(arg, arg)
        if name not in world.entities:
            raise ModelError(f"{arg} names no entity", source)
        return Entity(name)

    interp: dict[str, tuple[SemType, SemValue]] = {}
    for name, entity in consts.items():
        if entity not in world.entities:
            raise ModelError(f"const {name} refers to undeclared entity {entity}", source)
        interp[name] = (E, Entity(entity))
    for pred, table in facts.items():
        if pred in interp:
            raise ModelError(f"{pred} is both a constant and a predicate", source)
        n = len(next(iter(table)))
        resolved = {tuple(resolve(x) for x in args): v for args, v in table.items()}
        interp[pred] = (fn(*([E] * n), T), _curried(resolved, list(world), n))
    return Model(world, interp)


def _curried(table, entities, n, prefix=()):
    if n == 0:
        return table.get(prefix, FAUX)
    return Func({d: _curried(table, entities, n - 1, prefix + (d,)) for d in entities})


def load_model(path) -> Model:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read model: {exc.strerror}", str(path)) from None
    return parse_model(text, str(path))


def render_value(v: SemValue) -> str:
    if isinstance(v, Func):
        return "{" + ", ".join(f"{render_value(k)}: {render_value(x)}" for k, x in v.items()) + "}"
    return str(v)
