"""Semantic types over the atoms ``e`` and ``t`` and type decoration of trees."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    AmbiguousOrientation,
    FormatError,
    MissingLexEntry,
    NotComposable,
    TypeClash,
)


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fn:
    input: "SemType"
    output: "SemType"

    def __str__(self):
        return f"<{self.input},{self.output}>"


SemType = Union[Atom, Fn]

E = Atom("e")
T = Atom("t")


def fn(*types: SemType) -> SemType:
    """Right-nested function type: ``fn(e, e, t) == <e,<e,t>>``."""
    if len(types) == 1:
        return types[0]
    return Fn(types[0], fn(*types[1:]))


def compose(t1: SemType, t2: SemType) -> SemType:
    if isinstance(t1, Fn) and t1.input == t2:
        return t1.output
    raise NotComposable(t1, t2)


def is_boolean(t: SemType) -> bool:
    """True for ``t`` and every type whose final output is ``t``.

    Connectives operate pointwise on these types.
    """
    while isinstance(t, Fn):
        t = t.output
    return t == T


def arity(t: SemType) -> int:
    n = 0
    while isinstance(t, Fn):
        n += 1
        t = t.output
    return n


_TYPE_TOKEN = re.compile(r"\s*(?:(<)|(>)|(,)|(e|t)\b)")


def parse_type(text: str) -> SemType:
    """Read the concrete syntax ``e | t | <Type,Type>``."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormatError(f"bad type syntax {text!r} at offset {pos}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def read(i):
        if i >= len(tokens):
            raise FormatError(f"truncated type {text!r}")
        tok = tokens[i]
        if tok == "e":
            return E, i + 1
        if tok == "t":
            return T, i + 1
        if tok != "<":
            raise FormatError(f"unexpected {tok!r} in type {text!r}")
        a, i = read(i + 1)
        if i >= len(tokens) or tokens[i] != ",":
            raise FormatError(f"expected ',' in type {text!r}")
        b, i = read(i + 1)
        if i >= len(tokens) or tokens[i] != ">":
            raise FormatError(f"expected '>' in type {text!r}")
        return Fn(a, b), i + 1

    result, end = read(0)
    if end != len(tokens):
        raise FormatError(f"trailing input in type {text!r}")
    return result


@dataclass(frozen=True)
class TypedTree:
    """A parse tree whose nodes carry semantic types.

    ``fn_index`` is set on binary nodes: the index (0 or 1) of the child
    acting as the function in the composition.
    """

    label: str
    stype: SemType
    children: tuple[TypedTree, ...] = ()
    fn_index: int | None = None

    @property
    def is_leaf(self):
        return not self.children


def type_tree(tree, lex, require_t: bool = True) -> TypedTree:
    """Decorate ``tree`` with semantic types drawn from ``lex``.

    Leaves take the type of their lexicon entry (looked up under the parent
    category), unary nodes copy their child's type and binary nodes compose
    whichever orientation type-checks. With ``require_t`` the root must come
    out as ``t``.
    """
    if tree.is_leaf:
        raise MissingLexEntry(tree.label, None)
    typed = _type_node(tree, lex)
    if require_t and typed.stype != T:
        raise TypeClash(f"{tree.label}: sentence has type {typed.stype}, expected t")
    return typed


def _type_leaf(leaf, category, lex) -> TypedTree:
    entry = lex.lookup(leaf.label, category)
    if entry is None:
        raise MissingLexEntry(leaf.label, category)
    return TypedTree(leaf.label, entry.stype)


def _type_node(node, lex) -> TypedTree:
    kids = tuple(
        _type_leaf(c, node.label, lex) if c.is_leaf else _type_node(c, lex)
        for c in node.children
    )
    if len(kids) == 1:
        return TypedTree(node.label, kids[0].stype, kids)

    left, right = kids
    results = []
    for fn_index, (f, a) in enumerate(((left, right), (right, left))):
        try:
            results.append((fn_index, compose(f.stype, a.stype)))
        except NotComposable:
            pass
    if not results:
        raise TypeClash(f"{node.label}: neither {left.stype} x {right.stype} nor {right.stype} x {left.stype} composes")
    if len(results) == 2:
        raise AmbiguousOrientation(f"{node.label}: both {left.stype} x {right.stype} and {right.stype} x {left.stype} compose")
    fn_index, out = results[0]
    return TypedTree(node.label, out, kids, fn_index)


def node_types(tt: TypedTree) -> list[tuple[str, SemType]]:
    """Preorder list of (label, type) pairs; convenient for golden checks."""
    out = [(tt.label, tt.stype)]
    for c in tt.children:
        out.extend(node_types(c))
    return out
