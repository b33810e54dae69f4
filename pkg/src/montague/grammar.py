"""Context-free grammars with unary/binary productions and a chart parser.

Symbols are plain strings; whether a name is the start symbol, a
nonterminal or a terminal is a property of the grammar that declares it.
"""

from __future__ import annotations

import itertools
import shlex
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GrammarError, NoOccurrence, UnknownToken

START, NONTERMINAL, TERMINAL = "start", "nonterminal", "terminal"


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def __str__(self):
        return f"{self.lhs} -> {' '.join(_quote(s) for s in self.rhs)}"


def _quote(name):
    return f'"{name}"' if " " in name else name


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple[ParseTree, ...] = ()
    # index of the production used at this node; None on leaves
    production: int | None = field(default=None, compare=False)

    @property
    def is_leaf(self):
        return not self.children

    def productions(self) -> tuple[int, ...]:
        """Production indices in preorder; the deterministic sort key."""
        if self.is_leaf:
            return ()
        out = [self.production]
        for c in self.children:
            out.extend(c.productions())
        return tuple(out)

    def render(self, indent: int = 0) -> str:
        lines = []
        self._render(lines, indent)
        return "\n".join(lines)

    def _render(self, lines, depth):
        lines.append("  " * depth + self.label)
        for c in self.children:
            c._render(lines, depth + 1)


def leaf(word: str) -> ParseTree:
    return ParseTree(word)


def node(label: str, *children: ParseTree) -> ParseTree:
    return ParseTree(label, tuple(children))


class Grammar:
    """A grammar ``(start, nonterminals, terminals, productions)``.

    The start symbol defaults to the left-hand side of the first production.
    Terminals are the symbols that never occur on a left-hand side.
    """

    def __init__(self, productions: Iterable[Production], start: str | None = None):
        self.productions = tuple(productions)
        if start is None:
            if not self.productions:
                raise GrammarError("grammar has no productions and no start symbol")
            start = self.productions[0].lhs
        self.start = start
        lhs_names = {p.lhs for p in self.productions}
        rhs_names = {s for p in self.productions for s in p.rhs}
        self.nonterminals = frozenset(lhs_names - {start})
        self.terminals = frozenset(rhs_names - lhs_names - {start})
        self._check()

        self._by_lhs: dict[str, list[int]] = {}
        self._unary: dict[str, list[int]] = {}
        self._binary: dict[tuple[str, str], list[int]] = {}
        for i, p in enumerate(self.productions):
            self._by_lhs.setdefault(p.lhs, []).append(i)
            if len(p.rhs) == 1:
                self._unary.setdefault(p.rhs[0], []).append(i)
            else:
                self._binary.setdefault(p.rhs, []).append(i)
        self._unary_order = self._topological_unary_order()

    def _check(self):
        seen = set()
        for p in self.productions:
            if not p.lhs or any(not s for s in p.rhs):
                raise GrammarError(f"empty symbol name in {p}")
            if not 1 <= len(p.rhs) <= 2:
                raise GrammarError(f"right-hand side must have 1 or 2 symbols: {p}")
            if self.start in p.rhs:
                raise GrammarError(f"start symbol {self.start} on a right-hand side: {p}")
            if p in seen:
                raise GrammarError(f"duplicate production {p}")
            seen.add(p)

    def _topological_unary_order(self) -> list[str]:
        # edges B -> A for every unary production A -> B; B must be closed first
        succ: dict[str, list[str]] = {}
        indeg: dict[str, int] = {}
        for p in self.productions:
            if len(p.rhs) == 1:
                b, a = p.rhs[0], p.lhs
                succ.setdefault(b, []).append(a)
                indeg[a] = indeg.get(a, 0) + 1
                indeg.setdefault(b, 0)
        order = []
        ready = deque(sorted(s for s, d in indeg.items() if d == 0))
        while ready:
            s = ready.popleft()
            order.append(s)
            for a in succ.get(s, ()):
                indeg[a] -= 1
                if indeg[a] == 0:
                    ready.append(a)
        if len(order) != len(indeg):
            cyclic = sorted(s for s, d in indeg.items() if d > 0)
            raise GrammarError(f"unary production cycle among {', '.join(cyclic)}")
        return order

    def kind(self, name: str) -> str:
        if name == self.start:
            return START
        if name in self.nonterminals:
            return NONTERMINAL
        if name in self.terminals:
            return TERMINAL
        raise KeyError(name)

    def productions_for(self, lhs: str) -> list[Production]:
        return [self.productions[i] for i in self._by_lhs.get(lhs, ())]

    def index(self, p: Production) -> int:
        return self.productions.index(p)

    def __repr__(self):
        return f"Grammar(start={self.start!r}, {len(self.productions)} productions)"

    def to_text(self) -> str:
        return "\n".join(str(p) for p in self.productions) + "\n"


def parse_grammar(text: str, source: str | None = None) -> Grammar:
    """Read the line format ``LHS -> RHS1 [RHS2]``.

    Symbols containing spaces are written in double quotes, e.g.
    ``PRN -> "tout le monde"``.
    """
    prods = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise GrammarError(f"expected 'LHS -> RHS': {raw!r}", source, lineno)
        lhs, rhs = line.split("->", 1)
        try:
            lhs_syms = shlex.split(lhs, posix=True)
            rhs_syms = shlex.split(rhs, posix=True)
        except ValueError as exc:
            raise GrammarError(str(exc), source, lineno) from None
        if len(lhs_syms) != 1:
            raise GrammarError(f"left-hand side must be one symbol: {raw!r}", source, lineno)
        if not 1 <= len(rhs_syms) <= 2:
            raise GrammarError(f"right-hand side must have 1 or 2 symbols: {raw!r}", source, lineno)
        prods.append(Production(lhs_syms[0], tuple(rhs_syms)))
    try:
        return Grammar(prods)
    except GrammarError as exc:
        raise GrammarError(str(exc), source) from None


def load_grammar(path) -> Grammar:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GrammarError(f"cannot read grammar: {exc.strerror}", str(path)) from None
    return parse_grammar(text, str(path))


def apply_production(w: Sequence[str], p: Production, occurrence: int = 0) -> tuple[str, ...]:
    seen = -1
    for i, sym in enumerate(w):
        if sym == p.lhs:
            seen += 1
            if seen == occurrence:
                return tuple(w[:i]) + p.rhs + tuple(w[i + 1 :])
    raise NoOccurrence(f"{p.lhs} does not occur {occurrence + 1} time(s) in {' '.join(w)}")


def parse(g: Grammar, tokens: Sequence[str]) -> list[ParseTree]:
    """All parse trees for ``tokens`` rooted at the start symbol.

    CKY over binary splits with a unary closure per cell. Trees come back
    sorted by the preorder sequence of production indices.
    """
    tokens = list(tokens)
    for tok in tokens:
        if tok not in g.terminals:
            raise UnknownToken(f"{tok!r} is not a terminal of the grammar")
    n = len(tokens)
    if n == 0:
        return []
    chart: dict[tuple[int, int], dict[str, list[ParseTree]]] = {}
    for i, tok in enumerate(tokens):
        cell = {tok: [ParseTree(tok)]}
        _unary_closure(g, cell)
        chart[i, i + 1] = cell
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            cell: dict[str, list[ParseTree]] = {}
            for k in range(i + 1, j):
                left, right = chart[i, k], chart[k, j]
                for b, c in itertools.product(left, right):
                    for pi in g._binary.get((b, c), ()):
                        a = g.productions[pi].lhs
                        trees = cell.setdefault(a, [])
                        for lt, rt in itertools.product(left[b], right[c]):
                            trees.append(ParseTree(a, (lt, rt), pi))
            _unary_closure(g, cell)
            chart[i, j] = cell
    found = chart[0, n].get(g.start, [])
    return sorted(found, key=ParseTree.productions)


def _unary_closure(g: Grammar, cell: dict[str, list[ParseTree]]):
    for sym in g._unary_order:
        below = cell.get(sym)
        if not below:
            continue
        for pi in g._unary.get(sym, ()):
            a = g.productions[pi].lhs
            cell.setdefault(a, []).extend(ParseTree(a, (t,), pi) for t in below)


def yield_of(t: ParseTree) -> tuple[str, ...]:
    if t.is_leaf:
        return (t.label,)
    return tuple(w for c in t.children for w in yield_of(c))


def derivation(g: Grammar, t: ParseTree) -> list[tuple[str, ...]]:
    """Leftmost derivation replaying ``t`` through :func:`apply_production`."""
    forms = [(t.label,)]
    pending = [t]
    while pending:
        current = pending.pop(0)
        if current.is_leaf:
            continue
        p = Production(current.label, tuple(c.label for c in current.children))
        if p not in g.productions:
            raise GrammarError(f"tree uses {p}, which is not a production")
        w = forms[-1]
        # leftmost nonterminal is the one being expanded in a leftmost derivation
        occ = _leftmost_occurrence(g, w, current.label)
        forms.append(apply_production(w, p, occ))
        pending = [c for c in current.children if not c.is_leaf] + pending
    return forms


def _leftmost_occurrence(g, w, label):
    occ = 0
    for sym in w:
        if sym in g.terminals:
            continue
        if sym != label:
            raise GrammarError(f"leftmost nonterminal of {w} is {sym}, not {label}")
        return occ
    raise NoOccurrence(label)


def enumerate_language(g: Grammar, max_tokens: int) -> set[tuple[str, ...]]:
    """Every sentence of length <= ``max_tokens`` derivable from the start.

    Breadth-first leftmost rewriting of sentential forms. Without
    epsilon-productions a form never shrinks, so forms longer than the bound
    are pruned.
    """
    if max_tokens < 1:
        raise ValueError("max_tokens must be >= 1")
    language = set()
    seen = {(g.start,)}
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        pos = next((i for i, s in enumerate(w) if s not in g.terminals), None)
        if pos is None:
            language.add(w)
            continue
        sym = w[pos]
        occ = w[:pos].count(sym)
        for p in g.productions_for(sym):
            nxt = apply_production(w, p, occ)
            if len(nxt) <= max_tokens and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return language
