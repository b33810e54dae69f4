"""Lexicons and the compositional translation of sentences into terms."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import (
    FormatError,
    IllTyped,
    LexiconError,
    MissingLexEntry,
    NoParse,
    UnknownWord,
)
from .grammar import Grammar, ParseTree, parse
from .lambdalog import App, ReductionTrace, Term, alpha_eq, beta_normalize, free_vars, infer_type, parse_term
from .semtype import SemType, TypedTree, parse_type, type_tree


@dataclass(frozen=True)
class LexEntry:
    surface: tuple[str, ...]
    category: str
    term: Term
    stype: SemType

    def __post_init__(self):
        got = infer_type(self.term)
        if got != self.stype:
            raise IllTyped(str(self.term), f"lexicon entry {self.word!r} declared {self.stype} but has type {got}")
        if free_vars(self.term):
            names = ", ".join(sorted(v.name for v in free_vars(self.term)))
            raise IllTyped(str(self.term), f"lexicon entry {self.word!r} has free variables {names}")

    @property
    def word(self) -> str:
        return " ".join(self.surface)


class Lexicon:
    def __init__(self, entries: Iterable[LexEntry]):
        self.entries = tuple(entries)
        self._index: dict[tuple[str, str], LexEntry] = {}
        for e in self.entries:
            key = (e.word, e.category)
            if key in self._index:
                raise LexiconError(f"duplicate entry for {e.word!r} under {e.category}")
            self._index[key] = e
        self.surfaces = frozenset(e.surface for e in self.entries)
        self.longest = max((len(s) for s in self.surfaces), default=0)

    def lookup(self, word: str, category: str) -> LexEntry | None:
        return self._index.get((word, category))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def parse_lexicon(text: str, source: str | None = None) -> Lexicon:
    """Read ``surface | CATEGORY | term | type`` lines.

    Constant types are shared across the whole file, so a constant must be
    used at one type everywhere.
    """
    signature: dict[str, SemType] = {}
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = unicodedata.normalize("NFC", raw).strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        # '|' is also disjunction; the surface, category and type never contain it
        if len(parts) < 4:
            raise LexiconError("expected 'surface | CATEGORY | term | type'", source, lineno)
        surface, category, stype_text = parts[0], parts[1], parts[-1]
        term_text = "|".join(parts[2:-1])
        if not surface or not category:
            raise LexiconError("empty surface or category", source, lineno)
        try:
            stype = parse_type(stype_text)
            term = parse_term(term_text, stype, signature)
            entry = LexEntry(tuple(surface.split()), category, term, stype)
        except (FormatError, IllTyped) as exc:
            raise LexiconError(str(exc), source, lineno) from None
        entries.append(entry)
    try:
        return Lexicon(entries)
    except LexiconError as exc:
        raise LexiconError(str(exc), source) from None


def load_lexicon(path) -> Lexicon:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon: {exc.strerror}", str(path)) from None
    return parse_lexicon(text, str(path))


def tokenize(sentence: str, lex: Lexicon) -> list[str]:
    """Split on whitespace, then merge multiword surfaces by longest match."""
    words = unicodedata.normalize("NFC", sentence).split()
    out, i = [], 0
    while i < len(words):
        for n in range(min(lex.longest, len(words) - i), 0, -1):
            if tuple(words[i : i + n]) in lex.surfaces:
                out.append(" ".join(words[i : i + n]))
                i += n
                break
        else:
            raise UnknownWord(f"{words[i]!r} is not in the lexicon")
    return out


@dataclass(frozen=True)
class TranslatedTree:
    label: str
    stype: SemType
    term: Term
    children: tuple[TranslatedTree, ...] = ()
    fn_index: int | None = None
    # reduction performed at this node, for display
    trace: ReductionTrace | None = field(default=None, compare=False)

    @property
    def is_leaf(self):
        return not self.children

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()


def translate_tree(tt: TypedTree, lex: Lexicon) -> TranslatedTree:
    return _translate(tt, None, lex)


def _translate(tt: TypedTree, category: str | None, lex: Lexicon) -> TranslatedTree:
    if tt.is_leaf:
        entry = lex.lookup(tt.label, category)
        if entry is None:
            raise MissingLexEntry(tt.label, category)
        trace = beta_normalize(entry.term)
        return TranslatedTree(tt.label, tt.stype, trace.final, trace=trace)
    kids = tuple(_translate(c, tt.label, lex) for c in tt.children)
    if len(kids) == 1:
        return TranslatedTree(tt.label, tt.stype, kids[0].term, kids)
    f, a = kids[tt.fn_index], kids[1 - tt.fn_index]
    trace = beta_normalize(App(f.term, a.term))
    term = trace.final
    got = infer_type(term)
    if got != tt.stype:
        raise IllTyped(str(term), f"{tt.label} translated at type {got}, expected {tt.stype}")
    return TranslatedTree(tt.label, tt.stype, term, kids, tt.fn_index, trace)


@dataclass(frozen=True)
class Analysis:
    """Every stage of the pipeline for one parse of a sentence."""

    tokens: tuple[str, ...]
    tree: ParseTree
    typed: TypedTree
    translated: TranslatedTree

    @property
    def formula(self) -> Term:
        return self.translated.term


def analyze(g: Grammar, lex: Lexicon, sentence: str, all_parses: bool = False) -> list[Analysis]:
    tokens = tokenize(sentence, lex)
    trees = parse(g, tokens)
    if not trees:
        raise NoParse(f"no parse for {' '.join(tokens)!r}")
    if not all_parses:
        trees = trees[:1]
    out = []
    for tree in trees:
        typed = type_tree(tree, lex)
        out.append(Analysis(tuple(tokens), tree, typed, translate_tree(typed, lex)))
    return out


def translate_sentence(g: Grammar, lex: Lexicon, sentence: str) -> Term:
    return analyze(g, lex, sentence)[0].formula


def check_compositional(tr: TranslatedTree) -> bool:
    """Every binary node equals its function child applied to its argument."""
    for n in tr.nodes():
        if len(n.children) == 2:
            f, a = n.children[n.fn_index], n.children[1 - n.fn_index]
            if not alpha_eq(n.term, beta_normalize(App(f.term, a.term)).final):
                return False
        elif len(n.children) == 1 and not alpha_eq(n.term, n.children[0].term):
            return False
    return True
