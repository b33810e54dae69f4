"""Compositional semantics: parse sentences, translate them into typed
lambda terms and evaluate those terms in finite models."""

from pathlib import Path

from .errors import MontagueError
from .grammar import Grammar, ParseTree, Production, apply_production, enumerate_language, load_grammar, parse, parse_grammar, yield_of
from .model import FAUX, VRAI, Entity, Func, Model, Truth, World, eval_connective, evaluate_sentence, interpret, load_model, parse_model, validate_model
from .semtype import E, T, Fn, compose, parse_type, type_tree
from .translate import Lexicon, LexEntry, analyze, load_lexicon, parse_lexicon, tokenize, translate_sentence, translate_tree

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    """Path of a bundled grammar, lexicon or model file."""
    return DATA / name


__version__ = "0.1.0"
