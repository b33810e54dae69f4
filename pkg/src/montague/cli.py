"""Command-line driver: ``montague <command> [options] "<sentence>"``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import data_path
from .errors import MontagueError, NoParse
from .grammar import load_grammar, parse
from .lambdalog import to_text
from .model import interpret, load_model
from .translate import analyze, load_lexicon, tokenize

COMMANDS = ("parse", "types", "translate", "eval", "pipeline")


class ConfigError(MontagueError):
    code = "Config"


@dataclass(frozen=True)
class PipelineConfig:
    grammar_path: Path
    lexicon_path: Path
    model_path: Path | None
    command: str
    all_parses: bool = False
    trace: bool = False
    unicode: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.command in ("eval", "pipeline") and self.model_path is None:
            raise ConfigError(f"{self.command} needs --model")


def _render_tree(node, line, depth=0, out=None):
    out = [] if out is None else out
    out.append("  " * depth + line(node))
    for c in node.children:
        _render_tree(c, line, depth + 1, out)
    return out


def render_parse(tree) -> list[str]:
    return _render_tree(tree, lambda n: n.label)


def render_types(typed) -> list[str]:
    return _render_tree(typed, lambda n: f"{n.label} : {n.stype}")


def render_translation(tr, unicode=False, trace=False) -> list[str]:
    lines = _render_tree(tr, lambda n: f"{n.label} : {n.stype} = {to_text(n.term, unicode)}")
    if trace:
        # bottom-up, the order in which the reductions happen
        for n in reversed(list(tr.nodes())):
            if n.trace is None or not n.trace.steps:
                continue
            lines.append(f"reduction at {n.label}:")
            lines.append("  " + to_text(n.trace.start, unicode))
            lines.extend("  => " + to_text(s, unicode) for s in n.trace.steps)
    lines.append(f"formula: {to_text(tr.term, unicode)}")
    return lines


def run(config: PipelineConfig, sentence: str, out=None, err=None) -> int:
    """Execute one command; returns the process exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        lines = _run(config, sentence)
    except MontagueError as exc:
        msg = " ".join(str(exc).split())
        print(f"ERROR:{exc.code}:{msg}", file=err)
        return exc.exit_status
    for line in lines:
        print(line, file=out)
    return 0


def _run(config, sentence):
    g = load_grammar(config.grammar_path)
    lex = load_lexicon(config.lexicon_path)
    model = load_model(config.model_path) if config.model_path is not None else None
    cmd = config.command

    if cmd == "parse":
        # parsing does not need types, so stop before type checking
        tokens = tokenize(sentence, lex)
        trees = parse(g, tokens)
        if not trees:
            raise NoParse(f"no parse for {' '.join(tokens)!r}")
        if not config.all_parses:
            trees = trees[:1]
        return _sections([render_parse(t) for t in trees])

    analyses = analyze(g, lex, sentence, config.all_parses)
    blocks = []
    for a in analyses:
        if cmd == "types":
            blocks.append(render_types(a.typed))
        elif cmd == "translate":
            blocks.append(render_translation(a.translated, config.unicode, config.trace))
        elif cmd == "eval":
            blocks.append([str(interpret(a.formula, model, {}))])
        else:
            value = interpret(a.formula, model, {})
            blocks.append(
                ["== parse =="] + render_parse(a.tree)
                + ["== types =="] + render_types(a.typed)
                + ["== translate =="] + render_translation(a.translated, config.unicode, config.trace)
                + ["== eval ==", str(value)]
            )
    return _sections(blocks)


def _sections(blocks):
    if len(blocks) == 1:
        return blocks[0]
    lines = []
    for i, b in enumerate(blocks, 1):
        lines.append(f"# parse {i} of {len(blocks)}")
        lines.extend(b)
    return lines


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="montague", description="Parse, translate and evaluate sentences.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("sentence")
    p.add_argument("--grammar", type=Path, default=data_path("francais.grammar"), help="grammar file (default: bundled French fragment)")
    p.add_argument("--lexicon", type=Path, default=data_path("francais.lexicon"), help="lexicon file (default: bundled French fragment)")
    p.add_argument("--model", type=Path, help="model file; required by eval and pipeline")
    p.add_argument("--all-parses", action="store_true", help="process every parse, not only the first")
    p.add_argument("--trace", action="store_true", help="show each reduction step")
    p.add_argument("--unicode", action="store_true", help="print terms with λ ∀ ∃ ∧ ...")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = PipelineConfig(args.grammar, args.lexicon, args.model, args.command, args.all_parses, args.trace, args.unicode)
    except ConfigError as exc:
        print(f"ERROR:{exc.code}:{exc}", file=sys.stderr)
        return exc.exit_status
    return run(config, args.sentence)


if __name__ == "__main__":
    sys.exit(main())
