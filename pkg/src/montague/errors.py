"""Exception hierarchy shared by every stage of the pipeline.

Each exception carries a short ``code`` (used in ``ERROR:<code>:`` CLI
diagnostics) and an ``exit_status``: 1 for linguistic rejections, 2 for
malformed input files or model coverage problems.
"""


class MontagueError(Exception):
    code = "Error"
    exit_status = 2


class FormatError(MontagueError):
    """A grammar, lexicon, model or term text could not be read."""

    code = "Format"

    def __init__(self, message, source=None, line=None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class GrammarError(FormatError):
    code = "Grammar"


class LexiconError(FormatError):
    code = "Lexicon"


class ModelError(FormatError):
    code = "Model"


class TermSyntaxError(FormatError):
    code = "TermSyntax"


class LinguisticError(MontagueError):
    """The input sentence is rejected by grammar, lexicon or types."""

    exit_status = 1


# grammar


class NoOccurrence(MontagueError):
    code = "NoOccurrence"


class UnknownToken(LinguisticError):
    code = "UnknownToken"


class NoParse(LinguisticError):
    code = "NoParse"


# semantic types


class NotComposable(LinguisticError):
    code = "NotComposable"

    def __init__(self, t1, t2):
        self.t1, self.t2 = t1, t2
        super().__init__(f"{t1} cannot be applied to {t2}")


class TypeClash(LinguisticError):
    code = "TypeClash"


class AmbiguousOrientation(LinguisticError):
    code = "AmbiguousOrientation"


class MissingLexEntry(LinguisticError):
    code = "MissingLexEntry"

    def __init__(self, leaf, category):
        self.leaf, self.category = leaf, category
        super().__init__(f"no lexicon entry for {leaf!r} under {category}")


class UnknownWord(LinguisticError):
    code = "UnknownWord"


# terms


class IllTyped(MontagueError):
    code = "IllTyped"

    def __init__(self, location, reason):
        self.location, self.reason = location, reason
        super().__init__(f"{reason} in {location}")


class TypeMismatch(MontagueError):
    code = "TypeMismatch"


class NotImplication(MontagueError):
    code = "NotImplication"


class AntecedentMismatch(MontagueError):
    code = "AntecedentMismatch"


# evaluation


class UnknownConstant(MontagueError):
    code = "UnknownConstant"


class UnboundVariable(MontagueError):
    code = "UnboundVariable"


class HigherOrderLambda(MontagueError):
    code = "HigherOrderLambda"


class ArityError(MontagueError):
    code = "Arity"
