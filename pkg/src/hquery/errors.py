"""Exception hierarchy shared by every stage of the interpreter."""

from __future__ import annotations


class HQueryError(Exception):
    """Base class for all errors raised by hquery."""


class SourceError(HQueryError):
    """An error tied to a location in the script text."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class LexError(SourceError):
    pass


class ParseError(SourceError):
    def __init__(self, line: int, column: int, expected, found: str):
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        alternatives = " or ".join(self.expected) if self.expected else "end of input"
        super().__init__(line, column, f"expected {alternatives}, found {found}")


class CompileError(HQueryError):
    pass


class EvalError(HQueryError):
    """Base for errors raised while a program runs."""


class UnknownVariable(EvalError):
    pass


class UnknownFunction(EvalError):
    pass


class UnknownFormatter(EvalError):
    pass


class TypeMismatch(EvalError):
    pass


class HostError(EvalError):
    """A host (Python) function or formatter failed."""


class InvalidName(HQueryError):
    pass


class BudgetExceeded(EvalError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(
            f"hierarchical query exceeded the node budget of {budget} expansions; "
            "check the STOP WITH clause"
        )


class ScriptRuntimeError(HQueryError):
    """Wraps an :class:`EvalError` with the index of the failing statement."""

    def __init__(self, index: int, cause: Exception, line: int | None = None, column: int | None = None):
        self.index = index
        self.cause = cause
        self.line = line
        self.column = column
        where = f"statement {index}"
        if line is not None:
            where += f" (line {line}, column {column})"
        context = getattr(cause, "context", None)
        if context:
            where += " in " + ", ".join(context)
        super().__init__(f"{where}: {type(cause).__name__}: {cause}")
