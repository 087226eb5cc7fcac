"""Exception types shared across the interpreter."""
from __future__ import annotations


class MutexlogError(Exception):
    """Base class; carries an optional source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}, col {self.col}: {self.message}"
        return self.message


class LexError(MutexlogError):
    pass


class ParseError(MutexlogError):
    pass


class MalformedClauseError(MutexlogError):
    """Clause head is not an atom (a variable or an integer)."""


class MalformedModuleError(ParseError):
    """mod(...) applied to something that is not a plain atom."""


class ModuleError(MutexlogError):
    pass


class HeaderlessModuleError(ModuleError):
    pass


class DuplicateModuleError(ModuleError):
    pass


class UnknownModuleError(ModuleError):
    pass


class CyclicModuleError(ModuleError):
    pass


class InstantiationError(MutexlogError):
    """A builtin was still non-ground when its result was required."""


class GoalError(MutexlogError):
    """A goal that is not provable by construction, e.g. mod(n) in goal position."""
