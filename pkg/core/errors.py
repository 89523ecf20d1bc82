"""Exception types shared by the model, solvers and CLI."""


class SudokuDualityError(Exception):
    """Base class for every error raised by this project."""


class DomainError(SudokuDualityError, ValueError):
    """An operation was called outside its precondition."""


class ConstructionError(SudokuDualityError, ValueError):
    """An instance, permutation or certificate failed validation.

    Args:
        message: Human readable description
        item: The offending value (given, slot, component, ...)
    """

    def __init__(self, message, item=None):
        super().__init__(message)
        self.item = item


class CapabilityError(SudokuDualityError):
    """The oracle was asked for a size it cannot enumerate."""


class InvariantViolation(SudokuDualityError, AssertionError):
    """An internal invariant that must always hold was broken."""


class PuzzleParseError(SudokuDualityError, ValueError):
    """A puzzle or certificate file could not be parsed.

    Args:
        message: What went wrong
        line: 1-based line number, if known
        column: 1-based token column, if known
    """

    def __init__(self, message, line=None, column=None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column
