"""Exception types shared across the package."""


class PdlargError(Exception):
    """Base class for every error raised by this package."""


class VocabularyError(PdlargError):
    """A formula mentions an atom outside the governing vocabulary."""


class CapacityError(PdlargError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, message, cap_name=None, cap=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap = cap


class OrderConflictError(PdlargError):
    """A relation that must be a strict partial order contains a cycle."""

    def __init__(self, message, cycle=()):
        super().__init__(message)
        self.cycle = tuple(cycle)


class ParseError(PdlargError):
    """Syntax error in formula or theory text, with a 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class ValidationError(PdlargError):
    """A theory violates one of its structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class InputError(PdlargError):
    """Malformed input to an operation (e.g. sequences over differing rule sets)."""
