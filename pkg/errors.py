# errors.py
"""Exception kinds raised across the library. The CLI maps them to exit codes."""


class NotSquarefree(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class ZeroIdeal(ValueError):
    pass


class NotSubmodule(ValueError):
    pass


class NotPrime(ValueError):
    pass


class NotInE(ValueError):
    """Raised when a Motzkin member test is asked about an ideal not containing 1."""


class DegenerateLattice(ValueError):
    pass


class StateFormatError(ValueError):
    """A resume file could not be parsed."""


class InvariantViolation(RuntimeError):
    """A lemma-level invariant failed during a computation. Always a bug."""
