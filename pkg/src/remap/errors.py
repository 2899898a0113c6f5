"""Exception types shared across the package."""


class RemapError(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbol(RemapError):
    """A sequence contains a symbol outside the machine's input alphabet."""


class AlphabetMismatch(RemapError):
    """Two machines that must share an alphabet do not."""


class IncompleteMachine(RemapError):
    """An operation requires a total transition function but got a partial one."""


class BadRegex(RemapError):
    """A regular expression could not be parsed over the given alphabet."""


class UnsupportedPattern(RemapError):
    """Nondeterminism repair only handles the documented two-guard overlap."""


class SchemaError(RemapError):
    """A machine file does not match the documented JSON schema."""


class UnknownPrefix(RemapError):
    """row() was asked about a sequence outside S and S·Σ."""


class NotUnified(RemapError):
    """A table check ran before the table was filled and unified."""


class ValueConflict(RemapError):
    """Two different output values were asserted for one equivalence class."""


class CyclicOrder(RemapError):
    """The strict inequalities contain a cycle (an inconsistent teacher)."""


class Unsatisfiable(RemapError):
    """No assignment of output values satisfies the constraint store."""


class InconsistentTeacher(RemapError):
    """The learning loop hit contradictory teacher answers and aborted.

    Carries a diagnostic transcript (constraint dump plus query counters)
    in ``transcript`` when available.
    """

    def __init__(self, message: str, transcript: str | None = None):
        super().__init__(message)
        self.transcript = transcript


class BadConfig(RemapError):
    """A run or session configuration is internally inconsistent."""


class SessionClosed(RemapError):
    """The interactive session was closed while a query was outstanding."""


class InvalidAnswer(RemapError):
    """A teacher answer does not match the pending question's domain."""


class WrongQuestionId(RemapError):
    """An answer referenced a question that is not the pending one."""
