"""Exception hierarchy.

Every error raised on purpose by the package derives from ``JordanSymError``
so callers (the CLI in particular) can separate mathematical failures from
bugs.
"""


class JordanSymError(Exception):
    """Base class for all package errors."""


class InputError(JordanSymError, ValueError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class CheckFailed(JordanSymError):
    """A mathematical verification failed (maps to CLI exit code 1)."""


class NotHermitian(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class ParseError(InputError):
    pass


class InfeasibleWitness(InputError):
    pass


class NotValidated(CheckFailed):
    pass


class OracleInconsistent(CheckFailed):
    pass


class DecompositionInconsistent(CheckFailed):
    pass


class KindMismatch(InputError):
    pass


class SingularExtraction(CheckFailed):
    pass


class FlagMismatch(InputError):
    pass


class OutOfBall(InputError):
    pass


class NotDensity(InputError):
    pass


class NotOnSphere(InputError):
    pass


class InequivalentStates(InputError):
    pass


class EqualRays(InputError):
    pass


class NotRank2(InputError):
    pass


class NotJordan(CheckFailed):
    pass
