"""Exception hierarchy shared across the package."""


class ChainSpecError(Exception):
    """Base class for every error raised by chainspec."""


# chain strings

class ChainStringError(ChainSpecError, ValueError):
    pass


class EmptyInputError(ChainStringError):
    pass


class MalformedTokenError(ChainStringError):
    pass


class NotConnectedError(ChainStringError):
    """Leading 1-run or trailing 0-run: the graph would have isolated vertices."""


class OddBlockCountError(ChainStringError):
    pass


class InvalidRangeError(ChainSpecError, ValueError):
    pass


# exact polynomial kernel

class SizeLimitError(ChainSpecError, ValueError):
    pass


class ZeroPolynomialError(ChainSpecError, ValueError):
    pass


# spectra

class NonRealRootsError(ChainSpecError, ArithmeticError):
    pass


class AmbiguousSignError(ChainSpecError, ArithmeticError):
    pass


class UndecidableError(ChainSpecError, ArithmeticError):
    """Two isolating intervals could not be separated within the refinement cap."""


class NoConvergenceError(ChainSpecError, ArithmeticError):
    pass


# theorem suite / census

class PreconditionViolatedError(ChainSpecError, ValueError):
    pass


class CrossCheckFailedError(ChainSpecError, AssertionError):
    pass


class PersistenceFailureError(ChainSpecError, OSError):
    pass
