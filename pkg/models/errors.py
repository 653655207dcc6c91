class LeonardError(Exception):
    """Base error; exit_code is what the command line returns for it."""

    exit_code = 1

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


# Input / usage errors
class ParseError(LeonardError):
    exit_code = 2


class InvalidInput(ParseError):
    """Input that does not match its schema; carries the expected JSON schema."""

    def __init__(self, detail: str = "", schema=None):
        super().__init__(detail)
        self.schema = schema


class InvalidField(LeonardError):
    exit_code = 2


class SizeMismatch(LeonardError):
    exit_code = 2


# Field and matrix arithmetic
class DimensionMismatch(LeonardError):
    pass


class FieldMismatch(LeonardError):
    pass


class DivisionByZero(LeonardError):
    pass


class SingularMatrix(LeonardError):
    pass


class EmptyPolynomial(LeonardError):
    pass


# Parameter arrays
class DegenerateDenominator(LeonardError):
    pass


class NoQInField(LeonardError):
    pass


class InconsistentSequence(LeonardError):
    pass


class ConstraintViolated(LeonardError):
    pass


class IndexOutOfRange(LeonardError):
    pass


class InvalidParameters(LeonardError):
    def __init__(self, detail: str = "", report=None, field=None):
        super().__init__(detail)
        self.report = report
        self.field = field


# Matrix-level systems
class RepeatedEigenvalue(LeonardError):
    pass


class NotAnEigenvalue(LeonardError):
    pass


class NotALeonardSystem(LeonardError):
    pass


class NotALeonardPair(LeonardError):
    pass


class NotMultiplicityFree(NotALeonardPair):
    pass


class NotTridiagonalizable(NotALeonardPair):
    pass


# Polynomial data
class InconsistentData(LeonardError):
    pass


class ZeroDenominator(LeonardError):
    pass
