class OkbdError(Exception):
    """Base class for every error raised by the engine."""


class InputError(OkbdError, ValueError):
    """Malformed input: wrong vector length, unknown curve label, bad schema."""


class NotPseudoEffectiveError(OkbdError):
    pass


class NotBigError(OkbdError):
    pass


class FlagError(OkbdError):
    """The flag is unusable for the requested computation (mismatch, or its
    curve lies in a base locus the method cannot handle)."""


class NoFanError(OkbdError):
    pass


class InternalConsistencyError(OkbdError):
    """A property that must hold by construction failed."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(InputError):
    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
