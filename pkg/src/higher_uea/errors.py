class DigitOverflowError(ValueError):
    pass


class FieldError(ValueError):
    """Invalid field construction or mixed-field arithmetic."""


class SpecMismatchError(FieldError):
    pass


class InsufficientFieldError(FieldError):
    pass


class InvalidChiError(ValueError):
    pass


class InvalidWeightError(ValueError):
    pass


class LevelError(ValueError):
    pass


class ContextMismatchError(ValueError):
    pass


class LiftError(RuntimeError):
    pass


class InvalidExtensionError(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """A computed object contradicts a structural statement that must hold."""


class ResourceGuardError(RuntimeError):
    pass
