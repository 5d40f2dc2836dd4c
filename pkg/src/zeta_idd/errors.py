"""Exception hierarchy shared by all modules."""


class ZetaIddError(Exception):
    """Base class; ``code`` is the machine-readable tag emitted by the CLI."""

    code = "ERROR"


class DomainError(ZetaIddError, ValueError):
    code = "DOMAIN"


class CapacityError(ZetaIddError, ValueError):
    code = "CAPACITY"


class FormatError(ZetaIddError, ValueError):
    code = "FORMAT"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ZetaIddError, ValueError):
    code = "VALIDATION"


class ConsistencyError(ZetaIddError, ValueError):
    code = "CONSISTENCY"


class PoleProximityError(ZetaIddError, ValueError):
    code = "POLE_PROXIMITY"
