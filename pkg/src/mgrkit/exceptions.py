"""Exception types raised across mgrkit."""


class InvalidArgument(ValueError):
    """Bad shape, non-finite entry, or out-of-range parameter."""


class SingularMatrixError(ArithmeticError):
    """A pivot fell below the singular threshold during LU factorisation."""


class ValidationError(ValueError):
    """A distance matrix failed validation.

    ``violations`` holds ``(kind, indices)`` tuples, e.g.
    ``("triangle", (0, 1, 2))`` or ``("asymmetric", (1, 3))``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        shown = ", ".join(f"{kind} {idx}" for kind, idx in self.violations[:8])
        more = len(self.violations) - 8
        if more > 0:
            shown += f", ... ({more} more)"
        super().__init__(f"invalid distance matrix: {shown}")


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
