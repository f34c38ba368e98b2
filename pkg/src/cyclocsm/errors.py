"""Exception types shared by the library and the CLI."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(ZeroDivisionError):
    """Evaluation requested at a pole (s = 1)."""


class ArithmeticOverflowError(OverflowError):
    """A result does not fit the signed 64-bit contract."""


class ResourceError(RuntimeError):
    """A memory or result-count budget would be exceeded."""


class ConvergenceError(RuntimeError):
    """A numerical product or series failed to converge within its cap."""
