"""Exception hierarchy shared by every module of the package."""


class VanKampenError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(VanKampenError):
    """A value violates a structural invariant (bad ids, non-composable letters, ...)."""


class CompositionError(StructuralError):
    """Two words or paths were composed with mismatched endpoints."""


class ContractError(VanKampenError):
    """A caller broke an operation's precondition."""


class CoverageError(VanKampenError):
    """A family of pieces fails to cover the base complex."""

    def __init__(self, message, uncovered=()):
        super().__init__(message)
        self.uncovered = tuple(uncovered)


class HypothesisError(VanKampenError):
    """The base set misses a path-component that it is required to meet."""

    def __init__(self, message, components=()):
        super().__init__(message)
        self.components = tuple(components)


class BudgetError(VanKampenError):
    """A search exceeded its configured budget."""


class DocumentError(VanKampenError):
    """An instance document failed validation."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
