"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(RuntimeError):
    """An input is valid but exceeds a configured size cap."""


class BudgetExceeded(CapacityError):
    """Estimated work for a sweep exceeds the configured budget."""
