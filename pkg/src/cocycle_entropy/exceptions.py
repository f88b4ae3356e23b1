"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BoundError(ValueError):
    """A request exceeds a configured computational bound."""
