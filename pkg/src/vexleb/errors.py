"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain of the operation (bad point id,
    exponent out of range, malformed field)."""


class PreconditionError(ValueError):
    """A stated hypothesis of an operation fails on the given data.

    Carries an optional witness describing where the hypothesis breaks.
    """

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
        self.witness = witness


class ValidationError(ValueError):
    """A scenario or spec file does not satisfy its schema."""
