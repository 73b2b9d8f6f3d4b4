"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetError(RuntimeError):
    """A brute-force evaluation would exceed the configured operation budget."""


class SchemaError(ValueError):
    """An input document does not match the expected JSON schema.

    Parameters
    ----------
    path : str
        JSON path of the offending element, e.g. ``$.w.values[1]``.
    message : str
        Human readable description.
    """

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
