"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class OddRuleCodeError(DomainError):
    """Wolfram code maps 000 to 1, so finite support would not be preserved."""


class ResourceLimitError(RuntimeError):
    """A size guard was exceeded (e.g. a bitmap too large to materialize)."""
