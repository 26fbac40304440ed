class FormprimeError(Exception):
    """Base class for errors raised by formprime."""


class DomainError(FormprimeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(FormprimeError, RuntimeError):
    """A request exceeds the configured memory/size budget."""
