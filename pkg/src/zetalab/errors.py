class ZetalabError(Exception):
    """Base class for every error raised by this package."""


class ContractViolation(ZetalabError):
    """An input broke a documented precondition (arity, identifiers, irreducibility...)."""


class DomainError(ZetalabError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnconvergedError(ZetalabError):
    """A numerical procedure hit its cap before reaching the requested tolerance."""


class ConventionError(ZetalabError):
    """Two independent evaluation routes disagree beyond tolerance."""
