"""Special values of Dedekind zeta functions, effective Northcott bounds and heights."""

from zetalab.errors import (
    ContractViolation,
    ConventionError,
    DomainError,
    UnconvergedError,
    ZetalabError,
)

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "ConventionError",
    "DomainError",
    "UnconvergedError",
    "ZetalabError",
    "__version__",
]
