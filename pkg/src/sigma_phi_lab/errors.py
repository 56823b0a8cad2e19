"""Exception hierarchy shared by every layer of the package."""


class SigmaPhiError(Exception):
    """Base class for all errors raised by sigma_phi_lab."""


class DomainError(SigmaPhiError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(SigmaPhiError, ValueError):
    """A request exceeds a configured memory cap or the 64-bit width guarantee."""


class ConfigError(SigmaPhiError, ValueError):
    """A scan configuration is internally inconsistent."""


class CacheFormatError(SigmaPhiError):
    """An SPF cache file is corrupt, truncated, or of an unsupported version.

    ``offset`` is the byte offset of the first detected problem, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class InvariantViolation(SigmaPhiError, ArithmeticError):
    """A mathematical fact that must always hold was observed to fail."""
