"""Exception types shared across the package."""


class ProxikeyError(Exception):
    """Base class for all package errors."""


class CodecError(ProxikeyError):
    """Raised when an encoded block cannot be decoded."""


class QueryClassError(ProxikeyError):
    """Raised for queries this engine does not support (exit code 2)."""


class VerificationError(ProxikeyError):
    """Raised when an index fails an integrity check (exit code 3)."""


class EngineInvariantError(ProxikeyError):
    """Internal invariant violation; indicates a bug, not bad input."""
