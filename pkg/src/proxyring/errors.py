"""Exception types shared across the library."""


class ProxyRingError(Exception):
    """Base class for all library errors."""


class UsageError(ProxyRingError):
    """Caller violated an API precondition (bad index, wrong key, bad tag)."""


class AuthorizationError(ProxyRingError):
    """A key is not covered by the warrant it is being used under."""


class DecodeError(ProxyRingError):
    """Wire bytes failed to decode into a valid object."""


class ValidationError(ProxyRingError):
    """An input object fails its own consistency checks (e.g. a delegation
    token whose warrant signature does not verify)."""
