"""Shared exception types.  The CLI maps these onto exit codes."""


class DomainError(ValueError):
    """An argument is outside an operation's domain (wrong parity, wrong
    group, non-coprime moduli, ...)."""


class GroupMismatchError(DomainError):
    """Two values that must live in the same group do not."""


class NotASubsetError(DomainError):
    """difference(B, A) needs A contained in B; carries a violating element."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class ResourceCapError(RuntimeError):
    """A configured size or budget cap would be exceeded."""


class VerificationError(RuntimeError):
    """An internal consistency check that must always hold has failed."""
