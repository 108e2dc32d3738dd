"""Exception hierarchy shared across the kernel and its front ends."""

from __future__ import annotations


class FocalError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FocalError):
    """Concrete-syntax error, with byte offset and expected-token set."""

    def __init__(self, offset: int, expected: set[str], found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        want = ", ".join(sorted(expected))
        super().__init__(f"offset {offset}: expected {want}, found {found}")


class NotSuspensionNormal(FocalError):
    """A suspended proposition was required to be atomic but is not."""


class CheckError(FocalError):
    """A proof term or derivation failed to check.

    ``path`` locates the first offending node, as a tuple of field names
    from the root.
    """

    def __init__(self, path: tuple[str, ...], message: str):
        self.path = path
        where = "/".join(path) if path else "root"
        super().__init__(f"{where}: {message}")


class TypeMismatch(CheckError):
    pass


class UnboundVariable(CheckError):
    pass


class WrongSort(CheckError):
    pass


class NotStable(CheckError):
    pass


class OmegaNonEmpty(CheckError):
    pass


class RuleMismatch(CheckError):
    """An unfocused derivation node does not match its sequent."""


class PremiseMismatch(FocalError):
    """An admissible-rule combinator was handed premises of the wrong shape."""


class ErasureMismatch(FocalError):
    """Focalization input derivation does not live at the target's erasure."""


class CheckFailure(FocalError):
    """An input derivation that was required to check does not."""
