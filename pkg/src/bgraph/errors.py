"""Exception hierarchy shared by the library and the CLI."""


class BGraphError(Exception):
    """Base class for every error raised by bgraph."""

    exit_code = 1


class SpecParseError(BGraphError, ValueError):
    """A group-spec string does not match the grammar."""

    exit_code = 2


class UnsupportedGroupError(SpecParseError):
    """The group string parses, but the family does not accept the requested order."""


class CapExceededError(BGraphError):
    """The group order is larger than the configured cap."""

    exit_code = 3


class NotASubgroupError(BGraphError, ValueError):
    """A carrier handed to a subgroup-only routine is not closed."""


class InconsistencyError(BGraphError, RuntimeError):
    """Two computations that must agree did not. Indicates a bug."""

    exit_code = 1


class UnsupportedFamilyError(BGraphError, ValueError):
    """No closed-form star forest exists for this (family, prime) pair."""

    exit_code = 2


class InvalidPrimeError(UnsupportedFamilyError):
    pass


class SizeRefusalError(BGraphError):
    """The requested output would be too large to emit."""

    exit_code = 5
