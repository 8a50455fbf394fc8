"""Exception hierarchy shared by every recurcode module."""


class RecurcodeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RecurcodeError):
    """Malformed input: bad recurrence spec, alphabet violation, shape mismatch."""


class RangeError(ValidationError):
    """A value does not fit the representable range implied by its parameters."""


class FrameError(RecurcodeError):
    """A token stream or cipher text does not frame into whole blocks."""


class DecodeError(RecurcodeError):
    """Decoding failed: out-of-range label group, inexact division, negative entry.

    Distinct from a checksum mismatch; this signals structural corruption or a
    wrong key.
    """
