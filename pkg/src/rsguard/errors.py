"""Exception types shared across the toolkit."""


class RsGuardError(Exception):
    """Base class for all rsguard errors."""


class BadMagic(RsGuardError):
    """Input does not start with the P6 magic."""


class MalformedHeader(RsGuardError):
    """PPM header is syntactically invalid."""


class UnsupportedMaxval(RsGuardError):
    """PPM maxval is not 255."""


class Truncated(RsGuardError):
    """Fewer bytes/bits available than the header declares."""


class MessageTooLong(RsGuardError):
    """Message length does not fit in the 32-bit frame header."""


class NeedTooLarge(RsGuardError):
    """More positions requested than exist."""


class CapacityExceeded(RsGuardError):
    """Message does not fit in the cover image."""


class CorruptHeader(RsGuardError):
    """Extracted frame header is impossible; wrong key or no message."""


class OutOfRange(RsGuardError):
    """Value outside the domain of the requested flipping function."""


class GroupTooSmall(RsGuardError):
    """Pixel group too short for the variation measure."""


class LengthMismatch(RsGuardError):
    """Sequences that must have equal length do not."""


class BadMask(RsGuardError):
    """Flipping mask is invalid or inconsistent with the group length."""


class DimensionMismatch(RsGuardError):
    """Two images that must share dimensions do not."""


class MessageLost(RsGuardError):
    """Post-hardening verification failed to recover the message."""
