"""Exception types raised across the package."""


class ComogradError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRecord(ComogradError):
    """A coordinate-file record could not be parsed."""


class NoCaAtoms(ComogradError):
    """The chain selector matched no alpha-carbon atoms."""


class GridTooSmall(ComogradError):
    """Distance matrix below the minimum size the rescaler accepts."""


class OddDimension(ComogradError):
    """Wavelet analysis needs an even image dimension."""


class KindMismatch(ComogradError):
    """Descriptors of incompatible kinds were combined or compared."""


class BadMagic(ComogradError):
    """Byte stream does not start with the feature-store magic."""


class UnsupportedVersion(ComogradError):
    """Feature store written with an unknown format version."""


class CorruptRecord(ComogradError):
    """Feature store content violates the format or its invariants."""


class ParamsMismatch(ComogradError):
    """Query descriptor params differ from the database header."""


class EmptyDatabase(ComogradError):
    """Operation needs at least one database entry."""


class MissingLabel(ComogradError):
    """A query or result id has no classification label."""


class InsufficientResults(ComogradError):
    """A ranked list is shorter than the requested evaluation depth."""


class MalformedLine(ComogradError):
    """A classification-file line could not be parsed."""


class UnknownId(ComogradError):
    """An id was requested that the database does not contain."""
