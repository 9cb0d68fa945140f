"""Exception hierarchy shared by the library and the command line."""


class FSignatureError(Exception):
    """Base class for every error raised by cyclic_fsignature."""


class InvalidGroupError(FSignatureError, ValueError):
    """The datum 1/n(1,a) does not describe a small cyclic group."""


class CharacteristicError(FSignatureError, ValueError):
    """The Frobenius datum (p, e) is unusable for the group."""


class LabelError(FSignatureError, ValueError):
    """A module label, digit input or series index is out of range."""


class NonSpecialModuleError(FSignatureError, ValueError):
    """The requested module is not a special CM module."""


class GuardExceededError(FSignatureError, ValueError):
    """A desk-scale size guard would be exceeded."""


class UnknownFormatError(FSignatureError, ValueError):
    """Unsupported export format."""


class HomWeightError(FSignatureError, ValueError):
    """A hom monomial does not have the weight of Hom(source, target)."""


class UsageError(FSignatureError, ValueError):
    """Command line options are missing or inconsistent."""


class InvariantViolation(FSignatureError, RuntimeError):
    """A structural invariant of the theory failed to hold."""
