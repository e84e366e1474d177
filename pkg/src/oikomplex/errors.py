"""Exception types raised by the library."""


class OIError(Exception):
    pass


class CompositionError(OIError, ValueError):
    """Two OI-morphisms were composed whose widths do not match."""


class WidthMismatchError(OIError, ValueError):
    """Objects living in different widths were combined."""


class MissingAssignmentError(OIError, KeyError):
    """An evaluation point does not assign a value to some variable."""


class AlgebraMismatchError(OIError, ValueError):
    pass


class NotWidthZeroError(OIError, ValueError):
    """A construction that needs a width-0 generated free module got something else."""


class ParseError(OIError, ValueError):
    pass
