"""Exception hierarchy.

Everything raised on bad input derives from :class:`InputError` (CLI exit 2).
:class:`InvariantViolation` marks a broken internal guarantee (CLI exit 3).
"""


class MetricDivError(Exception):
    pass


class InputError(MetricDivError, ValueError):
    pass


class DisconnectedGraph(InputError):
    pass


class DegenerateGraph(InputError):
    pass


class NonpositiveLength(InputError):
    pass


class DuplicateID(InputError):
    pass


class UnknownID(InputError):
    pass


class PointOffGraph(InputError):
    pass


class OffsetOutOfRange(InputError):
    pass


class EmptySet(InputError):
    pass


class EmptyTargets(InputError):
    pass


class MalformedSet(InputError):
    pass


class NotProper(InputError):
    pass


class NotConvex(InputError):
    pass


class EpsTooLarge(InputError):
    pass


class NotEffective(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class NonIntegerLengths(InputError):
    pass


class GroundSetTooLarge(InputError):
    pass


class TooLarge(InputError):
    pass


class SolverNotAvailable(MetricDivError):
    pass


class InvariantViolation(MetricDivError, RuntimeError):
    """An internal guarantee failed; carries a diagnostic payload."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}


class IterationBoundExceeded(InvariantViolation):
    pass
