"""Exception types raised by the toolkit.

Everything derives from ``ClusterError`` (itself a ``ValueError``) so callers
can catch mathematical failures in one place.  ``InputError`` marks malformed
user input (bad text forms, wrong dimensions) as opposed to a mathematical
"no" answer; the CLI maps the two onto different exit codes.
"""


class ClusterError(ValueError):
    pass


class InputError(ClusterError):
    """Malformed input: unparsable text, inconsistent dimensions, bad index."""


class DimensionError(InputError):
    pass


class DivisionByZero(ClusterError):
    def __init__(self, msg="division by zero"):
        super().__init__(msg)


class NotDivisible(ClusterError):
    def __init__(self, msg="not divisible"):
        super().__init__(msg)


class NotCompatible(ClusterError):
    pass


class NotSkewSymmetrizable(ClusterError):
    pass


class RankDeficient(ClusterError):
    pass


class LambdaSingular(ClusterError):
    def __init__(self, msg="Lambda singular"):
        super().__init__(msg)


class OutsideWindow(ClusterError):
    def __init__(self, exponent):
        self.exponent = tuple(exponent)
        super().__init__(f"monomial outside g-window: {self.exponent}")


class TableIncomplete(ClusterError):
    def __init__(self, msg="table incomplete"):
        super().__init__(msg)


class NotLogCanonical(ClusterError):
    def __init__(self, i, j, quotient=None):
        self.pair = (i, j)
        self.quotient = quotient
        super().__init__(f"not log-canonical at ({i},{j})")


class NotLocallyStandard(ClusterError):
    def __init__(self, msg, block=None, pair=None):
        self.block = block
        self.pair = pair
        super().__init__(msg)


class NotStandardShape(ClusterError):
    def __init__(self, exponent):
        self.exponent = tuple(exponent)
        super().__init__(f"not of standard shape at {self.exponent}")


class ScalarMismatch(ClusterError):
    def __init__(self, e, f, ke=None, kf=None):
        self.pair = (tuple(e), tuple(f))
        self.scalars = (ke, kf)
        super().__init__(f"scalar mismatch between {tuple(e)} and {tuple(f)}")


class NotInP(ClusterError):
    """A g-transform handed to the classifier fails the symmetry or center test."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"g fails the membership test: {report.summary()}")
