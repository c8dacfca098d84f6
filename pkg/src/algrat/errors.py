"""Exception hierarchy shared by all modules.

Every error raised on purpose by the package derives from :class:`AlgratError`
so the command line front end can map it to exit code 1.
"""


class AlgratError(Exception):
    """Base class for computation errors."""


# numcore
class DegreeZero(AlgratError):
    pass


class NonConvergence(AlgratError):
    pass


class FloatModeUnsupported(AlgratError):
    pass


class EmptyInput(AlgratError):
    pass


class DegreeTooLow(AlgratError):
    pass


# algfun
class EquationSyntaxError(AlgratError):
    """Malformed defining equation; ``position`` is the 0-based column."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class ZeroLeadingCoefficient(AlgratError):
    pass


class NotBivariate(AlgratError):
    pass


# recursion
class InitLengthMismatch(AlgratError):
    pass


class ZeroDenominatorSequence(AlgratError):
    pass


class PoleLocusPoint(AlgratError):
    pass


class IndeterminateRatio(AlgratError):
    pass


# spectrum
class PoleOfCoefficients(AlgratError):
    pass


class NotDominantPoint(AlgratError):
    """Raised at points where the symbol has no dominant root.

    The offending :class:`~algrat.spectrum.SpectrumReport` is attached as
    ``report`` so callers can decide how to treat points on or near the
    equimodular set.
    """

    def __init__(self, report):
        self.report = report
        super().__init__(f"z={report.z!r} is not a dominant point ({report.kind.value})")


# loci
class EmptyWindow(AlgratError):
    pass


class GridTooCoarse(UserWarning):
    pass


class IdenticallyZeroMu(AlgratError):
    pass


class DegenerateResultant(AlgratError):
    pass


# poles
class ProbeTooClose(AlgratError):
    pass


# experiments
class InsufficientProjection(AlgratError):
    pass
