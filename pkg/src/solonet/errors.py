"""Exception types raised across solonet."""


class SoloNetError(Exception):
    """Base class for every error raised by this package."""


# score ingestion
class MusicXMLError(SoloNetError, ValueError):
    pass


class MalformedXml(MusicXMLError):
    pass


class UnsupportedRoot(MusicXMLError):
    pass


class MissingDivisions(MusicXMLError):
    pass


class ZeroDuration(MusicXMLError):
    pass


class UnknownPart(SoloNetError, KeyError):
    pass


class SpanOutOfRange(SoloNetError, ValueError):
    pass


class EmptySelection(SoloNetError, ValueError):
    pass


# melody model
class EmptyInput(SoloNetError, ValueError):
    pass


class RangeExceeded(SoloNetError, ValueError):
    pass


# network and metrics
class CapExceeded(SoloNetError, ValueError):
    pass


class EmptyNetwork(SoloNetError, ValueError):
    pass


class UndefinedMetric(SoloNetError, ValueError):
    pass


class NoConvergence(SoloNetError, RuntimeError):
    def __init__(self, iterations, residual):
        super().__init__(f"power iteration did not converge after {iterations} iterations (residual {residual:.3e})")
        self.iterations = iterations
        self.residual = residual


# baselines
class TooManyEdges(SoloNetError, ValueError):
    pass


class DegenerateNetwork(SoloNetError, ValueError):
    pass


# stats
class InsufficientData(SoloNetError, ValueError):
    pass


class InsufficientGroups(SoloNetError, ValueError):
    pass


# cli
class ManifestError(SoloNetError, ValueError):
    pass


class UnknownArtist(SoloNetError, KeyError):
    pass
