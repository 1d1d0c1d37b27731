"""Exception hierarchy shared by all modules."""


class AntipowerError(Exception):
    """Base class for library errors."""


class WordError(AntipowerError, ValueError):
    """Invalid word, alphabet or morphism data."""


class MorphismSyntaxError(WordError):
    """The morphism DSL text could not be parsed."""


class NotUniformError(WordError):
    """An operation needs an r-uniform morphism."""


class RadiusError(NotUniformError):
    """The morphism is 1-uniform; operations here need r >= 2."""


class CapExceeded(AntipowerError, RuntimeError):
    """A word would grow past the configured materialization cap."""


class CacheFormatError(WordError):
    """Malformed or unsupported prefix cache file."""


class NotStabilized(AntipowerError, RuntimeError):
    """A prefix-based estimate did not stabilize before the cap."""


class ClassificationError(AntipowerError):
    """The hypotheses of a construction are not (known to be) met."""
