"""Exception hierarchy shared by all modules."""


class PslabError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""


class MalformedInputError(PslabError, ValueError):
    """Input text, file or argument does not follow the expected format."""


class InvalidSignotopeError(PslabError, ValueError):
    """A sign map violates the 4-subset condition."""


class FlipRejectedError(PslabError, ValueError):
    """Toggling the requested triple would give an invalid signotope."""


class DimensionError(PslabError, ValueError):
    """Two objects that must have the same number of lines do not."""


class OrderError(PslabError, ValueError):
    """The pair of signotopes is not comparable in the requested direction."""


class ResourceGuardError(PslabError):
    """Requested exhaustive computation exceeds the configured limit."""


class ParallelLinesError(PslabError, ValueError):
    """Two input lines have the same slope."""


class DegeneracyError(PslabError, ValueError):
    """Input geometry is not in general position."""


class ColoringError(PslabError, ValueError):
    """Coloring has the wrong length or is not bicolored where required."""


class UnsatisfiableError(PslabError, ValueError):
    """No coloring can exist (e.g. a hyperedge of size one)."""
