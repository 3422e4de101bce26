"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: parameter errors exit 1,
resource/precision errors exit 2, integrity and internal-consistency
errors exit 4.  A refuted convexity certificate is not an error (exit 3).
"""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured resource budget."""


class PrecisionError(ResourceError):
    """The certified brackets are too wide to conclude; increase L."""


class IntegrityError(RuntimeError):
    """A persisted artifact failed validation on load."""


class InternalConsistencyError(RuntimeError):
    """An invariant that should be unreachable was violated."""
