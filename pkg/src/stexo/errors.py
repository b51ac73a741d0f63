"""Shared exception types.

The pipeline reports bad *mathematical* input as an InvalidInput verdict, not
an exception.  Exceptions are for malformed data structures, out-of-range
degrees, and broken internal invariants.
"""


class StexoError(Exception):
    """Base class for everything raised deliberately by this package."""


class ModelMismatchError(StexoError):
    """Two objects that must live on the same model do not."""


class TruncationError(StexoError):
    """The requested value could change if the model had more cells."""


class ValidationError(StexoError):
    """A structural precondition failed (bad faces, bad map, bad table)."""


class TrivialCoverError(StexoError):
    """A claimed double cover is trivial (characteristic class vanishes)."""


class InternalInvariantError(StexoError):
    """A consistency check that should never fail did fail."""
