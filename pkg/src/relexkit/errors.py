"""Exception types shared across the toolkit.

Every error carries an ``exit_code`` so the command-line layer can map
failures onto the documented convention: 1 for usage/configuration
problems, 2 for bad or inconsistent data, 3 for internal assertions.
"""


class RelexkitError(Exception):
    exit_code = 2


class UserError(RelexkitError):
    """Bad invocation: missing inputs, invalid options or configuration."""

    exit_code = 1


class DataError(RelexkitError):
    """Malformed or inconsistent data encountered while processing."""

    exit_code = 2


class ConlluParseError(DataError):
    """A CoNLL-U line could not be parsed.

    ``line`` is the 1-based physical line number of the offending row.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class GraphStructureError(DataError):
    """A dependency graph violates a structural requirement."""


class AnchorNotUniqueError(DataError):
    """The graph does not have exactly one in-degree-0 node."""


class NoPathError(DataError):
    """Source and target live in different connected components."""


class NotFoundError(DataError):
    """The knowledge base has no entity for the requested identifier."""


class TransportError(DataError):
    """A network or cache-miss failure; retrying may succeed."""


class IndexFormatError(DataError):
    """An index file has an unknown version or a failing checksum."""


class KeyModeMismatchError(UserError):
    """An index built with one key mode was used in a pipeline configured
    with the other."""
