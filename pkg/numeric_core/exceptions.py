# numeric_core/exceptions.py

class CollectorLabError(Exception):
    """Base class for errors raised by collectorlab services."""
    pass


class DomainError(CollectorLabError, ValueError):
    """Raised when an argument lies outside an operation's domain."""
    pass


class TableTooLargeError(DomainError):
    """Raised when a whole-table request exceeds the configured storage cap."""

    def __init__(self, cells, limit):
        self.cells = cells
        self.limit = limit
        super().__init__(
            f"Table of {cells} cells exceeds MAX_TABLE_CELLS={limit}; "
            f"stream the rows instead"
        )
