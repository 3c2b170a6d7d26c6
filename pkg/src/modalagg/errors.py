"""Exception hierarchy shared by all modules."""


class ModalAggError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(ModalAggError, ValueError):
    """A frame, residue or procedure parameter is outside its valid range."""


class ParseError(ModalAggError, ValueError):
    """Malformed formula text.

    ``position`` is the 0-based offset of the first offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AgendaError(ModalAggError, ValueError):
    """Formula does not belong to the agenda family of the frame."""


class ConsistencyError(ModalAggError, ValueError):
    """An operation that needs a consistent judgment pair got an inconsistent one."""


class ResourceError(ModalAggError, RuntimeError):
    """Brute-force oracle refused an instance above its size guard."""
