"""Exception hierarchy.

Every error a caller can trigger derives from :class:`CanextError`.  The CLI
maps these to exit code 2 (validation failure).
"""

from __future__ import annotations


class CanextError(Exception):
    """Base class for all package errors."""


class InputError(CanextError):
    """Malformed input file or argument."""


class NotAPoset(CanextError):
    pass


class NotALattice(CanextError):
    pass


class NotBounded(CanextError):
    pass


class IndexOutOfRange(CanextError, IndexError):
    pass


class NotAHomomorphism(CanextError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class HomInvalid(NotAHomomorphism):
    pass


class UnknownCorpusName(CanextError, KeyError):
    pass


class NoQuasiOrders(CanextError):
    pass


class WitnessInconsistency(CanextError):
    pass


class NonReflexiveGraph(CanextError):
    pass


class ElementNotInCompletion(CanextError):
    pass


class InconsistentSeed(CanextError):
    pass


class NoSubbasis(CanextError):
    pass


class NotAnMpe(CanextError):
    pass


class ImageNotMaximal(CanextError):
    pass


class TooLarge(CanextError):
    pass


class EmbeddingMismatch(CanextError):
    pass
