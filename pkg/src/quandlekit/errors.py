"""Exception hierarchy shared by every module."""

from __future__ import annotations


class QuandleKitError(Exception):
    """Base class; ``witness`` carries whatever data exhibits the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainError(QuandleKitError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(QuandleKitError):
    """A closure or search grew past its configured cap."""


class TableError(DomainError):
    """A raw operation table is not square or has out-of-range entries."""


class AxiomError(QuandleKitError):
    """A table violates one of the three quandle axioms.

    ``axiom`` is ``"i"``, ``"ii"`` or ``"iii"``.
    """

    def __init__(self, axiom: str, message: str, witness=None):
        super().__init__(message, witness)
        self.axiom = axiom


class HomomorphismError(QuandleKitError):
    """A map fails ``f(x |> y) == f(x) |> f(y)``; witness is ``(x, y)``."""


class NotSurjectiveError(DomainError):
    pass


class NotConnectedError(DomainError):
    """Witness is the orbit partition of the offending quandle."""


class NotNormalError(DomainError):
    """Witness is ``(g, n)`` with ``g^-1 n g`` outside the subgroup."""


class NotRealizableError(DomainError):
    """Witness is an element of the closure missing from the subgroup."""


class PresentationError(DomainError):
    """A coset presentation ``(G, H, eta)`` fails one of its requirements."""


class ConsistencyError(QuandleKitError, AssertionError):
    """Two computations that must agree did not. Always a bug."""
