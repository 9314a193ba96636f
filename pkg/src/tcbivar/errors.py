"""Shared error types for the bound engine and frontend."""

from __future__ import annotations


class TcbivarError(Exception):
    """Base class for all package errors."""


class GraphValidationError(TcbivarError):
    """A problem graph is structurally malformed (bad ids, type mismatches)."""


class ContradictionDetected(TcbivarError):
    """Input facts are mutually inconsistent: some interval became empty.

    Carries the derivation trace accumulated up to the failing tightening so
    the conflict can be localized.
    """

    def __init__(self, message: str, trace=(), node: str | None = None,
                 quantity: str | None = None):
        super().__init__(message)
        self.trace = list(trace)
        self.node = node
        self.quantity = quantity


class IterationLimitExceeded(TcbivarError):
    """Propagation did not reach a fixpoint within the iteration budget."""
