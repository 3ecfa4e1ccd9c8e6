"""Exception hierarchy shared by the whole package."""

from __future__ import annotations


class QDurrmeyerError(Exception):
    """Base class for every error raised by :mod:`qdurrmeyer`."""


class DomainError(QDurrmeyerError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class HypothesisError(DomainError):
    """A theorem hypothesis (such as ``q*r < R``) is violated."""


class ConvergenceError(QDurrmeyerError, ArithmeticError):
    """A truncated infinite sum did not reach its tolerance within the term cap."""
