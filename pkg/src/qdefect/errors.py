"""Exception types shared across qdefect."""

from __future__ import annotations


class QdefectError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(QdefectError):
    """An exhaustive search would enumerate more elements than allowed."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"search needs {required} elements, budget is {budget}")
        self.required = required
        self.budget = budget


class Inconsistent(QdefectError):
    """A linear system over F2 has no solution."""


class NotOrthogonal(QdefectError):
    """The X and Z generator matrices do not commute."""

    def __init__(self, x_row: int, z_row: int):
        super().__init__(f"row {x_row} of P and row {z_row} of Q overlap on an odd number of qubits")
        self.x_row = x_row
        self.z_row = z_row


class NotErasable(QdefectError):
    """A qubit set supports a nontrivial logical operator."""

    def __init__(self, message: str, witness=None, side: str | None = None):
        super().__init__(message)
        self.witness = witness
        self.side = side


class ConditionFailed(QdefectError):
    """The defect construction's erasability condition does not hold."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class PreconditionFailed(QdefectError):
    """A statement verifier's hypothesis is violated.

    ``which`` names the failing hypothesis (``"a"`` or ``"b"``); ``report``
    carries whatever was computed before the failure was detected.
    """

    def __init__(self, which: str, message: str, report: dict | None = None):
        super().__init__(f"precondition ({which}) failed: {message}")
        self.which = which
        self.report = report or {}


class NoSupportedRepresentative(QdefectError):
    """No element of a coset is supported on the requested index set."""


class InfeasibleSpec(QdefectError):
    """A random-matrix specification cannot be realised."""
