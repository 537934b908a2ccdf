"""Exception types shared across the toolkit."""

from __future__ import annotations


class DefcalcError(Exception):
    """Base class for all toolkit errors."""


class DomainError(DefcalcError):
    """An argument falls outside the mathematical domain of an operation."""


class PoleError(DefcalcError):
    """Evaluation requested at (or within tolerance of) a pole."""


class ConvergenceError(DefcalcError):
    """A series or iteration exhausted its budget before converging."""


class EvaluationError(DefcalcError):
    """A function evaluation failed (out-of-domain builtin, non-finite result).

    Carries the offending expression node and argument when raised by the
    expression evaluator.
    """

    def __init__(self, message: str, node=None, argument=None):
        super().__init__(message)
        self.node = node
        self.argument = argument


class StepFailure(DefcalcError):
    """The adaptive step controller underflowed the step size."""


class DegenerateInput(DefcalcError):
    """An input makes the requested quantity undefined (e.g. f'(x) = 0 in a ratio)."""


class UnsupportedDerivative(DefcalcError):
    """Symbolic differentiation was requested for a non-differentiable builtin."""


class ParseError(DefcalcError):
    """Expression syntax error with source position and token context."""

    def __init__(self, position: int, expected: str, found: str):
        super().__init__(f"at position {position}: expected {expected}, found {found}")
        self.position = position
        self.expected = expected
        self.found = found
