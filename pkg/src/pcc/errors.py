"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class GraphFormatError(ValueError):
    """Malformed `.ecg` or certificate text; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran out of node budget before deciding."""

    def __init__(self, what: str, budget: int):
        self.budget = budget
        super().__init__(f"{what}: budget of {budget} expansions exceeded")


class SearchFailure(Exception):
    """A constructive algorithm could not produce its witness.

    ``stage`` names the step that gave up and ``residual`` holds whatever
    partial structure the caller may want to inspect (for instance the stuck
    cycle family of a 2-factor search).
    """

    def __init__(self, reason: str, stage: str = "", residual: Any = None, **info: Any):
        self.reason = reason
        self.stage = stage
        self.residual = residual
        self.info = info
        super().__init__(f"[{stage}] {reason}" if stage else reason)
