"""Result containers shared across modules."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class MethodTag(str, enum.Enum):
    """Evaluation route that produced a value."""

    INTEGRAL = "integral"
    SERIES12 = "series12"
    HORN13 = "horn13"
    HORN14 = "horn14"
    CLOSED_Q1 = "closed_q1"
    AUTO = "auto"

    @classmethod
    def parse(cls, text: str) -> "MethodTag":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {text!r}; expected one of {names}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EvalResult:
    """Value of one evaluation plus its bookkeeping.

    ``work`` counts terms, shells or integrand nodes depending on the route.
    ``method`` is None for the low-level primitives (2F1, Horn engine).
    """

    value: complex
    abs_err_est: float
    work: int
    method: MethodTag | None = None

    def __post_init__(self):
        if not self.abs_err_est >= 0.0:
            raise ValueError("abs_err_est must be >= 0")
        if self.work < 0:
            raise ValueError("work must be >= 0")
