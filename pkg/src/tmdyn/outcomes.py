"""Verdicts returned by simulations and orbit analysis.

Every verdict is relative to a step budget: ``Unresolved`` never means
"does not halt" or "is not periodic", only that the budget ran out first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Halted:
    output: Any
    steps: int

    kind = "halted"


@dataclass(frozen=True)
class Periodic:
    period: int
    preperiod: int

    kind = "periodic"

    def __post_init__(self):
        if self.period < 1 or self.preperiod < 0:
            raise ValueError(f"invalid cycle ({self.period}, {self.preperiod})")


@dataclass(frozen=True)
class Unresolved:
    budget: int
    last: Any = None

    kind = "unresolved"


def verdict_dict(v) -> dict:
    """JSON-friendly view of a verdict (the ``last`` payload is dropped)."""
    if isinstance(v, Halted):
        out = v.output
        return {"kind": "halted", "steps": v.steps,
                "output": out.to_string() if hasattr(out, "to_string") else str(out)}
    if isinstance(v, Periodic):
        return {"kind": "periodic", "period": v.period, "preperiod": v.preperiod}
    if isinstance(v, Unresolved):
        return {"kind": "unresolved", "budget": v.budget}
    raise TypeError(f"not a verdict: {v!r}")
