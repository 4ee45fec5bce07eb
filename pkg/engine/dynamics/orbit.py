"""
Orbit iteration f, A[f], A^2[f], ... with exact repeat detection.

Every new iterate is compared against the whole history, so the first
repeat found gives the minimal pre-period and then the minimal period.
"""

from dataclasses import dataclass
from typing import List, Optional

from core.config_loader import load_config
from core.errors import InvalidParameter, ZeroFunction
from core.langfuse_integration import log_event
from symbolic.canon import CanonicalFunction, apply_A, equals

NOTE_ZERO_FUNCTION = "zero_function"
NOTE_TERM_LIMIT = "term_limit"


@dataclass(frozen=True)
class OrbitReport:
    iterates: List[CanonicalFunction]
    preperiod: Optional[int]
    period: Optional[int]
    truncated: bool
    note: Optional[str] = None

    @property
    def is_periodic(self) -> bool:
        return self.preperiod == 0 and self.period is not None

    @property
    def zero_step(self) -> Optional[int]:
        """Index of the iterate that collapsed to the zero function."""
        if self.note == NOTE_ZERO_FUNCTION:
            return len(self.iterates) - 1
        return None


def orbit(f: CanonicalFunction, max_steps: Optional[int] = None,
          max_terms: Optional[int] = None) -> OrbitReport:
    cfg = load_config()["orbit"]
    max_steps = cfg["max_steps"] if max_steps is None else max_steps
    max_terms = cfg["max_terms"] if max_terms is None else max_terms
    if max_steps < 1:
        raise InvalidParameter("max_steps must be at least 1")
    if f.is_zero():
        raise ZeroFunction()

    iterates = [f]
    preperiod = period = None
    truncated = True
    note = None

    for step in range(1, max_steps + 1):
        g = apply_A(iterates[-1])
        iterates.append(g)
        if g.is_zero():
            # A is undefined on the zero function
            truncated, note = False, NOTE_ZERO_FUNCTION
            break
        match = next((i for i, prev in enumerate(iterates[:-1]) if equals(prev, g)), None)
        if match is not None:
            preperiod, period, truncated = match, step - match, False
            break
        if g.size() > max_terms:
            note = NOTE_TERM_LIMIT
            break

    log_event(
        "orbit",
        steps=len(iterates) - 1,
        preperiod=preperiod,
        period=period,
        truncated=truncated,
        note=note,
    )
    return OrbitReport(iterates, preperiod, period, truncated, note)
