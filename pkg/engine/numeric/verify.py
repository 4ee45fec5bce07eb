"""
Sampled cross-checks of symbolic results on the positive real axis.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from core.config_loader import load_config
from core.errors import InsufficientPoints, InvalidParameter
from core.langfuse_integration import log_event
from numeric.evaluate import evaluate_many, numeric_A_many
from symbolic.canon import CanonicalFunction, apply_A


@dataclass(frozen=True)
class SamplePlan:
    lo: float = 0.1
    hi: float = 10.0
    count: int = 64
    pole_guard: float = 1e-8
    seed: int = 42
    tol: float = 1e-6

    def __post_init__(self):
        if not (0 < self.lo < self.hi):
            raise InvalidParameter(f"sample interval needs 0 < lo < hi (got lo={self.lo}, hi={self.hi})")
        if self.count < 1:
            raise InvalidParameter("sample count must be positive")
        if self.pole_guard <= 0:
            raise InvalidParameter("pole guard must be positive")
        if self.tol <= 0:
            raise InvalidParameter("tolerance must be positive")

    @classmethod
    def from_config(cls, **overrides) -> "SamplePlan":
        cfg = load_config()["sampling"]
        plan = cls(
            lo=float(cfg["lo"]),
            hi=float(cfg["hi"]),
            count=int(cfg["count"]),
            pole_guard=float(cfg["pole_guard"]),
            seed=int(cfg["seed"]),
            tol=float(cfg["tol"]),
        )
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(plan, **overrides) if overrides else plan

    def points(self) -> np.ndarray:
        """count points drawn log-uniformly in [lo, hi]."""
        rng = np.random.default_rng(self.seed)
        return np.exp(rng.uniform(math.log(self.lo), math.log(self.hi), size=self.count))

    @property
    def required_points(self) -> int:
        return max(8, math.ceil(self.count / 4))


@dataclass(frozen=True)
class EquivReport:
    max_rel_err: float
    worst_point: float
    points_used: int
    points_skipped: int
    passed: bool


def _report(xs: np.ndarray, a: np.ndarray, b: np.ndarray, usable: np.ndarray,
            plan: SamplePlan) -> EquivReport:
    used = int(np.count_nonzero(usable))
    skipped = int(xs.size - used)
    if used < plan.required_points:
        raise InsufficientPoints(used, plan.required_points)

    with np.errstate(invalid="ignore", over="ignore"):
        scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
        rel = np.abs(a - b) / scale
    rel = np.where(usable, rel, -np.inf)
    # a non-finite error among usable points counts as a failure
    rel = np.where(usable & ~np.isfinite(rel), np.inf, rel)
    worst = int(np.argmax(rel))
    max_rel_err = float(rel[worst])
    return EquivReport(
        max_rel_err=max_rel_err,
        worst_point=float(xs[worst]),
        points_used=used,
        points_skipped=skipped,
        passed=bool(max_rel_err <= plan.tol),
    )


def check_equiv(f: CanonicalFunction, g: CanonicalFunction, plan: Optional[SamplePlan] = None) -> EquivReport:
    plan = plan or SamplePlan.from_config()
    xs = plan.points()
    fv, fden = evaluate_many(f, xs)
    gv, gden = evaluate_many(g, xs)
    usable = (np.abs(fden) >= plan.pole_guard) & (np.abs(gden) >= plan.pole_guard)
    report = _report(xs, fv, gv, usable, plan)
    log_event("verification", check="check_equiv", max_rel_err=report.max_rel_err,
              points_used=report.points_used, passed=report.passed)
    return report


def cross_validate(f: CanonicalFunction, plan: Optional[SamplePlan] = None,
                   h_rel: Optional[float] = None) -> EquivReport:
    """Symbolic A[f] against x f'/f with f' from finite differences."""
    plan = plan or SamplePlan.from_config()
    symbolic = apply_A(f)
    xs = plan.points()
    sv, sden = evaluate_many(symbolic, xs)
    nv, ok = numeric_A_many(f, xs, h_rel, plan.pole_guard)
    usable = ok & (np.abs(sden) >= plan.pole_guard)
    report = _report(xs, sv, nv, usable, plan)
    log_event("verification", check="cross_validate", max_rel_err=report.max_rel_err,
              points_used=report.points_used, passed=report.passed)
    return report
