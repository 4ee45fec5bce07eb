"""
Command layer for the engine CLI.

Each cmd_* runs one request through parse -> canonicalize -> compute ->
render and returns a CommandResult; engine exceptions are mapped to a
status and exit code here and nowhere else.
"""

from fractions import Fraction
from typing import Callable, Optional

from core.errors import (
    DomainError,
    InternalInconsistency,
    InvalidParameter,
    ParseError,
    VerificationFailure,
)
from core.langfuse_integration import log_event, trace_request, trace_span
from core.types import (
    STATUS_DOMAIN_ERROR,
    STATUS_INTERNAL_INCONSISTENCY,
    STATUS_OK,
    STATUS_PARSE_ERROR,
    STATUS_VERIFICATION_FAILURE,
    ApplyPayload,
    ClassifyPayload,
    CommandResult,
    ErrorPayload,
    MakePayload,
    OrbitPayload,
    VerifyPayload,
    make_result,
)
from dynamics import (
    KIND_FIXED,
    KIND_PERIOD2,
    classify,
    construct_fixed,
    construct_logistic,
    construct_period2,
    orbit,
)
from numeric import SamplePlan, cross_validate
from symbolic import CanonicalFunction, apply_A, parse, parse_constant, render, to_canonical
from symbolic.numbers import format_scalar


def _read(expr_text: str) -> CanonicalFunction:
    with trace_span("parse", input_data={"text": expr_text}) as span:
        tree = parse(expr_text)
        span.update(output={"ok": True})
    with trace_span("canonicalize") as span:
        f = to_canonical(tree)
        span.update(output={"terms": f.size()})
    return f


def _rational_parameter(name: str, text: str) -> Fraction:
    value = parse_constant(text)
    if not value.is_real():
        raise InvalidParameter(f"--{name} must be a real rational (got {format_scalar(value)})")
    return value.re


def _run(command: str, metadata: dict, body: Callable[[], CommandResult]) -> CommandResult:
    with trace_request(f"dld_{command}", metadata) as trace:
        try:
            result = body()
        except ParseError as e:
            result = _error(STATUS_PARSE_ERROR, str(e))
        except DomainError as e:
            result = _error(STATUS_DOMAIN_ERROR, str(e))
        except VerificationFailure as e:
            result = _error(STATUS_VERIFICATION_FAILURE, str(e))
        except InternalInconsistency as e:
            result = _error(STATUS_INTERNAL_INCONSISTENCY, f"internal inconsistency: {e}")
        trace.update(output={"status": result["status"], "exit_code": result["exit_code"]})
    return result


def _error(status: str, message: str) -> CommandResult:
    payload: ErrorPayload = {"status": status, "error": message}
    return make_result(status, dict(payload), [], message=f"error: {message}")


# ======================== COMMANDS ========================

def cmd_apply(expr_text: str) -> CommandResult:
    def body() -> CommandResult:
        f = _read(expr_text)
        g = apply_A(f)
        payload: ApplyPayload = {"input": render(f), "output": render(g)}
        return make_result(STATUS_OK, dict(payload), [payload["output"]])

    return _run("apply", {"expression": expr_text}, body)


def cmd_orbit(expr_text: str, max_steps: Optional[int] = None) -> CommandResult:
    def body() -> CommandResult:
        if max_steps is not None and max_steps < 1:
            raise InvalidParameter("--max-steps must be at least 1")
        report = orbit(_read(expr_text), max_steps)
        iterates = [render(f) for f in report.iterates]
        payload: OrbitPayload = {
            "iterates": iterates,
            "preperiod": report.preperiod,
            "period": report.period,
            "truncated": report.truncated,
            "note": report.note,
        }
        lines = [f"{i}: {text}" for i, text in enumerate(iterates)]
        if report.period is not None:
            lines.append(f"preperiod {report.preperiod}, period {report.period}")
        elif report.zero_step is not None:
            lines.append(
                f"zero function reached at step {report.zero_step}; "
                "operator undefined on the zero function"
            )
        else:
            steps = len(report.iterates) - 1
            if report.note:
                lines.append(f"no repeat within {steps} steps (stopped: {report.note})")
            else:
                lines.append(f"no repeat within {steps} steps")
        return make_result(STATUS_OK, dict(payload), lines)

    return _run("orbit", {"expression": expr_text, "max_steps": max_steps}, body)


def cmd_classify(expr_text: str) -> CommandResult:
    def body() -> CommandResult:
        verdict = classify(_read(expr_text))
        payload: ClassifyPayload = {
            "kind": verdict.kind,
            "a": format_scalar(verdict.a) if verdict.a is not None else None,
            "c": str(verdict.c) if verdict.c is not None else None,
            "partner": render(verdict.partner) if verdict.partner is not None else None,
            "k": format_scalar(verdict.k) if verdict.k is not None else None,
        }
        parts = [verdict.kind] + [
            f"{key}={payload[key]}" for key in ("a", "c", "k", "partner") if payload[key] is not None
        ]
        return make_result(STATUS_OK, dict(payload), [", ".join(parts)])

    return _run("classify", {"expression": expr_text}, body)


def cmd_make(kind: str, a: Optional[str] = None, c: Optional[str] = None,
             k: Optional[str] = None) -> CommandResult:
    def body() -> CommandResult:
        if kind == KIND_PERIOD2:
            if a is None or c is None:
                raise InvalidParameter("make period2 needs --a and --c")
            pair = construct_period2(parse_constant(a), _rational_parameter("c", c))
            payload: MakePayload = {"kind": kind, "first": render(pair.first), "second": render(pair.second)}
            return make_result(STATUS_OK, dict(payload), [payload["first"], payload["second"]])
        if kind == KIND_FIXED:
            if a is None:
                raise InvalidParameter("make fixed needs --a")
            payload = {"kind": kind, "function": render(construct_fixed(parse_constant(a)))}
            return make_result(STATUS_OK, dict(payload), [payload["function"]])
        if kind == "logistic":
            rate = _rational_parameter("k", k) if k is not None else Fraction(1)
            payload = {"kind": kind, "function": render(construct_logistic(rate))}
            return make_result(STATUS_OK, dict(payload), [payload["function"]])
        raise InvalidParameter(f"unknown family {kind!r}")

    return _run("make", {"kind": kind, "a": a, "c": c, "k": k}, body)


def cmd_verify(expr_text: str, samples: Optional[int] = None, seed: Optional[int] = None,
               tol: Optional[float] = None, lo: Optional[float] = None, hi: Optional[float] = None,
               pole_guard: Optional[float] = None, h_rel: Optional[float] = None) -> CommandResult:
    def body() -> CommandResult:
        plan = SamplePlan.from_config(count=samples, seed=seed, tol=tol, lo=lo, hi=hi,
                                      pole_guard=pole_guard)
        report = cross_validate(_read(expr_text), plan, h_rel)
        payload: VerifyPayload = {
            "pass": report.passed,
            "max_rel_err": report.max_rel_err,
            "worst_point": report.worst_point,
            "points_used": report.points_used,
            "points_skipped": report.points_skipped,
            "tol": plan.tol,
        }
        line = (
            f"{'pass' if report.passed else 'fail'}: max_rel_err={report.max_rel_err:.6e} "
            f"worst_point={report.worst_point:.6g} points_used={report.points_used} "
            f"points_skipped={report.points_skipped} tol={plan.tol:g}"
        )
        status = STATUS_OK if report.passed else STATUS_VERIFICATION_FAILURE
        return make_result(status, dict(payload), [line])

    metadata = {"expression": expr_text, "samples": samples, "seed": seed, "tol": tol}
    return _run("verify", metadata, body)
