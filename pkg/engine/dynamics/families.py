"""
Closed-form families of the operator A[f] = x f'/f and their classifier.

    period-2:  f1 = c a x^c / (1 - a x^c),  f2 = c / (1 - a x^c),  a c != 0
    fixed:     f  = 1 / (a - ln x)

Both families are complete, so a function that cycles but fails parameter
extraction raises InternalInconsistency instead of classifying as none.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from core.errors import InternalInconsistency, InvalidParameter, ZeroFunction
from core.langfuse_integration import log_event
from symbolic.canon import (
    CanonicalFunction,
    Polynomial,
    add,
    apply_A,
    as_constant,
    as_monomial,
    derivative,
    div,
    equals,
    mul,
    normalize_display,
    reciprocal,
    sub,
)
from symbolic.numbers import GaussianRational

KIND_FIXED = "fixed"
KIND_PERIOD2 = "period2"
KIND_CONSTANT = "constant"
KIND_NONE = "none"


@dataclass(frozen=True)
class CyclePair:
    first: CanonicalFunction
    second: CanonicalFunction


@dataclass(frozen=True)
class Classification:
    kind: str
    a: Optional[GaussianRational] = None
    c: Optional[Fraction] = None
    partner: Optional[CanonicalFunction] = None
    k: Optional[GaussianRational] = None

    @classmethod
    def fixed(cls, a: GaussianRational) -> "Classification":
        return cls(KIND_FIXED, a=a)

    @classmethod
    def period2(cls, a: GaussianRational, c: Fraction, partner: CanonicalFunction) -> "Classification":
        return cls(KIND_PERIOD2, a=a, c=c, partner=partner)

    @classmethod
    def constant(cls, k: GaussianRational) -> "Classification":
        return cls(KIND_CONSTANT, k=k)

    @classmethod
    def none(cls) -> "Classification":
        return cls(KIND_NONE)


def _x_power(xexp: Fraction, coeff=1) -> Polynomial:
    return Polynomial.monomial(coeff, xexp)


def construct_period2(a: GaussianRational, c: Fraction) -> CyclePair:
    a = GaussianRational.of(a)
    c = Fraction(c)
    if a.is_zero() or c == 0:
        raise InvalidParameter(f"period-2 family needs a*c != 0 (got a={a}, c={c})")

    den = Polynomial.constant(1) - _x_power(c, a)
    first = normalize_display(CanonicalFunction(_x_power(c, a * c), den))
    second = normalize_display(CanonicalFunction(Polynomial.constant(c), den))

    if not (equals(apply_A(first), second) and equals(apply_A(second), first)):
        raise InternalInconsistency(f"constructed pair for a={a}, c={c} does not swap under A")
    log_event("construction", family=KIND_PERIOD2, a=str(a), c=str(c))
    return CyclePair(first, second)


def construct_fixed(a: GaussianRational) -> CanonicalFunction:
    a = GaussianRational.of(a)
    den = Polynomial.constant(a) - Polynomial.monomial(1, 0, 1)
    f = normalize_display(CanonicalFunction(Polynomial.constant(1), den))
    if not equals(apply_A(f), f):
        raise InternalInconsistency(f"1/(a - ln x) with a={a} is not fixed by A")
    log_event("construction", family=KIND_FIXED, a=str(a))
    return f


def construct_logistic(k: Fraction = Fraction(1)) -> CanonicalFunction:
    """The logistic curve in log coordinates: sigma(k ln x) = x^k / (1 + x^k)."""
    k = Fraction(k)
    if k == 0:
        raise InvalidParameter("logistic rate k must be nonzero")
    return normalize_display(CanonicalFunction(_x_power(k), Polynomial.constant(1) + _x_power(k)))


def is_period2_pair(f1: CanonicalFunction, f2: CanonicalFunction) -> bool:
    """A[f1] == f2, A[f2] == f1 and f1 != f2."""
    if f1.is_zero() or f2.is_zero() or equals(f1, f2):
        return False
    return equals(apply_A(f1), f2) and equals(apply_A(f2), f1)


def fixed_point_residual(f: CanonicalFunction) -> CanonicalFunction:
    """f' - f^2/x; identically zero on the fixed family."""
    x = CanonicalFunction.x()
    return sub(derivative(f), div(mul(f, f), x))


def riccati_residual(f: CanonicalFunction, c: Fraction) -> CanonicalFunction:
    """x f' - f (f + c); identically zero for the first member of a 2-cycle with difference c."""
    x = CanonicalFunction.x()
    shifted = add(f, CanonicalFunction.constant(GaussianRational.of(Fraction(c))))
    return sub(mul(x, derivative(f)), mul(f, shifted))


def check_constant_difference(f: CanonicalFunction) -> Optional[Fraction]:
    """
    c with A[f] - f == c when (f, A[f]) is a genuine 2-cycle, else None.
    Fixed points give None.
    """
    g = apply_A(f)
    if g.is_zero() or equals(g, f) or not equals(apply_A(g), f):
        return None
    c = as_constant(sub(g, f))
    if c is None or not c.is_real() or c.is_zero():
        raise InternalInconsistency(f"2-cycle with difference {c} that is not a nonzero rational")
    return c.re


def classify(f: CanonicalFunction) -> Classification:
    if f.is_zero():
        raise ZeroFunction()

    k = as_constant(f)
    if k is not None:
        # nonzero constants collapse to 0 under A, never fixed
        result = Classification.constant(k)
        log_event("classification", kind=result.kind, k=str(k))
        return result

    g = apply_A(f)
    if equals(g, f):
        # -1/f = ln x + C, so 1/f + ln x is the constant a
        a = as_constant(add(reciprocal(f), CanonicalFunction.ln_x()))
        if a is None:
            raise InternalInconsistency("fixed point of A not of the form 1/(a - ln x)")
        result = Classification.fixed(a)
        log_event("classification", kind=result.kind, a=str(a))
        return result

    if not g.is_zero() and equals(apply_A(g), f):
        c = as_constant(sub(g, f))
        if c is None or not c.is_real() or c.is_zero():
            raise InternalInconsistency(f"2-cycle difference A[f] - f is not a nonzero rational: {c}")
        # f / (f + c) = a x^c
        shape = as_monomial(div(f, add(f, CanonicalFunction.constant(c))))
        if shape is None:
            raise InternalInconsistency("f/(f + c) is not a monomial for a 2-cycle member")
        a, q, lexp = shape
        if lexp != 0 or q != c.re:
            raise InternalInconsistency(
                f"f/(f + c) = {a} x^{q} ln(x)^{lexp} disagrees with c = {c.re}"
            )
        result = Classification.period2(a, c.re, g)
        log_event("classification", kind=result.kind, a=str(a), c=str(c.re))
        return result

    log_event("classification", kind=KIND_NONE)
    return Classification.none()
