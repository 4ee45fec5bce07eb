from symbolic.numbers import GaussianRational, Rational, format_scalar
from symbolic.expr import parse, parse_constant, format, fold_constants
from symbolic.canon import (
    CanonicalFunction,
    MonomialKey,
    Polynomial,
    add,
    apply_A,
    as_constant,
    as_monomial,
    derivative,
    div,
    equals,
    iterate_A,
    mul,
    normalize_display,
    power,
    reciprocal,
    sub,
    to_canonical,
    to_expression,
)


def render(f: CanonicalFunction) -> str:
    """Display-normalized text of a canonical function."""
    return format(to_expression(normalize_display(f)))


def read(text: str) -> CanonicalFunction:
    """Parse text straight into the canonical ring."""
    return to_canonical(parse(text))
