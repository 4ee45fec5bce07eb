"""
Canonical ring: fractions P/Q of sparse polynomials in monomials
x^q * ln(x)^k (q rational, k >= 0) with Gaussian-rational coefficients.

Equality is decided by cross-multiplication: distinct monomials are
linearly independent functions on (0, inf), so f == g exactly when
f.num * g.den - g.num * f.den expands to the zero polynomial.
Semantics are generic-point; poles and zeros are not tracked here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from core.errors import NotRepresentable, ZeroFunction
from symbolic.expr import (
    Add, Const, Div, Expression, LnX, Mul, Neg, Pow, Sub, VarX, fold_tree,
)
from symbolic.numbers import GaussianRational, rational_root

Coefficient = GaussianRational


class MonomialKey(NamedTuple):
    xexp: Fraction
    lexp: int

    def combine(self, other: "MonomialKey") -> "MonomialKey":
        return MonomialKey(self.xexp + other.xexp, self.lexp + other.lexp)

    def divide(self, other: "MonomialKey") -> "MonomialKey":
        return MonomialKey(self.xexp - other.xexp, self.lexp - other.lexp)


ONE_KEY = MonomialKey(Fraction(0), 0)
X_KEY = MonomialKey(Fraction(1), 0)
L_KEY = MonomialKey(Fraction(0), 1)


class Polynomial:
    """Sparse map MonomialKey -> nonzero coefficient. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[MonomialKey, Coefficient], Iterable[Tuple[MonomialKey, Coefficient]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: Dict[MonomialKey, Coefficient] = {}
        for key, coeff in items:
            key = MonomialKey(Fraction(key[0]), int(key[1]))
            if key.lexp < 0:
                raise ValueError(f"negative power of ln(x) in monomial {key}")
            total = clean.get(key, GaussianRational()) + GaussianRational.of(coeff)
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self._terms = clean
        self._hash = None

    # ---- construction ----

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls({ONE_KEY: GaussianRational.of(value)})

    @classmethod
    def monomial(cls, coeff, xexp=0, lexp: int = 0) -> "Polynomial":
        return cls({MonomialKey(Fraction(xexp), lexp): GaussianRational.of(coeff)})

    # ---- inspection ----

    @property
    def terms(self) -> Mapping[MonomialKey, Coefficient]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[MonomialKey, Coefficient]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, key: MonomialKey) -> Coefficient:
        return self._terms.get(key, GaussianRational())

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def min_key(self) -> MonomialKey:
        return min(self._terms)

    def keys(self):
        return self._terms.keys()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"x^{k.xexp}L^{k.lexp}: {c}" for k, c in self)
        return f"Polynomial({{{body}}})"

    # ---- arithmetic ----

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, GaussianRational()) + coeff
        return Polynomial(merged)

    def __neg__(self) -> "Polynomial":
        return Polynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        acc: Dict[MonomialKey, Coefficient] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = k1.combine(k2)
                acc[key] = acc.get(key, GaussianRational()) + c1 * c2
        return Polynomial(acc)

    def scale(self, factor) -> "Polynomial":
        factor = GaussianRational.of(factor)
        if factor.is_zero():
            return Polynomial()
        return Polynomial({k: c * factor for k, c in self._terms.items()})

    def shift(self, key: MonomialKey) -> "Polynomial":
        """Multiply by the monomial x^key.xexp * ln(x)^key.lexp."""
        return Polynomial({k.combine(key): c for k, c in self._terms.items()})

    def unshift(self, key: MonomialKey) -> "Polynomial":
        return Polynomial({k.divide(key): c for k, c in self._terms.items()})

    def derivative(self) -> "Polynomial":
        # d/dx x^q L^k = q x^(q-1) L^k + k x^(q-1) L^(k-1)
        acc: Dict[MonomialKey, Coefficient] = {}
        for key, coeff in self._terms.items():
            down = key.xexp - 1
            if key.xexp != 0:
                k1 = MonomialKey(down, key.lexp)
                acc[k1] = acc.get(k1, GaussianRational()) + coeff * key.xexp
            if key.lexp:
                k2 = MonomialKey(down, key.lexp - 1)
                acc[k2] = acc.get(k2, GaussianRational()) + coeff * key.lexp
        return Polynomial(acc)


@dataclass(frozen=True)
class CanonicalFunction:
    num: Polynomial
    den: Polynomial = field(default_factory=lambda: Polynomial.constant(1))

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroFunction("denominator is the zero polynomial")

    @classmethod
    def constant(cls, value) -> "CanonicalFunction":
        value = GaussianRational.of(value)
        return cls(Polynomial() if value.is_zero() else Polynomial.constant(value))

    @classmethod
    def monomial(cls, coeff, xexp=0, lexp: int = 0) -> "CanonicalFunction":
        return cls(Polynomial.monomial(coeff, xexp, lexp))

    @classmethod
    def x(cls) -> "CanonicalFunction":
        return cls.monomial(1, 1)

    @classmethod
    def ln_x(cls) -> "CanonicalFunction":
        return cls.monomial(1, 0, 1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def size(self) -> int:
        return len(self.num) + len(self.den)

    # operator sugar over the module-level field operations
    def __add__(self, other: "CanonicalFunction") -> "CanonicalFunction":
        return add(self, other)

    def __sub__(self, other: "CanonicalFunction") -> "CanonicalFunction":
        return sub(self, other)

    def __mul__(self, other: "CanonicalFunction") -> "CanonicalFunction":
        return mul(self, other)

    def __truediv__(self, other: "CanonicalFunction") -> "CanonicalFunction":
        return div(self, other)

    def __neg__(self) -> "CanonicalFunction":
        return normalize_display(CanonicalFunction(-self.num, self.den))


# ======================== RAW FIELD OPERATIONS ========================
# Exact, unnormalized; used while lowering expression trees.

def _raw_add(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    if f.den == g.den:
        return CanonicalFunction(f.num + g.num, f.den)
    return CanonicalFunction(f.num * g.den + g.num * f.den, f.den * g.den)


def _raw_neg(f: CanonicalFunction) -> CanonicalFunction:
    return CanonicalFunction(-f.num, f.den)


def _raw_mul(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    return CanonicalFunction(f.num * g.num, f.den * g.den)


def _raw_reciprocal(f: CanonicalFunction) -> CanonicalFunction:
    if f.num.is_zero():
        raise ZeroFunction("division by the zero function")
    return CanonicalFunction(f.den, f.num)


def _raw_power(f: CanonicalFunction, exponent: Fraction) -> CanonicalFunction:
    if exponent.denominator == 1:
        n = int(exponent)
        mono = as_monomial(f)
        if mono is not None:
            coeff, xexp, lexp = mono
            m = abs(n)
            top = Polynomial.monomial(coeff ** m, xexp * m, lexp * m)
            if n >= 0:
                return CanonicalFunction(top)
            return CanonicalFunction(Polynomial.constant(1), top)
        base = f if n >= 0 else _raw_reciprocal(f)
        result = CanonicalFunction.constant(1)
        n = abs(n)
        # square and multiply
        while n:
            if n & 1:
                result = _raw_mul(result, base)
            n >>= 1
            if n:
                base = _raw_mul(base, base)
        return result

    if f.is_zero():
        if exponent < 0:
            raise ZeroFunction("negative power of the zero function")
        return CanonicalFunction.constant(0)
    mono = as_monomial(f)
    if mono is None:
        raise NotRepresentable(
            f"rational power {exponent} of a non-monomial is outside the canonical ring"
        )
    coeff, xexp, lexp = mono
    if lexp != 0:
        raise NotRepresentable("rational powers of ln(x) are outside the canonical ring")
    if not coeff.is_real() or coeff.re < 0:
        raise NotRepresentable(f"coefficient {coeff} has no exact rational power {exponent}")
    root = rational_root(coeff.re, exponent.denominator)
    if root is None:
        raise NotRepresentable(f"coefficient {coeff} has no exact rational power {exponent}")
    scale = GaussianRational.of(root) ** exponent.numerator
    return CanonicalFunction.monomial(scale, xexp * exponent)


def _lower_node(e: Expression, args: List[CanonicalFunction]) -> CanonicalFunction:
    if isinstance(e, Const):
        return CanonicalFunction.constant(e.value)
    if isinstance(e, VarX):
        return CanonicalFunction.x()
    if isinstance(e, LnX):
        return CanonicalFunction.ln_x()
    if isinstance(e, Neg):
        return _raw_neg(args[0])
    if isinstance(e, Pow):
        return _raw_power(args[0], e.exponent)
    left, right = args
    if isinstance(e, Add):
        return _raw_add(left, right)
    if isinstance(e, Sub):
        return _raw_add(left, _raw_neg(right))
    if isinstance(e, Mul):
        return _raw_mul(left, right)
    if isinstance(e, Div):
        return _raw_mul(left, _raw_reciprocal(right))
    raise TypeError(f"not an expression node: {e!r}")


def to_canonical(e: Expression) -> CanonicalFunction:
    """Lower an expression tree into the canonical ring by exact folding."""
    return fold_tree(e, _lower_node)


# ======================== NORMALIZATION ========================

def normalize_display(f: CanonicalFunction) -> CanonicalFunction:
    """
    Remove the common monomial content x^min(q) * L^min(k) of num and den,
    then scale so that den's least key carries coefficient 1.
    """
    if f.num.is_zero():
        return CanonicalFunction(Polynomial(), Polynomial.constant(1))
    keys = list(f.num.keys()) + list(f.den.keys())
    content = MonomialKey(min(k.xexp for k in keys), min(k.lexp for k in keys))
    num, den = f.num, f.den
    if content != ONE_KEY:
        num, den = num.unshift(content), den.unshift(content)
    lead = den[den.min_key()]
    if lead != 1:
        inv = GaussianRational.of(1) / lead
        num, den = num.scale(inv), den.scale(inv)
    return CanonicalFunction(num, den)


# ======================== FIELD OPERATIONS ========================

def add(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    return normalize_display(_raw_add(f, g))


def sub(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    return normalize_display(_raw_add(f, _raw_neg(g)))


def mul(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    return normalize_display(_raw_mul(f, g))


def reciprocal(f: CanonicalFunction) -> CanonicalFunction:
    return normalize_display(_raw_reciprocal(f))


def div(f: CanonicalFunction, g: CanonicalFunction) -> CanonicalFunction:
    return normalize_display(_raw_mul(f, _raw_reciprocal(g)))


def power(f: CanonicalFunction, exponent) -> CanonicalFunction:
    return normalize_display(_raw_power(f, Fraction(exponent)))


# ======================== CALCULUS ========================

def derivative(f: CanonicalFunction) -> CanonicalFunction:
    """Quotient rule (num'*den - num*den') / den^2."""
    num = f.num.derivative() * f.den - f.num * f.den.derivative()
    return normalize_display(CanonicalFunction(num, f.den * f.den))


def apply_A(f: CanonicalFunction) -> CanonicalFunction:
    """The dual logarithmic derivative x*f'/f = x*(num'*den - num*den') / (den*num)."""
    if f.num.is_zero():
        raise ZeroFunction()
    top = (f.num.derivative() * f.den - f.num * f.den.derivative()).shift(X_KEY)
    return normalize_display(CanonicalFunction(top, f.den * f.num))


def iterate_A(f: CanonicalFunction, n: int) -> CanonicalFunction:
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(n):
        f = apply_A(f)
    return f


# ======================== DECISION PROCEDURES ========================

def equals(f: CanonicalFunction, g: CanonicalFunction) -> bool:
    return (f.num * g.den - g.num * f.den).is_zero()


def as_constant(f: CanonicalFunction) -> Optional[GaussianRational]:
    """k when f == k identically (num = k*den), else None."""
    if f.num.is_zero():
        return GaussianRational()
    lead = f.den.min_key()
    if lead not in f.num:
        return None
    k = f.num[lead] / f.den[lead]
    return k if f.den.scale(k) == f.num else None


def as_monomial(f: CanonicalFunction) -> Optional[Tuple[GaussianRational, Fraction, int]]:
    """(a, q, k) when f == a * x^q * ln(x)^k with a != 0, else None."""
    if f.num.is_zero():
        return None
    # multiplying by a monomial preserves the key order, so least keys pair up
    kn, kd = f.num.min_key(), f.den.min_key()
    key = kn.divide(kd)
    if key.lexp < 0:
        return None
    coeff = f.num[kn] / f.den[kd]
    if f.den.shift(key).scale(coeff) != f.num:
        return None
    return coeff, key.xexp, key.lexp


# ======================== BACK TO SYNTAX ========================

def _monomial_expression(key: MonomialKey) -> Optional[Expression]:
    parts = []
    if key.xexp == 1:
        parts.append(VarX())
    elif key.xexp != 0:
        parts.append(Pow(VarX(), key.xexp))
    if key.lexp == 1:
        parts.append(LnX())
    elif key.lexp > 1:
        parts.append(Pow(LnX(), Fraction(key.lexp)))
    if not parts:
        return None
    node = parts[0]
    for part in parts[1:]:
        node = Mul(node, part)
    return node


def _term_expression(key: MonomialKey, coeff: GaussianRational) -> Expression:
    mono = _monomial_expression(key)
    if mono is None:
        return Const(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return Neg(mono)
    return Mul(Const(coeff), mono)


def polynomial_expression(p: Polynomial) -> Expression:
    """Sum of terms in ascending key order; negative real coefficients become subtraction."""
    node: Optional[Expression] = None
    for key, coeff in p:
        if node is None:
            node = _term_expression(key, coeff)
        elif coeff.is_real() and coeff.re < 0:
            node = Sub(node, _term_expression(key, -coeff))
        else:
            node = Add(node, _term_expression(key, coeff))
    return node if node is not None else Const(GaussianRational())


def to_expression(f: CanonicalFunction) -> Expression:
    num = polynomial_expression(f.num)
    if f.den == Polynomial.constant(1):
        return num
    return Div(num, polynomial_expression(f.den))
