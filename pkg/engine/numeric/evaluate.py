"""
Floating-point evaluation of canonical functions on numpy arrays.

x^q is exp(q * ln x) and ln is the principal branch, so on the positive
real axis every monomial is real up to rounding.
"""

from typing import Optional, Tuple

import numpy as np

from core.config_loader import load_config
from core.errors import NearZeroFunctionValue, PoleAt, ZeroArgument
from symbolic.canon import CanonicalFunction, Polynomial


def _pole_guard(pole_guard: Optional[float]) -> float:
    return load_config()["sampling"]["pole_guard"] if pole_guard is None else pole_guard


def _h_rel(h_rel: Optional[float]) -> float:
    return load_config()["finite_difference"]["h_rel"] if h_rel is None else h_rel


def evaluate_polynomial(p: Polynomial, xs: np.ndarray) -> np.ndarray:
    xs = np.asarray(xs, dtype=complex)
    total = np.zeros_like(xs)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        logs = np.log(xs)
        for key, coeff in p:
            term = complex(coeff) * np.exp(float(key.xexp) * logs)
            if key.lexp:
                term = term * logs ** key.lexp
            total = total + term
    return total


def evaluate_many(f: CanonicalFunction, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(f(xs), den(xs)); entries where den vanishes are inf/nan, callers mask them."""
    num = evaluate_polynomial(f.num, xs)
    den = evaluate_polynomial(f.den, xs)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return num / den, den


def eval(f: CanonicalFunction, x: complex, pole_guard: Optional[float] = None) -> complex:  # noqa: A001
    if x == 0:
        raise ZeroArgument()
    guard = _pole_guard(pole_guard)
    values, den = evaluate_many(f, np.array([x], dtype=complex))
    if abs(den[0]) < guard:
        raise PoleAt(x, float(abs(den[0])))
    return complex(values[0])


def numeric_A_many(f: CanonicalFunction, xs: np.ndarray, h_rel: Optional[float] = None,
                   pole_guard: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    x f'(x) / f(x) with f' from central differences at h and h/2 combined
    by one Richardson step (4 D(h/2) - D(h)) / 3, h = h_rel * max(|x|, 1).

    Returns (values, ok); ok is False where any stencil point falls under
    the pole guard or |f(x)| does.
    """
    guard = _pole_guard(pole_guard)
    xs = np.asarray(xs, dtype=float)
    h = _h_rel(h_rel) * np.maximum(np.abs(xs), 1.0)
    stencil = np.stack([xs, xs + h, xs - h, xs + h / 2, xs - h / 2])
    values, den = evaluate_many(f, stencil.ravel())
    values = values.reshape(stencil.shape)
    den = den.reshape(stencil.shape)

    ok = np.all(np.abs(den) >= guard, axis=0) & (np.abs(values[0]) >= guard)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        d_h = (values[1] - values[2]) / (2 * h)
        d_half = (values[3] - values[4]) / h
        slope = (4 * d_half - d_h) / 3
        result = xs * slope / values[0]
    return result, ok


def numeric_A(f: CanonicalFunction, x: float, h_rel: Optional[float] = None,
              pole_guard: Optional[float] = None) -> complex:
    if x == 0:
        raise ZeroArgument()
    guard = _pole_guard(pole_guard)
    xs = np.array([x], dtype=float)
    h = _h_rel(h_rel) * max(abs(x), 1.0)
    for point in (x, x + h, x - h, x + h / 2, x - h / 2):
        _, den = evaluate_many(f, np.array([point], dtype=complex))
        if abs(den[0]) < guard:
            raise PoleAt(point, float(abs(den[0])))
    fx = eval(f, x, guard)
    if abs(fx) < guard:
        raise NearZeroFunctionValue(x, abs(fx))
    values, _ = numeric_A_many(f, xs, h_rel, guard)
    return complex(values[0])
