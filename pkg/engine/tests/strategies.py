"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from symbolic.canon import CanonicalFunction, MonomialKey, Polynomial
from symbolic.expr import Add, Const, Div, LnX, Mul, Neg, Pow, Sub, VarX
from symbolic.numbers import GaussianRational

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
positive_rationals = st.builds(Fraction, st.integers(1, 5), st.integers(1, 3))

gaussian_rationals = st.builds(
    GaussianRational,
    small_rationals,
    st.one_of(st.just(Fraction(0)), small_rationals),
)
nonzero_gaussians = gaussian_rationals.filter(lambda z: not z.is_zero())

# rationals in [-5, 5] with denominators 1 and 3
exponents = st.one_of(
    st.integers(-5, 5).map(Fraction),
    st.builds(Fraction, st.integers(-15, 15), st.just(3)),
)

keys = st.builds(MonomialKey, exponents, st.integers(0, 3))


def polynomials(max_terms: int = 3):
    return st.dictionaries(keys, nonzero_gaussians, min_size=1, max_size=max_terms).map(Polynomial)


# num and den with at most six terms together
functions = st.builds(CanonicalFunction, polynomials(3), polynomials(3))

# Positive real coefficients on x^q * ln(x)^(0 or 2) with at least one
# ln-free term: strictly positive on (0, inf), so no poles or zeros there.
_positive_terms = st.dictionaries(
    st.builds(MonomialKey, exponents, st.sampled_from([0, 2])),
    positive_rationals,
    min_size=1,
    max_size=3,
).filter(lambda terms: any(key.lexp == 0 for key in terms))

positive_polynomials = _positive_terms.map(Polynomial)
positive_functions = st.builds(CanonicalFunction, positive_polynomials, positive_polynomials)

_leaves = st.one_of(
    st.builds(Const, gaussian_rationals),
    st.just(VarX()),
    st.just(LnX()),
)

_tree_exponents = st.one_of(
    st.integers(-2, 3).map(Fraction),
    st.sampled_from([Fraction(1, 2), Fraction(-3, 2)]),
)

expressions = st.recursive(
    _leaves,
    lambda children: st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Div, children, children),
        st.builds(Pow, children, _tree_exponents),
    ),
    max_leaves=8,
)

# Ring elements as the acceptance suites draw them: signed or complex
# coefficients with numerators and denominators up to 9, |xexp| <= 5,
# lexp <= 3, at most six terms across num and den.
_ring_parts = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
ring_coefficients = st.builds(
    GaussianRational,
    _ring_parts,
    st.one_of(st.just(Fraction(0)), _ring_parts),
).filter(lambda z: not z.is_zero())
ring_keys = st.builds(MonomialKey, exponents, st.integers(0, 3))


@st.composite
def ring_elements(draw, max_terms: int = 6) -> CanonicalFunction:
    num_size = draw(st.integers(1, max_terms - 1))
    den_size = draw(st.integers(1, max_terms - num_size))
    num = draw(st.dictionaries(ring_keys, ring_coefficients, min_size=1, max_size=num_size))
    den = draw(st.dictionaries(ring_keys, ring_coefficients, min_size=1, max_size=den_size))
    return CanonicalFunction(Polynomial(num), Polynomial(den))
