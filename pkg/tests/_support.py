"""Shared fixtures-as-functions and independent oracles for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from altpullback.exact import Polynomial
from altpullback.functionals import MomentFunctional


def legendre_moment(k):
    return Fraction(0) if k % 2 else Fraction(1, k + 1)


def legendre():
    """Legendre-type functional: 1/(k+1) at even k, 0 at odd k."""
    return MomentFunctional(legendre_moment, "legendre")


def discrete_functional(points, weights):
    """Moments of a finite point mass; regular up to depth len(points) - 1."""
    pts = [Fraction(p) for p in points]
    wts = [Fraction(w) for w in weights]
    return MomentFunctional(lambda k: sum(w * p ** k for p, w in zip(pts, wts)))


def direct_pair(u, p):
    """Independent pairing: sum coefficients times moments, no shared helper."""
    total = Fraction(0)
    for k, c in enumerate(p.coeffs):
        total += c * u.moment(k)
    return total


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def polynomials(max_degree=40, elements=rationals):
    return st.lists(elements, max_size=max_degree + 1).map(Polynomial)


@st.composite
def regular_functionals(draw, size=6):
    """Point masses at distinct rational nodes with positive weights."""
    nodes = draw(st.lists(small_rationals, min_size=size, max_size=size, unique=True))
    weights = draw(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=3,
                                         max_denominator=10),
                            min_size=size, max_size=size))
    return discrete_functional(nodes, weights)


def lagrange_interpolate(xs, ys):
    """Polynomial through the points (oracle for closed forms)."""
    out = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Polynomial([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Polynomial([-xj, 1]) * (1 / (Fraction(xi) - xj))
        out = out + term
    return out
