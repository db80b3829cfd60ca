from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altpullback.errors import DegenerateParameters, NotDivisible, ParseError
from altpullback.exact import (
    HypSeries,
    Polynomial,
    compose_square,
    format_rational,
    hyp_terminating,
    parity_decompose,
    pochhammer,
    rational,
    tau_decompose,
)

from _support import polynomials, rationals

F = Fraction
x = Polynomial.x()


def P(*coeffs):
    return Polynomial(coeffs)


class TestArithmetic:
    def test_exact_division_by_linear_factor(self):
        assert (x * x - 1).exact_div_linear(1) == x + 1

    def test_evaluation_matches_jacobi_value(self):
        # R_1(1) = 3/8 at a = b = lambda = 1/2
        assert (x - F(5, 8))(1) == F(3, 8)

    def test_multiplication_by_zero_is_empty(self):
        assert (P(1, 2, 3) * Polynomial()).coeffs == ()
        assert (P(1, 2, 3) * 0).coeffs == ()

    def test_inexact_division_raises(self):
        with pytest.raises(NotDivisible) as exc:
            (x * x + 1).exact_div_linear(1)
        assert exc.value.remainder == 2

    def test_trailing_zeros_trimmed(self):
        p = P(1, 0, 0)
        assert p.degree == 0 and p.coeffs == (F(1),)
        assert Polynomial().degree == -1

    def test_composition(self):
        assert (x * x + 1)(x - 1) == P(2, -2, 1)

    def test_pow_and_sub(self):
        assert (x - 1) ** 3 == P(-1, 3, -3, 1)
        assert 1 - x == P(1, -1)

    def test_pretty(self):
        assert (x * x - F(1, 3)).pretty() == "x^2 - 1/3"
        assert P(0, -2).pretty("y") == "-2*y"


class TestSerialisation:
    @pytest.mark.parametrize("q, text", [(F(3, 4), "3/4"), (F(-6, 8), "-3/4"), (F(2), "2"), (F(0), "0")])
    def test_canonical_strings(self, q, text):
        assert format_rational(q) == text
        assert rational(text) == q

    def test_polynomial_json_round_trip(self):
        p = P(F(-1, 3), 0, 1)
        assert p.to_json() == ["-1/3", "0", "1"]
        assert Polynomial.from_json(p.to_json()) == p

    def test_bad_entry_reports_location(self):
        with pytest.raises(ParseError) as exc:
            Polynomial.from_json(["1", "oops"], "$.P[2]")
        assert exc.value.location == "$.P[2][1]"


class TestDecompositions:
    def test_compose_square_examples(self):
        assert compose_square(P(1)) == P(1)
        assert compose_square(P(-2, 1)) == P(-2, 0, 1)
        assert compose_square(P(F(1, 3), 1)) == P(F(1, 3), 0, 1)

    @pytest.mark.parametrize(
        "p, a, b",
        [
            (P(0, 0, 0, 1), P(), P(0, -1)),
            (P(0, 0, 1), P(0, -1), P()),
            (P(1, 1), P(1), P(1)),
        ],
    )
    def test_parity_examples(self, p, a, b):
        assert parity_decompose(p) == (a, b)

    @pytest.mark.parametrize(
        "f, tau, p, q",
        [
            (P(0, 1), 1, P(1), P(1)),
            (P(0, 0, 0, 1), 0, P(), P(0, 1)),
            (P(0, 0, 0, 1), 2, P(0, 2), P(0, 1)),
        ],
    )
    def test_tau_examples(self, f, tau, p, q):
        assert tau_decompose(f, tau) == (p, q)

    @pytest.mark.parametrize("k", range(5))
    @pytest.mark.parametrize("tau", [F(-3, 2), 0, 2])
    def test_odd_monomials(self, k, tau):
        p, q = tau_decompose(Polynomial.monomial(2 * k + 1), tau)
        assert p == Polynomial.monomial(k, tau)
        assert q == Polynomial.monomial(k)

    @given(polynomials())
    def test_parity_reconstruction(self, p):
        a, b = parity_decompose(p)
        minus_sq = P(0, 0, -1)
        assert a(minus_sq) + x * b(minus_sq) == p

    @given(polynomials(), rationals)
    def test_tau_reconstruction(self, f, tau):
        p, q = tau_decompose(f, tau)
        assert compose_square(p) + (x - tau) * compose_square(q) == f
        assert p.degree <= max(f.degree, 0) // 2

    @given(polynomials(max_degree=15), rationals)
    def test_compose_square_evaluation(self, p, r):
        assert compose_square(p)(r) == p(r * r)


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(F(3, 2), 2) == F(15, 4)
        assert pochhammer(F(-7, 3), 0) == 1
        assert [pochhammer(1, n) for n in range(6)] == [1, 1, 2, 6, 24, 120]

    @given(rationals, st.integers(0, 8), st.integers(0, 8))
    def test_split(self, a, m, n):
        assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


class TestHypergeometric:
    def test_2f1_one_term(self):
        s = HypSeries((-1, 3), (2,), 1)
        assert hyp_terminating(s, x) == P(1, F(-3, 2))

    def test_1f1_two_terms(self):
        # hand expansion: (-2)/(3/2) = -4/3 ; (-2)(-1)/((3/2)(5/2) 2!) = 4/15
        s = HypSeries((-2,), (F(3, 2),), 2)
        assert hyp_terminating(s, x) == P(1, F(-4, 3), F(4, 15))

    def test_scalar_argument_matches_polynomial(self):
        s = HypSeries((-3, F(5, 2)), (F(1, 3),), 3)
        assert hyp_terminating(s, F(2, 7)) == hyp_terminating(s, x)(F(2, 7))

    def test_meixner_pollaczek_block(self):
        alpha, gamma = F(1, 2), F(1)
        arg = P(-gamma ** 2, 1)
        r1 = hyp_terminating(HypSeries((-1,), (alpha + F(1, 2),), 1), arg) * -(alpha + F(1, 2))
        assert r1 == P(-2, 1)

    def test_degenerate_denominator(self):
        with pytest.raises(DegenerateParameters):
            HypSeries((-2, 1), (-1,), 2)

    def test_denominator_beyond_range_is_fine(self):
        # -2 + k vanishes only at k = 2, outside the range k < 2
        HypSeries((-2, 1), (-2,), 2)

    def test_must_terminate(self):
        with pytest.raises(ValueError):
            HypSeries((1, 2), (3,), 2)

    @given(st.integers(0, 10), st.lists(rationals, min_size=1, max_size=2),
           st.fractions(min_value=1, max_value=5, max_denominator=7))
    @settings(max_examples=60)
    def test_degree_is_n(self, n, extra, denom):
        numer = [F(-n)] + [e for e in extra if e != -n]
        s = HypSeries(numer, (denom,), n)
        lead = F(1)
        for k in range(n):
            for a in s.numerator:
                lead *= a + k
            lead /= (denom + k) * (k + 1)
        out = hyp_terminating(s, x)
        if lead != 0:
            assert out.degree == n
