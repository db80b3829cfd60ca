from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from altpullback.errors import (
    DegenerateRecurrence,
    InsufficientMoments,
    NotAnOPSCandidate,
    NotRegularUpTo,
)
from altpullback.exact import Polynomial, compose_square
from altpullback.functionals import (
    MomentFunctional,
    PearsonPair,
    annihilation_check,
    apply,
    dunkl_D,
    dunkl_S,
    gram_check,
    moments_from_family,
    mops_from_functional,
    mul_poly,
    pearson_check,
    pearson_find,
    pearson_residuals,
    pearson_system,
    recurrence_fit,
    sigma_pushforward,
    transpose_D,
    transpose_S,
)
from altpullback.transforms import pullback_functional

from _support import (
    direct_pair,
    discrete_functional,
    legendre,
    polynomials,
    regular_functionals,
    small_rationals,
)

F = Fraction
x = Polynomial.x()


def P(*c):
    return Polynomial(c)


def ones():
    return MomentFunctional(lambda k: F(1))


class TestMomentFunctional:
    def test_stored_prefix_refuses_to_extend(self):
        u = MomentFunctional.stored(["1", "1/2"])
        assert u.moments(2) == [1, F(1, 2)]
        with pytest.raises(InsufficientMoments):
            u.moment(2)
        assert u.available == 2

    def test_rule_is_queried_in_order_and_cached(self):
        calls = []

        def rule(k):
            calls.append(k)
            return F(k)

        u = MomentFunctional(rule)
        assert u.moment(3) == 3
        assert u.moment(1) == 1
        assert calls == [0, 1, 2, 3]

    def test_concurrent_readers_see_same_prefix(self):
        from concurrent.futures import ThreadPoolExecutor

        u = legendre()
        with ThreadPoolExecutor(4) as pool:
            prefixes = list(pool.map(lambda n: tuple(u.moments(n)), [40] * 8))
        assert len(set(prefixes)) == 1


class TestApplyAndMultiply:
    def test_pairing_examples(self):
        v = legendre()
        assert apply(v, P(1)) == 1
        assert apply(v, P(0, 0, 1)) == F(1, 3)
        assert apply(v, P(-1, 1)) == -1

    def test_multiplication_examples(self):
        v = legendre()
        assert mul_poly(P(1), v).moments(6) == v.moments(6)
        assert mul_poly(P(-1, 1), v).moments(4) == [-1, F(1, 3), F(-1, 3), F(1, 5)]
        assert mul_poly(Polynomial(), v).moments(5) == [0] * 5

    @given(regular_functionals(), polynomials(5, small_rationals), polynomials(6, small_rationals))
    @settings(max_examples=40)
    def test_multiplication_moves_into_pairing(self, u, phi, p):
        assert apply(mul_poly(phi, u), p) == direct_pair(u, phi * p)


class TestOperators:
    def test_examples(self):
        assert dunkl_D(P(0, 0, 0, 1)) == P(0, 0, -1)
        assert dunkl_S(P(0, 0, 1)) == P(0, 0, -1)
        assert dunkl_S(P(0, 0, 0, 0, 1)) == P(0, 0, 0, 0, 1)
        assert dunkl_D(P(7)) == Polynomial()
        assert dunkl_S(P(0, 1)) == Polynomial()

    @pytest.mark.parametrize("k", range(0, 51, 5))
    def test_parity_rules(self, k):
        sign = (-1) ** k
        assert dunkl_D(Polynomial.monomial(2 * k)).is_zero()
        assert dunkl_S(Polynomial.monomial(2 * k + 1)).is_zero()
        assert dunkl_D(Polynomial.monomial(2 * k + 1)) == Polynomial.monomial(2 * k, sign)
        assert dunkl_S(Polynomial.monomial(2 * k)) == Polynomial.monomial(2 * k, sign)

    def test_transpose_examples(self):
        u = ones()
        assert apply(transpose_D(u), P(0, 1)) == -1
        assert apply(transpose_D(u), P(0, 0, 0, 1)) == 1
        w = MomentFunctional.stored([1, 2, 7, 5])
        assert apply(transpose_S(w), P(0, 0, 1)) == -7

    def test_sigma_recovers_pullback_input(self):
        v = legendre()
        u = pullback_functional(v, 1)
        assert sigma_pushforward(u).moments(12) == v.moments(12)

    @given(st.lists(small_rationals, min_size=20, max_size=20), polynomials(9, small_rationals))
    def test_transpose_consistency(self, moments, p):
        u = MomentFunctional.stored(moments)
        assert apply(transpose_D(u), p) == -apply(u, dunkl_D(p))
        assert apply(transpose_S(u), p) == apply(u, dunkl_S(p))

    @given(polynomials(15))
    def test_even_odd_separation(self, p):
        assert dunkl_D(compose_square(p)).is_zero()
        assert dunkl_S(compose_square(p)) == p(P(0, 0, -1))


class TestMops:
    def test_legendre(self):
        ops = mops_from_functional(legendre(), 2)
        assert ops[1] == P(0, 1)
        # oracle: <v, y^2 + c1 y + c0> = <v, y(y^2 + c1 y + c0)> = 0 gives c1 = 0, c0 = -1/3
        assert ops[2] == P(F(-1, 3), 0, 1)

    def test_pullback_first_member(self):
        u = pullback_functional(legendre(), 1)
        assert u.moments(6) == [1, 1, 0, 0, F(1, 3), F(1, 3)]
        assert mops_from_functional(u, 1)[1] == P(-1, 1)

    def test_degenerate_hankel(self):
        u = MomentFunctional(lambda k: F(1) if k == 0 else F(0))
        with pytest.raises(NotRegularUpTo) as exc:
            mops_from_functional(u, 3)
        assert exc.value.n == 1

    def test_zero_mass(self):
        with pytest.raises(NotRegularUpTo) as exc:
            mops_from_functional(MomentFunctional(lambda k: F(0)), 2)
        assert exc.value.n == 0

    def test_uses_only_moments_up_to_2n(self):
        v = legendre()
        u = MomentFunctional.stored(v.moments(9))
        assert mops_from_functional(u, 4).polys == mops_from_functional(v, 4).polys

    @given(regular_functionals(7))
    @settings(max_examples=30, deadline=None)
    def test_self_consistency(self, u):
        ops = mops_from_functional(u, 6)
        assert gram_check(u, ops.polys, 6) == []
        beta, gamma = recurrence_fit(ops.polys)
        assert beta == ops.beta
        assert gamma == ops.gamma

    def test_moments_from_family_inverts_mops(self):
        v = legendre()
        ops = mops_from_functional(v, 10)
        assert moments_from_family(ops.polys, 11).moments(11) == v.moments(11)


class TestRecurrenceFit:
    def test_legendre_prefix(self):
        beta, gamma = recurrence_fit([P(1), P(0, 1), P(F(-1, 3), 0, 1)])
        assert beta == (0, 0)
        assert gamma[1] == F(1, 3)

    def test_pullback_prefix(self):
        # x^2 = (x - beta_1)(x - 1) - gamma_1 with beta_1 = -1 forces gamma_1 = -1
        beta, gamma = recurrence_fit([P(1), P(-1, 1), P(0, 0, 1)])
        assert beta == (1, -1)
        assert gamma[1] == -1
        assert (x + 1) * (x - 1) - gamma[1] == P(0, 0, 1)

    def test_zero_gamma(self):
        with pytest.raises(DegenerateRecurrence) as exc:
            recurrence_fit([P(1), P(0, 1), P(0, 1, 1)])
        assert exc.value.n == 1

    def test_no_recurrence(self):
        with pytest.raises(NotAnOPSCandidate) as exc:
            recurrence_fit([P(1), P(0, 1), P(-1, 0, 1), P(1, 0, 0, 1)])
        assert exc.value.n == 2

    def test_non_monic_rejected(self):
        with pytest.raises(ValueError):
            recurrence_fit([P(1), P(0, 2)])


class TestGramAndAnnihilation:
    def test_pullback_family_is_clean(self):
        from altpullback.transforms import alternating_pullback

        res = alternating_pullback(legendre(), 1, 3)
        assert gram_check(res.u, res.P.polys, 6) == []
        # oracle: direct moment sums for every pair
        for n in range(7):
            for m in range(n):
                assert direct_pair(res.u, res.P[n] * res.P[m]) == 0

    def test_mismatch_is_recorded(self):
        report = gram_check(ones(), [P(1), P(0, 1)], 1)
        assert [(v.indices, v.value) for v in report] == [((0, 1), 1)]

    def test_depth_zero_checks_only_mass(self):
        assert gram_check(ones(), [P(1), P(0, 1)], 0) == []
        zero = MomentFunctional(lambda k: F(0))
        assert [v.indices for v in gram_check(zero, [P(1)], 0)] == [(0, 0)]

    @pytest.mark.parametrize("tau", [F(0), F(1), F(-5, 3)])
    def test_pullback_always_annihilated(self, tau):
        u = pullback_functional(discrete_functional([1, 2, 3], [1, 1, 1]), tau)
        assert annihilation_check(u, tau, 20) == []

    def test_legendre_violates_at_zero(self):
        report = annihilation_check(legendre(), 1, 3)
        assert report[0].indices == (0,) and report[0].value == -1

    def test_symmetric_passes_at_zero(self):
        assert annihilation_check(legendre(), 0, 15) == []


class TestPearson:
    def test_zero_pair_gives_zero_residuals(self):
        assert pearson_residuals(legendre(), (Polynomial(), Polynomial()), 12) == [0] * 13

    @given(st.lists(small_rationals, min_size=16, max_size=16),
           polynomials(2, small_rationals), polynomials(1, small_rationals))
    def test_two_routes_agree(self, moments, phi, psi):
        u = MomentFunctional.stored(moments)
        direct = [-direct_pair(u, phi * dunkl_D(Polynomial.monomial(n)))
                  - direct_pair(u, psi * dunkl_S(Polynomial.monomial(n))) for n in range(14)]
        assert pearson_residuals(u, (phi, psi), 13) == direct

    @given(st.lists(small_rationals, min_size=16, max_size=16),
           polynomials(2, small_rationals), polynomials(1, small_rationals),
           polynomials(2, small_rationals), polynomials(1, small_rationals))
    @settings(max_examples=40)
    def test_residuals_are_linear_in_the_pair(self, moments, f1, s1, f2, s2):
        u = MomentFunctional.stored(moments)
        lhs = pearson_residuals(u, (f1 + f2, s1 + s2), 13)
        r1 = pearson_residuals(u, (f1, s1), 13)
        r2 = pearson_residuals(u, (f2, s2), 13)
        assert lhs == [a + b for a, b in zip(r1, r2)]

    def test_pair_validation(self):
        with pytest.raises(ValueError):
            PearsonPair(P(0, 0, 0, 1), P(0, 1))
        with pytest.raises(ValueError):
            PearsonPair(P(1), P(1))

    def test_zero_functional_is_degenerate(self):
        found = pearson_find(MomentFunctional(lambda k: F(0)), 10)
        assert found.degenerate and found.kernel_dimension == 5 and found.pair is None

    def test_generic_functional_has_no_pair(self):
        moments = [F(1), F(3), F(-2), F(7, 2), F(5), F(-1, 3), F(2), F(9), F(-4), F(11, 5),
                   F(6), F(1, 7), F(-8)]
        u = MomentFunctional.stored(moments)
        found = pearson_find(u, 11)
        # oracle: independent rank of the same system via sympy
        rank = sympy.Matrix(pearson_system(u, 11)).rank()
        assert rank == 5
        assert found.kernel_dimension == 0 and found.pair is None

    def test_pullback_functional_pair(self):
        from altpullback.families import LaguerreParams, family_moments

        v = family_moments("shifted-laguerre", LaguerreParams(F(1, 2), 1), 20)
        u = pullback_functional(v, 1)
        found = pearson_find(u, 30)
        assert found.pair is not None and found.pair.psi.degree == 1
        assert pearson_check(u, found.pair, 30) == []
        null = sympy.Matrix(pearson_system(u, 30)).nullspace()
        assert len(null) == found.kernel_dimension == 2

    def test_needs_enough_equations(self):
        with pytest.raises(ValueError):
            pearson_find(legendre(), 7)
