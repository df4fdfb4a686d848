import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from laplaceratio.algebra import Poly, Series, convolve
from laplaceratio.errors import (
    DivergentTransform,
    DomainError,
    NotVanishing,
    ZeroFunction,
)
from laplaceratio.transforms import (
    PiecewisePoly,
    RationalFunction,
    RatioExpansion,
    convolution_residual,
    delay,
    laplace_piecewise,
    laplace_poly,
    ratio_eval_piecewise,
    ratio_expansion,
    ratio_rational,
    shift_vanishing,
    sin_closed_form,
    sin_maclaurin,
    sin_ratio_check,
    step_example,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=4)
polys = st.lists(rationals, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)
exponent_pairs = st.tuples(st.integers(1, 5), st.integers(1, 5)).filter(lambda t: t[0] != t[1])


def eval_piecewise(pp, x):
    return float(pp.piece_at(x)(F(x).limit_denominator(10 ** 12)))


def quad_transform(pp, lam, upper=60.0):
    pts = sorted({float(b) for b in pp.breakpoints if 0 < float(b) < upper})
    val, _ = quad(
        lambda x: math.exp(-lam * x) * float(pp(float(x))),
        0.0,
        upper,
        points=pts or None,
        limit=300,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    return val


class TestLaplacePoly:
    def test_constant(self):
        assert laplace_poly(Poly([1])) == Series([0, 1], 1)

    def test_linear(self):
        assert laplace_poly(Poly([0, 1])) == Series([0, 0, 1], 2)

    def test_term_rule(self):
        # i! * c_i at u^(i+1): 2! * 2 = 4
        assert laplace_poly(Poly([1, 2, 2])) == Series([0, 1, 2, 4], 3)

    def test_padding_is_exact(self):
        assert laplace_poly(Poly([1]), order=4) == Series([0, 1, 0, 0, 0], 4)

    @given(polys, polys, st.integers(2, 10))
    @settings(max_examples=50)
    def test_convolution_theorem(self, p, q, order):
        # transform of the half-line convolution equals the series product
        lhs = laplace_poly(convolve(p, q), order)
        rhs = laplace_poly(p, order) * laplace_poly(q, order)
        assert lhs == rhs


class TestRatioExpansion:
    def test_one_plus_x(self):
        got = ratio_expansion(Poly([1, 1]), 2, 1, 3)
        assert got.lead == 0
        assert got.tail == Series([1, 1, 1, -1], 3)

    def test_pure_monomial(self):
        got = ratio_expansion(Poly([0, 1]), 3, 1, 2)
        assert got.lead == -2
        assert got.tail == Series([6, 0, 0], 2)

    def test_constant_scaling(self):
        got = ratio_expansion(Poly([F(3, 2)]), 4, 2, 2)
        assert got.lead == 0
        assert got.tail == Series([F(9, 4), 0, 0], 2)

    def test_zero_function_rejected(self):
        with pytest.raises(ZeroFunction):
            ratio_expansion(Poly(), 2, 1, 3)

    def test_equal_exponents_rejected(self):
        with pytest.raises(DomainError):
            ratio_expansion(Poly([1]), 2, 2, 3)

    @given(nonzero_polys, exponent_pairs, st.fractions(min_value=-5, max_value=5).filter(bool))
    @settings(max_examples=60)
    def test_scaling_property(self, f, nm, c):
        n, m = nm
        base = ratio_expansion(f, n, m, 4)
        scaled = ratio_expansion(c * f, n, m, 4)
        assert scaled.lead == base.lead
        assert scaled.tail == c ** (n - m) * base.tail

    @given(nonzero_polys, st.sampled_from([(3, 1), (5, 3), (4, 2), (1, 3)]))
    @settings(max_examples=60)
    def test_sign_blind_when_difference_even(self, f, nm):
        n, m = nm
        assert ratio_expansion(-f, n, m, 4) == ratio_expansion(f, n, m, 4)

    @given(nonzero_polys, exponent_pairs, st.integers(0, 3))
    @settings(max_examples=60)
    def test_lead_is_valuation_times_difference(self, p, nm, k):
        n, m = nm
        if not p.coefficient(0):
            p = p + Poly([1])
        f = Poly.monomial(k) * p
        assert ratio_expansion(f, n, m, 2).lead == k * (m - n)


class TestRatioRational:
    def test_constant_one(self):
        rf = ratio_rational(Poly([1]), 2, 1)
        assert rf == RationalFunction(Poly([1]), Poly([1]))

    def test_monomial(self):
        # L{x^2}/L{x} = 2/lambda
        rf = ratio_rational(Poly([0, 1]), 2, 1)
        assert rf == RationalFunction(Poly([2]), Poly([0, 1]))

    def test_one_plus_x(self):
        rf = ratio_rational(Poly([1, 1]), 2, 1)
        assert rf == RationalFunction(Poly([2, 2, 1]), Poly([0, 1, 1]))

    def test_agrees_with_expansion(self):
        f = Poly([2, -1, 0, 3])
        for n, m in [(2, 1), (3, 2), (1, 4)]:
            assert ratio_rational(f, n, m).expansion(6) == ratio_expansion(f, n, m, 6)

    def test_numeric_eval_matches_quadrature(self):
        f = Poly([1, 1])
        rf = ratio_rational(f, 2, 1)
        lam = 1.7
        num, _ = quad(lambda x: math.exp(-lam * x) * float(f(F(x).limit_denominator())) ** 2, 0, 80)
        den, _ = quad(lambda x: math.exp(-lam * x) * float(f(F(x).limit_denominator())), 0, 80)
        assert rf(lam) == pytest.approx(num / den, rel=1e-9)

    def test_stored_with_integer_content_removed(self):
        rf = RationalFunction(Poly([F(1, 2), F(1, 3)]), Poly([F(-1, 6)]))
        ints = [c for p in (rf.numer, rf.denom) for c in p.coeffs]
        assert all(c.denominator == 1 for c in ints)
        assert math.gcd(*(abs(c.numerator) for c in ints)) == 1
        assert rf.denom.coeffs[-1] > 0

    def test_equality_is_functional(self):
        a = RationalFunction(Poly([1, 1]), Poly([0, 1]))
        b = RationalFunction(Poly([2, 2]), Poly([0, 2]))
        c = RationalFunction(Poly([1, 1]), Poly([1, 1]))
        assert a == b
        assert a != c


class TestSinIdentity:
    def test_holds_at_order_8(self):
        assert sin_ratio_check(8)

    def test_holds_at_order_4(self):
        assert sin_ratio_check(4)

    def test_maclaurin_coefficients(self):
        assert sin_maclaurin(5) == Poly([0, 1, 0, F(-1, 6), 0, F(1, 120)])

    def test_perturbed_cubic_coefficient_fails(self):
        f = sin_maclaurin(8)
        broken = Poly([c if i != 3 else F(0) for i, c in enumerate(f.coeffs)])
        got = ratio_expansion(broken, 2, 1, 7)
        want = sin_closed_form().expansion(7)
        assert got != want


class TestPiecewise:
    def test_validation(self):
        with pytest.raises(DomainError):
            PiecewisePoly([F(1, 2)], [Poly([1])])  # must start at 0
        with pytest.raises(DomainError):
            PiecewisePoly([0, 1, 1], [Poly([1])] * 3)  # strictly increasing
        with pytest.raises(DomainError):
            PiecewisePoly([0], [Poly([0, 1])])  # unbounded tail needs the flag
        PiecewisePoly([0], [Poly([0, 1])], allow_polynomial_tail=True)

    def test_evaluation_is_right_continuous(self):
        pp = PiecewisePoly([0, 1], [Poly([1]), Poly([5])])
        assert pp(F(1)) == 5
        assert pp(F(99, 100)) == 1

    def test_power_is_pointwise(self):
        pp = PiecewisePoly([0, 1], [Poly([0, 1]), Poly([3])], allow_polynomial_tail=True)
        cubed = pp ** 3
        for x in (F(1, 3), F(2), F(7, 8)):
            assert cubed(x) == pp(x) ** 3

    def test_step_example_values(self):
        pp = step_example(4)
        assert pp(F(0)) == 1
        assert pp(F(1, 2)) == F(1, 2)
        assert pp(F(3, 4)) == F(1, 4)
        assert pp(F(1)) == 2
        assert pp(F(31, 32)) == F(1, 16)  # truncated staircase keeps the last step


class TestLaplacePiecewise:
    def test_constant_tail(self):
        pp = PiecewisePoly([0], [Poly([1])])
        assert laplace_piecewise(pp, 2.0) == pytest.approx(0.5, rel=1e-14)

    def test_indicator(self):
        pp = PiecewisePoly([0, 1], [Poly([1]), Poly()])
        assert laplace_piecewise(pp, 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-13)

    def test_step_example_matches_quadrature(self):
        pp = step_example(10)
        got = laplace_piecewise(pp, 1.0)
        assert got == pytest.approx(quad_transform(pp, 1.0), rel=1e-10, abs=1e-12)

    def test_polynomial_pieces_match_quadrature(self):
        pp = PiecewisePoly([0, 1, 2], [Poly([0, 1]), Poly([1, 0, F(1, 2)]), Poly([3])])
        for lam in (0.5, 1.0, 3.0):
            assert laplace_piecewise(pp, lam) == pytest.approx(
                quad_transform(pp, lam), rel=1e-10
            )

    def test_requires_positive_lambda(self):
        with pytest.raises(DivergentTransform):
            laplace_piecewise(step_example(3), 0.0)

    def test_exact_rule_for_monomials(self):
        # L{x^j} on the whole half line equals j!/lam^(j+1)
        pp = PiecewisePoly([0], [Poly([0, 0, 1])], allow_polynomial_tail=True)
        lam = 1.25
        assert laplace_piecewise(pp, lam) == pytest.approx(2 / lam ** 3, rel=1e-13)


class TestRatioEvalPiecewise:
    def test_constant_scaling(self):
        pp = PiecewisePoly([0], [Poly([F(7, 3)])])
        for lam in (0.5, 1.0, 4.0):
            assert ratio_eval_piecewise(pp, 2, 1, lam) == pytest.approx(7 / 3, rel=1e-12)

    def test_indicator_idempotent(self):
        pp = PiecewisePoly([0, 1], [Poly([1]), Poly()])
        for n, m in [(2, 1), (5, 3), (1, 4)]:
            assert ratio_eval_piecewise(pp, n, m, 2.0) == pytest.approx(1.0, rel=1e-12)

    def test_step_example_matches_quadrature(self):
        pp = step_example(10)
        got = ratio_eval_piecewise(pp, 2, 1, 1.0)
        want = quad_transform(pp ** 2, 1.0) / quad_transform(pp, 1.0)
        assert got == pytest.approx(want, rel=1e-8)

    def test_polynomial_ratio_agrees_with_series_path(self):
        f = Poly([1, 1])
        pp = PiecewisePoly([0], [f], allow_polynomial_tail=True)
        rf = ratio_rational(f, 2, 1)
        for lam in (0.5, 1.0, 2.0, 10.0):
            assert ratio_eval_piecewise(pp, 2, 1, lam) == pytest.approx(rf(lam), rel=1e-12)


class TestShifts:
    def test_shift_indicator(self):
        pp = PiecewisePoly([0, 1], [Poly(), Poly([1])])
        shifted = shift_vanishing(pp, 1)
        assert shifted == PiecewisePoly([0], [Poly([1])])

    def test_shift_ramp(self):
        # (x-1) on [1, inf) becomes x on [0, inf)
        pp = PiecewisePoly([0, 1], [Poly(), Poly([-1, 1])], allow_polynomial_tail=True)
        shifted = shift_vanishing(pp, 1)
        assert shifted == PiecewisePoly([0], [Poly([0, 1])], allow_polynomial_tail=True)

    def test_zero_shift_is_identity(self):
        pp = step_example(3)
        assert shift_vanishing(pp, 0) is pp

    def test_rejects_nonvanishing(self):
        with pytest.raises(NotVanishing):
            shift_vanishing(step_example(3), F(1, 4))

    def test_delay_roundtrip(self):
        pp = step_example(5)
        assert shift_vanishing(delay(pp, F(1, 4)), F(1, 4)) == pp

    def test_delay_midpiece_roundtrip(self):
        pp = PiecewisePoly([0, 2], [Poly([0, 0, 1]), Poly([4])], allow_polynomial_tail=True)
        assert shift_vanishing(delay(pp, F(3, 7)), F(3, 7)) == pp

    @pytest.mark.parametrize("nm", [(2, 1), (3, 2)])
    def test_translation_invariance_of_ratio(self, nm):
        n, m = nm
        pp = delay(step_example(8), F(1, 4))
        back = shift_vanishing(pp, F(1, 4))
        for lam in (0.5, 1.0, 2.0, 5.0, 10.0):
            a = ratio_eval_piecewise(pp, n, m, lam)
            b = ratio_eval_piecewise(back, n, m, lam)
            assert a == pytest.approx(b, rel=1e-10)


class TestConvolutionResidual:
    def test_identical_functions_give_zero(self):
        pp = step_example(6)
        for t in (0.0, 0.3, 1.0, 2.5):
            assert convolution_residual(pp, pp, 3, 1, t) == 0.0

    def test_polynomial_pair_matches_integration_oracle(self):
        # f = x, g = x^2 on [0,2]; below t=2 the residual is t^5/30 - t^6/30,
        # which happens to vanish at t=1; checked against direct quadrature
        f = PiecewisePoly([0, 2], [Poly([0, 1]), Poly([2])])
        g = PiecewisePoly([0, 2], [Poly([0, 0, 1]), Poly([4])])

        def oracle(t):
            a, _ = quad(lambda s: (t - s) ** 2 * s ** 2, 0, t, epsabs=1e-14)
            b, _ = quad(lambda s: (t - s) * s ** 4, 0, t, epsabs=1e-14)
            return a - b

        got_half = convolution_residual(f, g, 2, 1, 0.5)
        assert got_half == float(F(1, 1920))
        assert got_half == pytest.approx(oracle(0.5), abs=1e-10)
        assert convolution_residual(f, g, 2, 1, 1.0) == pytest.approx(0.0, abs=1e-15)
        assert convolution_residual(f, g, 2, 1, 1.5) == pytest.approx(oracle(1.5), abs=1e-10)

    def test_crossing_breakpoints_matches_oracle(self):
        f = step_example(4)
        g = PiecewisePoly([0, 1], [Poly([0, 1]), Poly([1])])

        def conv(left, right, t):
            # the integrand jumps where either factor changes piece
            pts = sorted(
                {float(b) for b in right.breakpoints if 0 < float(b) < t}
                | {t - float(b) for b in left.breakpoints if 0 < t - float(b) < t}
            )
            val, _ = quad(
                lambda s: float(left(float(t - s))) * float(right(float(s))),
                0,
                t,
                points=pts or None,
                limit=300,
                epsabs=1e-13,
                epsrel=1e-12,
            )
            return val

        for t in (0.7, 1.9):
            want = conv(f ** 2, g, t) - conv(f, g ** 2, t)
            assert convolution_residual(f, g, 2, 1, t) == pytest.approx(want, abs=1e-10)

    def test_zero_below_origin(self):
        pp = step_example(2)
        assert convolution_residual(pp, pp, 2, 1, 0.0) == 0.0
