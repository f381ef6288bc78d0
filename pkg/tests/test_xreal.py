from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pavforge.xreal import (
    Cmp,
    DEFAULT_RELERR,
    UndefinedProduct,
    XReal,
    exact_pow,
    exp_bounds,
    nth_root_bounds,
    pow_bounds,
    xr_add,
    xr_cmp,
    xr_div,
    xr_from_json,
    xr_le,
    xr_max,
    xr_min,
    xr_mul,
    xr_pow,
    xr_to_json,
)

# reference digits frozen from tools/oracles.py::xreal_constants
EXP_REFERENCE = {
    (1, 1): "2.718281828459045235360287471352662497757",
    (-1, 1): "0.3678794411714423215955237701614608674458",
    (7, 3): "10.31225850132576502701557210853729697621",
    (-22, 7): "0.04315930926145259798459209453517597115968",
    (1, 1000): "1.001000500166708341668055753993058311563",
    (13, 2): "665.1416330443618406939614942426343832211",
}
SQRT5 = "2.236067977499789696409173668731276235441"  # oracles.py::pow_5_1_2
POW_5_2_3 = "2.92401773821286606550678736013792277853"  # oracles.py::pow_5_2_3


def frac_of_decimal(s: str) -> Fraction:
    return Fraction(s)


class TestBounds:
    @pytest.mark.parametrize("num,den", sorted(EXP_REFERENCE))
    def test_exp_bounds_contain_reference(self, num, den):
        ref = frac_of_decimal(EXP_REFERENCE[(num, den)])
        lo, hi = exp_bounds(Fraction(num, den), 80)
        assert lo <= ref <= hi
        assert (hi - lo) / lo <= Fraction(1, 2**80)

    def test_exp_bounds_zero(self):
        assert exp_bounds(Fraction(0), 50) == (1, 1)

    def test_sqrt5_bounds(self):
        ref = frac_of_decimal(SQRT5)
        lo, hi = nth_root_bounds(Fraction(5), 2, 100)
        assert lo <= ref <= hi
        assert (hi - lo) / lo <= Fraction(1, 2**99)

    def test_pow_bounds_5_2_3(self):
        ref = frac_of_decimal(POW_5_2_3)
        lo, hi = pow_bounds(Fraction(5), Fraction(2, 3), 100)
        assert lo <= ref <= hi

    def test_pow_bounds_negative_exponent(self):
        lo, hi = pow_bounds(Fraction(5), Fraction(-1, 2), 80)
        ref = 1 / frac_of_decimal(SQRT5)
        assert lo <= ref <= hi

    def test_exact_pow_cube_root(self):
        assert exact_pow(Fraction(8), Fraction(1, 3)) == 2
        assert exact_pow(Fraction(8, 27), Fraction(2, 3)) == Fraction(4, 9)
        assert exact_pow(Fraction(5), Fraction(1, 2)) is None

    @given(st.fractions(min_value=-30, max_value=30))
    def test_exp_bounds_positive_and_ordered(self, q):
        lo, hi = exp_bounds(q, 40)
        assert 0 < lo <= hi


class TestConstruction:
    def test_exp_zero_canonicalizes(self):
        x = XReal.exp_of(0)
        assert x.kind == "rat" and x.rat == 1

    def test_rational_zero_is_zero(self):
        assert XReal.rational(0).is_zero

    def test_negative_rational_rejected(self):
        with pytest.raises(ValueError):
            XReal.rational(-2)

    def test_approx_validation(self):
        with pytest.raises(ValueError):
            XReal.approx(0.0)
        with pytest.raises(ValueError):
            XReal.approx(1.0, relerr=1.0)


class TestArithmetic:
    def test_zero_times_inf_undefined(self):
        with pytest.raises(UndefinedProduct):
            xr_mul(XReal.zero(), XReal.infinity())
        with pytest.raises(UndefinedProduct):
            xr_mul(XReal.infinity(), XReal.zero())

    def test_absorbing_products(self):
        assert xr_mul(XReal.zero(), XReal.rational(7)).is_zero
        assert xr_mul(XReal.infinity(), XReal.exp_of(-2)).is_infinite
        assert xr_mul(XReal.zero(), XReal.zero()).is_zero
        assert xr_mul(XReal.infinity(), XReal.infinity()).is_infinite

    def test_exact_lanes_closed_under_mul(self):
        a = xr_mul(XReal.rational(Fraction(3, 5)), XReal.rational(Fraction(10, 9)))
        assert a == XReal.rational(Fraction(2, 3))
        b = xr_mul(XReal.exp_of(Fraction(-1, 2)), XReal.exp_of(Fraction(5, 2)))
        assert b == XReal.exp_of(2)

    def test_one_is_multiplicative_identity_across_lanes(self):
        e = XReal.exp_of(Fraction(-3))
        assert xr_mul(XReal.rational(1), e) == e
        assert xr_mul(e, XReal.rational(1)) == e

    def test_mixed_lane_mul_demotes(self):
        out = xr_mul(XReal.rational(2), XReal.exp_of(-1))
        assert out.kind == "approx"
        # reference 2*e^-1 from oracles.py::exp_minus_1
        assert out.val == pytest.approx(2 * 0.367879441171442321595, rel=1e-12)
        assert out.relerr < 2**-48

    def test_mul_relerr_budget(self):
        a = XReal.approx(2.0, 1e-10)
        b = XReal.approx(3.0, 1e-12)
        out = xr_mul(a, b)
        assert out.relerr == pytest.approx(1e-10 + 1e-12 + DEFAULT_RELERR)

    def test_add_endpoint_rules(self):
        assert xr_add(XReal.infinity(), XReal.zero()).is_infinite
        assert xr_add(XReal.zero(), XReal.rational(3)) == XReal.rational(3)

    def test_add_exact_rationals(self):
        out = xr_add(XReal.rational(Fraction(1, 3)), XReal.rational(Fraction(1, 6)))
        assert out == XReal.rational(Fraction(1, 2))

    def test_add_mixed_demotes(self):
        out = xr_add(XReal.exp_of(-1), XReal.exp_of(-1))
        assert out.kind == "approx"
        assert out.val == pytest.approx(2 * 0.367879441171442321595, rel=1e-12)

    def test_pow_exact_lanes(self):
        assert xr_pow(XReal.exp_of(-3), Fraction(1, 3)) == XReal.exp_of(-1)
        assert xr_pow(XReal.rational(8), Fraction(1, 3)) == XReal.rational(2)
        assert xr_pow(XReal.rational(Fraction(1, 4)), Fraction(-1, 2)) == XReal.rational(2)

    def test_pow_endpoints(self):
        assert xr_pow(XReal.zero(), Fraction(2)).is_zero
        assert xr_pow(XReal.zero(), Fraction(-1)).is_infinite
        assert xr_pow(XReal.infinity(), Fraction(-2)).is_zero
        with pytest.raises(ValueError):
            xr_pow(XReal.zero(), 0)

    def test_pow_rat_inexact_has_tight_error(self):
        out = xr_pow(XReal.rational(5), Fraction(1, 2))
        assert out.kind == "approx"
        assert out.val == pytest.approx(float(frac_of_decimal(SQRT5)), rel=1e-14)
        assert out.relerr <= DEFAULT_RELERR

    def test_div(self):
        out = xr_div(XReal.exp_of(-1), XReal.exp_of(2))
        assert out == XReal.exp_of(-3)
        assert xr_div(XReal.rational(1), XReal.zero()).is_infinite
        assert xr_div(XReal.rational(1), XReal.infinity()).is_zero


class TestComparison:
    def test_endpoint_order(self):
        assert xr_cmp(XReal.zero(), XReal.infinity()) == Cmp.LESS
        assert xr_cmp(XReal.infinity(), XReal.rational(10**9)) == Cmp.GREATER
        assert xr_cmp(XReal.zero(), XReal.zero()) == Cmp.EQUAL

    def test_exp_minus_one_below_half(self):
        # oracles.py::exp_minus_1_lt_half
        assert xr_cmp(XReal.exp_of(-1), XReal.rational(Fraction(1, 2))) == Cmp.LESS

    def test_exp_vs_rat_close_separates(self):
        # dyadic within 2^-60 of e^-3 still compares correctly
        lo, hi = exp_bounds(Fraction(-3), 70)
        dyadic = Fraction((lo.numerator * 2**65) // lo.denominator, 2**65)
        out = xr_cmp(XReal.exp_of(-3), XReal.rational(dyadic))
        assert out in (Cmp.LESS, Cmp.GREATER)

    def test_exp_lane_exact_equality(self):
        assert xr_cmp(XReal.exp_of(Fraction(-3, 2)), XReal.exp_of(Fraction(-3, 2))) == Cmp.EQUAL

    def test_overlapping_approx_indeterminate(self):
        a = XReal.approx(1.0, 0.01)
        b = XReal.approx(1.001, 0.01)
        assert xr_cmp(a, b) == Cmp.INDETERMINATE

    def test_separated_approx_decides(self):
        a = XReal.approx(1.0, 1e-6)
        b = XReal.approx(2.0, 1e-6)
        assert xr_cmp(a, b) == Cmp.LESS
        assert xr_le(a, b)

    def test_exact_inside_approx_is_indeterminate(self):
        a = XReal.rational(1)
        b = XReal.approx(1.0 + 1e-12, 1e-6)
        assert xr_cmp(a, b) == Cmp.INDETERMINATE

    def test_min_max(self):
        vals = [XReal.rational(2), XReal.exp_of(1), XReal.rational(Fraction(1, 2))]
        assert xr_max(vals) == XReal.exp_of(1)
        assert xr_min(vals) == XReal.rational(Fraction(1, 2))

    @given(
        st.fractions(min_value=Fraction(1, 1000), max_value=1000),
        st.fractions(min_value=-20, max_value=20),
    )
    def test_rat_vs_exp_matches_floats(self, r, q):
        out = xr_cmp(XReal.rational(r), XReal.exp_of(q))
        import math

        lhs = math.log(float(r))
        rhs = float(q)
        if abs(lhs - rhs) > 1e-9:
            expected = Cmp.LESS if lhs < rhs else Cmp.GREATER
            assert out == expected
        else:
            assert out in (Cmp.LESS, Cmp.GREATER)


class TestOrderCompatibility:
    @given(
        st.fractions(min_value=Fraction(1, 50), max_value=50),
        st.fractions(min_value=Fraction(1, 50), max_value=50),
        st.fractions(min_value=Fraction(1, 50), max_value=50),
    )
    def test_mul_monotone_exact(self, a, b, c):
        xa, xb, xc = (XReal.rational(v) for v in (a, b, c))
        if xr_cmp(xa, xb) == Cmp.LESS:
            assert xr_cmp(xr_mul(xa, xc), xr_mul(xb, xc)) == Cmp.LESS

    @given(st.fractions(min_value=-10, max_value=10),
           st.fractions(min_value=-10, max_value=10))
    def test_exp_lane_group_law(self, p, q):
        assert xr_mul(XReal.exp_of(p), XReal.exp_of(q)) == XReal.exp_of(p + q)


class TestJson:
    @pytest.mark.parametrize(
        "x",
        [
            XReal.zero(),
            XReal.infinity(),
            XReal.rational(Fraction(22, 7)),
            XReal.exp_of(Fraction(-3, 2)),
            XReal.approx(0.25, 1e-10),
        ],
    )
    def test_round_trip(self, x):
        assert xr_from_json(xr_to_json(x)) == x

    def test_wire_shape(self):
        assert xr_to_json(XReal.exp_of(-3)) == {"kind": "exp", "q_num": -3, "q_den": 1}
        assert xr_to_json(XReal.rational(Fraction(1, 3))) == {
            "kind": "rat",
            "num": 1,
            "den": 3,
        }
