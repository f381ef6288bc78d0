from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pavforge.errors import DivisionByZero, ExprSyntaxError, UnsupportedShape
from pavforge.fields import (
    FinitePlace,
    FunctionField,
    InfinitePlace,
    NumberField,
    ORD_INF,
    PrimePlace,
    QQ,
    abs_sq_exact,
    abs_value_at,
    decompose_prime,
    dedekind_p_maximal,
    element_text,
    embed_interval,
    parse_element,
    parse_field,
    parse_place,
)
from pavforge.fields import polys
from pavforge.fields.sturm import (
    count_roots_between,
    interval_eval,
    isolate_real_roots,
    refine_root,
    sturm_chain,
)

QSQRT2 = NumberField((-2, 0, 1), gen_name="a")
QI = NumberField((1, 0, 1), gen_name="i")
QCBRT2 = NumberField((-2, 0, 0, 1), gen_name="c")
QT = FunctionField(QQ)


# ------------------------------------------------------------------ polys


class TestPolys:
    def test_divmod(self):
        # (x^2 - 2) = (x + 3)(x - 3) + 7
        q, r = polys.p_divmod((Fraction(-2), Fraction(0), Fraction(1)), (Fraction(3), Fraction(1)))
        assert q == (Fraction(-3), Fraction(1))
        assert r == (Fraction(7),)

    def test_gcd(self):
        a = polys.p_mul((Fraction(-1), Fraction(1)), (Fraction(1), Fraction(1)))
        b = polys.p_mul((Fraction(-1), Fraction(1)), (Fraction(2), Fraction(1)))
        assert polys.p_gcd(a, b) == (Fraction(-1), Fraction(1))

    def test_xgcd_bezout(self):
        a = (Fraction(-2), Fraction(0), Fraction(1))
        b = (Fraction(1), Fraction(1))
        g, u, w = polys.p_xgcd(a, b)
        assert polys.p_add(polys.p_mul(u, a), polys.p_mul(w, b)) == g
        assert polys.p_deg(g) == 0

    def test_taylor_shift(self):
        # T^2 + 1 around 3: (T-3)^2 + 6(T-3) + 10
        d = polys.p_taylor_at((Fraction(1), Fraction(0), Fraction(1)), Fraction(3))
        assert d == (Fraction(10), Fraction(6), Fraction(1))

    def test_resultant_norm_form(self):
        # Res(x^2-2, x-3) = (3-sqrt2)(3+sqrt2) = 7 (oracles.py::norm_3_minus_sqrt2)
        r = polys.p_resultant(
            (Fraction(-2), Fraction(0), Fraction(1)), (Fraction(-3), Fraction(1))
        )
        assert r == 7

    @given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=1, max_size=5),
           st.lists(st.fractions(min_value=-5, max_value=5), min_size=1, max_size=4))
    def test_divmod_reconstructs(self, a, b):
        a = polys.p_trim(tuple(a))
        b = polys.p_trim(tuple(b))
        if not b:
            return
        q, r = polys.p_divmod(a, b)
        assert polys.p_add(polys.p_mul(q, b), r) == a
        assert polys.p_deg(r) < polys.p_deg(b)


# ------------------------------------------------------------------ sturm


class TestSturm:
    def test_isolates_simple_roots(self):
        # x(x-1)(x^2-2): roots -sqrt2, 0, 1, sqrt2
        p = polys.p_mul(
            polys.p_mul((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1))),
            (Fraction(-2), Fraction(0), Fraction(1)),
        )
        ivs = isolate_real_roots(p)
        assert len(ivs) == 4
        sqrt2 = Fraction("1.41421356237309504880")  # oracles.py::sqrt2
        roots = [-sqrt2, Fraction(0), Fraction(1), sqrt2]
        for (lo, hi), r in zip(ivs, roots):
            assert lo <= r <= hi

    def test_rational_roots_become_points(self):
        p = (Fraction(0), Fraction(-1), Fraction(0), Fraction(1))  # x^3 - x
        ivs = isolate_real_roots(p)
        exact = [iv for iv in ivs if iv[0] == iv[1]]
        assert len(ivs) == 3
        assert {iv[0] for iv in exact} >= {Fraction(0)}

    def test_no_real_roots(self):
        assert isolate_real_roots((Fraction(1), Fraction(0), Fraction(1))) == []

    def test_refine(self):
        p = (Fraction(-2), Fraction(0), Fraction(1))
        ivs = isolate_real_roots(p)
        lo, hi = refine_root(p, *ivs[1], Fraction(1, 10**12))
        sqrt2 = Fraction("1.41421356237309504880")
        assert lo <= sqrt2 <= hi and hi - lo <= Fraction(1, 10**12)

    def test_count_between(self):
        p = (Fraction(-2), Fraction(0), Fraction(1))
        chain = sturm_chain(p)
        assert count_roots_between(chain, Fraction(0), Fraction(2)) == 1
        assert count_roots_between(chain, Fraction(-2), Fraction(2)) == 2

    def test_interval_eval_contains_true_value(self):
        g = (Fraction(1), Fraction(-3), Fraction(1))  # x^2 - 3x + 1
        lo, hi = interval_eval(g, Fraction(1, 2), Fraction(3, 4))
        for x in (Fraction(1, 2), Fraction(5, 8), Fraction(3, 4)):
            v = polys.p_eval(g, x)
            assert lo <= v <= hi


# ------------------------------------------------------------- descriptors


class TestNumberFieldElements:
    def test_basic_arithmetic(self):
        a = QSQRT2.gen()
        assert ((1 + a) * (1 - a)).as_rational() == -1
        assert (a * a).as_rational() == 2
        assert (1 / a * a).as_rational() == 1

    def test_norm(self):
        a = QSQRT2.gen()
        assert (3 - a).norm() == 7  # oracles.py::norm_3_minus_sqrt2
        assert (2 + QI.gen()).norm() == 5

    def test_conjugation(self):
        i = QI.gen()
        assert (2 + i).conj() == 2 - i
        with pytest.raises(UnsupportedShape):
            QSQRT2.gen().conj()

    def test_field_equality_ignores_name(self):
        other = NumberField((-2, 0, 1), gen_name="b")
        assert other == QSQRT2
        assert other.coerce(QSQRT2.gen()) == other.gen()

    def test_rejects_reducible(self):
        with pytest.raises(UnsupportedShape):
            NumberField((-4, 0, 1))

    def test_rejects_nonmonic(self):
        with pytest.raises(UnsupportedShape):
            NumberField((1, 0, 2))

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
    def test_mul_commutes_and_distributes(self, a0, a1, b0, b1):
        x = QSQRT2.element((a0, a1))
        y = QSQRT2.element((b0, b1))
        assert x * y == y * x
        assert x * (y + 1) == x * y + x

    @given(st.integers(-9, 9), st.integers(-9, 9))
    def test_inverse_roundtrip(self, a0, a1):
        x = QI.element((a0, a1))
        if x.is_zero():
            return
        assert (x * x.inverse()).as_rational() == 1

    def test_norm_multiplicative(self):
        a = QCBRT2.gen()
        x, y = 1 + a, 2 - a * a
        assert (x * y).norm() == x.norm() * y.norm()


class TestFunctionFieldElements:
    def test_reduction(self):
        T = QT.gen()
        f = (T**2 - 1) / (T - 1)
        assert f == T + 1

    def test_denominator_monic(self):
        T = QT.gen()
        f = (T + 1) / (2 * T - 4)
        assert f.den[-1] == 1

    def test_constant_detection(self):
        T = QT.gen()
        assert ((T + 1) - T).as_constant() == 1
        assert QT.coerce(Fraction(3, 4)).as_constant() == Fraction(3, 4)

    @given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
    def test_field_axioms_sample(self, a, b, c):
        T = QT.gen()
        x = T + a
        y = b * T + c
        assert x * y == y * x
        assert x * (y + 1) - x * y == x

    def test_nf_constants(self):
        F2 = FunctionField(QSQRT2)
        a = QSQRT2.gen()
        T = F2.gen()
        f = (T - a) * (T + a)
        assert f == T**2 - 2


class TestEmbeddings:
    def test_real_embedding_count_and_order(self):
        embs = QSQRT2.embeddings()
        assert [e.kind for e in embs] == ["real", "real"]
        lo0, hi0, _, _ = embed_interval(QSQRT2.gen(), embs[0], 30)
        lo1, hi1, _, _ = embed_interval(QSQRT2.gen(), embs[1], 30)
        assert hi0 < 0 < lo1

    def test_embed_value_digits(self):
        # oracles.py::one_plus_sqrt2
        ref = Fraction("2.41421356237309504880168872420969807857")
        a = QSQRT2.gen()
        lo, hi, _, _ = embed_interval(1 + a, QSQRT2.embeddings()[1], 80)
        assert lo <= ref <= hi

    def test_abs_value_real(self):
        a = QSQRT2.gen()
        v = abs_value_at(1 - a, QSQRT2.embeddings()[1])
        # |1 - sqrt2| = sqrt2 - 1; oracles.py::one_minus_sqrt2
        assert v.val == pytest.approx(0.41421356237309504880, rel=1e-13)

    def test_complex_pair_exact_norm(self):
        i = QI.gen()
        emb = QI.embeddings()[0]
        assert emb.kind == "complex"
        assert abs_sq_exact(2 + i, emb) == 5
        assert abs_sq_exact(QI.coerce(Fraction(-3, 2)), emb) == Fraction(9, 4)

    def test_complex_interval(self):
        i = QI.gen()
        emb = QI.embeddings()[0]
        re_lo, re_hi, im_lo, im_hi = embed_interval(2 + 3 * i, emb, 40)
        assert re_lo == re_hi == 2
        assert im_lo <= 3 <= im_hi

    def test_mixed_signature(self):
        embs = QCBRT2.embeddings()
        assert [e.kind for e in embs] == ["real", "complex"]
        with pytest.raises(UnsupportedShape):
            embed_interval(QCBRT2.gen(), embs[1], 30)


# ----------------------------------------------------------------- places


class TestRationalPlaces:
    def test_ord(self):
        pl = PrimePlace(2)
        assert pl.ord(Fraction(8, 3)) == 3
        assert pl.ord(Fraction(3, 4)) == -2
        assert pl.ord(0) == ORD_INF

    def test_residue(self):
        pl = PrimePlace(5)
        assert pl.residue(Fraction(7, 2)) == 1  # oracles.py::center_7_2_mod5
        with pytest.raises(ValueError):
            pl.residue(Fraction(1, 5))

    def test_not_prime_rejected(self):
        with pytest.raises(UnsupportedShape):
            PrimePlace(6)


class TestPrimeIdeals:
    def test_split_five_in_qi(self):
        places = decompose_prime(QI, 5)
        assert [(pl.e, pl.f) for pl in places] == [(1, 1), (1, 1)]
        # oracles.py::ord_2pi_pattern_above_5
        assert sorted(pl.ord(2 + QI.gen()) for pl in places) == [0, 1]

    def test_inert_three_in_qi(self):
        (pl,) = decompose_prime(QI, 3)
        assert (pl.e, pl.f) == (1, 2)
        assert pl.ord(QI.coerce(3)) == 1
        assert pl.ord(1 + QI.gen()) == 0

    def test_ramified_two_in_qi(self):
        # oracles.py::two_eq_unit_times_1pi_sq: 2 = -i (1+i)^2
        (pl,) = decompose_prime(QI, 2)
        assert (pl.e, pl.f) == (2, 1)
        assert pl.ord(1 + QI.gen()) == 1
        assert pl.ord(QI.coerce(2)) == 2

    def test_ramified_two_in_qsqrt2(self):
        (pl,) = decompose_prime(QSQRT2, 2)
        assert (pl.e, pl.f) == (2, 1)
        assert pl.ord(QSQRT2.gen()) == 1
        assert pl.ord(QSQRT2.coerce(2)) == 2  # oracles.py::ord2_in_Qsqrt2

    def test_split_seven_in_qsqrt2(self):
        places = decompose_prime(QSQRT2, 7)
        assert sorted(pl.ord(3 - QSQRT2.gen()) for pl in places) == [0, 1]

    def test_cbrt2_at_five(self):
        places = decompose_prime(QCBRT2, 5)
        # oracles.py::x3m2_mod5
        assert sorted((pl.e, pl.f) for pl in places) == [(1, 1), (1, 2)]

    def test_negative_order(self):
        places = decompose_prime(QI, 5)
        x = 1 / (2 + QI.gen())
        assert sorted(pl.ord(x) for pl in places) == [-1, 0]

    def test_ord_additive(self):
        (pl,) = decompose_prime(QI, 2)
        i = QI.gen()
        x, y = 1 + i, 3 + i
        assert pl.ord(x * y) == pl.ord(x) + pl.ord(y)

    def test_dedekind_guard(self):
        # oracles.py::dedekind_x2p3_p2_gcd_deg: criterion fails for x^2+3 at 2
        K = NumberField((3, 0, 1))
        assert not dedekind_p_maximal(K, 2)
        with pytest.raises(UnsupportedShape):
            decompose_prime(K, 2)

    def test_uniformizer(self):
        for p in (2, 3, 5):
            for pl in decompose_prime(QI, p):
                assert pl.ord(pl.uniformizer()) == 1

    def test_residue_map(self):
        places = decompose_prime(QI, 5)
        pl = next(p for p in places if p.ord(2 + QI.gen()) == 1)
        assert pl.residue(2 + QI.gen()) == ()
        other = next(p for p in places if p.ord(2 + QI.gen()) == 0)
        assert other.residue(2 + QI.gen()) != ()


class TestFunctionFieldPlaces:
    def test_ord_inf(self):
        T = QT.gen()
        inf = InfinitePlace(QT)
        # oracles.py::ord_inf_T2p1_over_T5
        assert inf.ord((T**2 + 1) / T**5) == 3
        assert inf.ord(T**2) == -2

    def test_residue_linear_place(self):
        T = QT.gen()
        pl = FinitePlace(QT, (-2, 1))
        # oracles.py::residue_T2p1_over_Tm3_at_2
        assert pl.residue((T**2 + 1) / (T - 3)) == -5

    def test_residue_at_infinity(self):
        T = QT.gen()
        inf = InfinitePlace(QT)
        assert inf.residue((3 * T**2 + 1) / (2 * T**2 - T)) == Fraction(3, 2)
        assert inf.residue(1 / T) == 0

    def test_quadratic_residue_field(self):
        T = QT.gen()
        pl = FinitePlace(QT, (-2, 0, 1))
        rf = pl.residue_field()
        assert rf == QSQRT2
        # residue of (T^2+1)/(T-3) at T = sqrt2: 3/(sqrt2 - 3) = -(9 + 3 sqrt2)/7
        res = pl.residue((T**2 + 1) / (T - 3))
        assert res.coeffs == (Fraction(-9, 7), Fraction(-3, 7))

    def test_ord_quadratic_place(self):
        T = QT.gen()
        pl = FinitePlace(QT, (-2, 0, 1))
        assert pl.ord((T**2 - 2) ** 3 / (T + 1)) == 3
        assert pl.ord(1 / (T**2 - 2)) == -1

    def test_place_validation(self):
        with pytest.raises(UnsupportedShape):
            FinitePlace(QT, (1,))  # constant
        with pytest.raises(UnsupportedShape):
            FinitePlace(QT, (-1, 0, 1))  # reducible
        with pytest.raises(UnsupportedShape):
            FinitePlace(QT, (1, 2))  # not monic

    def test_uniformizers(self):
        T = QT.gen()
        pl = FinitePlace(QT, (-2, 1))
        assert pl.ord(pl.uniformizer()) == 1
        inf = InfinitePlace(QT)
        assert inf.ord(inf.uniformizer()) == 1


# ----------------------------------------------------------------- parser


class TestParser:
    def test_field_round_trips(self):
        for text in ("Q", "Q(i)", "Q(a:a^2 - 2)", "Q(T)", "Q(a:a^2 - 2)(T)"):
            f = parse_field(text)
            assert parse_field(f.text()) == f

    def test_element_round_trip(self):
        T = QT.gen()
        for x in (
            (T**2 + 1) / (T - 3),
            T - Fraction(7, 2),
            QT.coerce(Fraction(-7, 2)),
            QT.zero(),
        ):
            assert parse_element(element_text(x), QT) == x

    def test_nf_element_round_trip(self):
        a = QSQRT2.gen()
        for x in (a, 1 + a, QSQRT2.element((Fraction(1, 2), Fraction(-3, 4)))):
            assert parse_element(element_text(x), QSQRT2) == x

    def test_full_grammar(self):
        T = QT.gen()
        got = parse_element("(2*T + 1)^2 / (T - 1) - 3/4", QT)
        want = (2 * T + 1) ** 2 / (T - 1) - Fraction(3, 4)
        assert got == want

    def test_negative_powers(self):
        T = QT.gen()
        assert parse_element("T^-2", QT) == 1 / T**2

    def test_syntax_error_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse_element("T + ", QT)
        assert err.value.position == 4
        with pytest.raises(ExprSyntaxError):
            parse_element("T $ 2", QT)
        with pytest.raises(ExprSyntaxError):
            parse_element("x + 2", QT)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            parse_element("1/(T - T)", QT)
        with pytest.raises(DivisionByZero):
            parse_element("(T - T)^-1", QT)

    def test_place_parsing(self):
        assert parse_place("5", QQ).p == 5
        assert parse_place("T^2 - 2", QT).poly == (Fraction(-2), Fraction(0), Fraction(1))
        assert parse_place("inf", QT).text() == "inf"
        pl = parse_place("(5,i+2)", QI)
        assert pl.ord(2 + QI.gen()) == 1

    def test_ambiguous_nf_place_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse_place("5", QI)

    def test_inert_nf_place_by_number(self):
        pl = parse_place("3", QI)
        assert (pl.e, pl.f) == (1, 2)
