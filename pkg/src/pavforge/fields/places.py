"""Places and their valuations: rational primes, prime ideals of number
fields, and finite/infinite places of rational function fields.

Prime ideals are handled only at primes where the power basis is maximal
(Dedekind criterion, asserted at construction); orders are computed by
integer lattice membership for powers of the ideal, so no part of the
valuation arithmetic depends on floating point or on an external ideal
library.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

from ..errors import UnsupportedShape
from . import polys
from .descriptors import FFElt, FunctionField, NFElt, NumberField, QQ, Rationals

ORD_INF = float("inf")


# ------------------------------------------------------------------------
# places of Q


class PrimePlace:
    """The p-adic place of Q."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p < 2 or not sympy.isprime(p):
            raise UnsupportedShape(f"{p} is not prime")
        self.p = p

    @property
    def field(self):
        return QQ

    def ord(self, x) -> int | float:
        x = Fraction(x)
        if x == 0:
            return ORD_INF
        p, k = self.p, 0
        num, den = x.numerator, x.denominator
        while num % p == 0:
            num //= p
            k += 1
        while den % p == 0:
            den //= p
            k -= 1
        return k

    def residue(self, x) -> int:
        x = Fraction(x)
        if self.ord(x) < 0:
            raise ValueError("residue of a non-integral element")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def uniformizer(self):
        return Fraction(self.p)

    def text(self) -> str:
        return str(self.p)

    def __repr__(self):
        return f"PrimePlace({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimePlace) and self.p == other.p

    def __hash__(self):
        return hash(("p", self.p))


# ------------------------------------------------------------------------
# prime ideals of number fields


def _mod_poly(coeffs, p):
    return polys.p_trim(tuple(c % p for c in coeffs))


def _fp_divmod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and polys.p_trim(tuple(c % p for c in a)):
        a = [c % p for c in a]
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] * inv_lead % p
        k = len(a) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            a[k + i] = (a[k + i] - c * cb) % p
        a.pop()
    return polys.p_trim(tuple(c % p for c in q)), polys.p_trim(tuple(c % p for c in a))


def _fp_gcd(a, b, p):
    a = _mod_poly(a, p)
    b = _mod_poly(b, p)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _fp_mul(a, b, p):
    return _mod_poly(polys.p_mul(a, b), p)


def _factor_mod_p(coeffs, p):
    """Monic irreducible factors (as int tuples, coefficients in [0,p)) with
    multiplicities, deterministically ordered."""
    x = sympy.Symbol("x")
    expr = sum(int(c) * x**i for i, c in enumerate(coeffs))
    fl = sympy.Poly(expr, x, modulus=p).factor_list()[1]
    out = []
    for g, e in fl:
        cs = [int(c) % p for c in reversed(g.all_coeffs())]
        out.append((tuple(cs), int(e)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def dedekind_p_maximal(field: NumberField, p: int) -> bool:
    """Dedekind's criterion for p-maximality of the power basis."""
    f_int = tuple(int(c) for c in field.minpoly)
    factors = _factor_mod_p(f_int, p)
    gbar = (1,)
    hbar = (1,)
    for g, e in factors:
        gbar = _fp_mul(gbar, g, p)
        for _ in range(e - 1):
            hbar = _fp_mul(hbar, g, p)
    # F = (g_lift * h_lift - minpoly) / p over Z, then mod p
    gh = polys.p_mul(gbar, hbar)
    diff = polys.p_sub(gh, f_int)
    assert all(c % p == 0 for c in diff)
    fbar = _mod_poly(tuple(c // p for c in diff), p)
    d = _fp_gcd(_fp_gcd(fbar, gbar, p), hbar, p)
    return polys.p_deg(d) == 0


class PrimeIdealPlace:
    """A prime of a number field above p, as (p, g(alpha)) with the power
    basis p-maximal."""

    __slots__ = ("nf", "p", "gbar", "e", "f", "index", "_power_cache")

    def __init__(self, nf: NumberField, p: int, gbar: tuple, e: int, f: int, index: int):
        self.nf = nf
        self.p = p
        self.gbar = gbar
        self.e = e
        self.f = f
        self.index = index
        self._power_cache = {}

    @property
    def field(self):
        return self.nf

    # --- integer lattice machinery -------------------------------------

    def _mul_matrix_columns(self, poly_int):
        """Columns g(alpha) * alpha^j in the power basis, integer entries."""
        n = self.nf.degree
        minpoly = self.nf.minpoly
        cols = []
        cur = polys.p_trim(poly_int)
        for _ in range(n):
            reduced = polys.p_mod(tuple(Fraction(c) for c in cur), minpoly)
            col = [int(reduced[i]) if i < len(reduced) else 0 for i in range(n)]
            assert all(
                (reduced[i] if i < len(reduced) else 0) == col[i] for i in range(n)
            )
            cols.append(col)
            cur = (0,) + tuple(cur)  # multiply by alpha
        return cols

    def _lattice(self, k: int):
        """Triangular integer basis (list of n pivot columns) of P**k."""
        if k in self._power_cache:
            return self._power_cache[k]
        n = self.nf.degree
        if k == 0:
            basis = [[int(i == j) for i in range(n)] for j in range(n)]
        elif k == 1:
            cols = [[self.p * int(i == j) for i in range(n)] for j in range(n)]
            cols += self._mul_matrix_columns(self.gbar)
            basis = _hnf_basis(cols, n)
        else:
            a = self._lattice(k - 1)
            b = self._lattice(1)
            cols = []
            for u in a:
                for v in b:
                    prod = polys.p_mod(
                        tuple(Fraction(c) for c in polys.p_mul(tuple(u), tuple(v))),
                        self.nf.minpoly,
                    )
                    cols.append([int(prod[i]) if i < len(prod) else 0 for i in range(n)])
            basis = _hnf_basis(cols, n)
        self._power_cache[k] = basis
        return basis

    def _member_local(self, vec, k: int) -> bool:
        """vec in P**k localized at p (denominators prime to p allowed)."""
        basis = self._lattice(k)
        n = self.nf.degree
        rem = [Fraction(v) for v in vec]
        for i in range(n):
            piv = basis[i]
            c = Fraction(rem[i], piv[i])
            if c.denominator % self.p == 0:
                return False
            for j in range(i, n):
                rem[j] -= c * piv[j]
        assert all(r == 0 for r in rem)
        return True

    # --- the valuation ---------------------------------------------------

    def ord(self, x) -> int | float:
        x = self.nf.coerce(x)
        if x.is_zero():
            return ORD_INF
        m = 1
        for c in x.coeffs:
            m = m * c.denominator // math.gcd(m, c.denominator)
        y = [int(c * m) for c in x.coeffs]
        shift = -self.e * _int_ord(m, self.p)
        nrm = self.nf.element([Fraction(v) for v in y]).norm()
        cap = _int_ord(abs(nrm.numerator), self.p) // self.f
        k = 0
        while k < cap + 1 and self._member_local(y, k + 1):
            k += 1
        return k + shift

    def residue(self, x) -> tuple:
        """Image in F_p[t]/(gbar), for x with a p-integral representation."""
        x = self.nf.coerce(x)
        m = 1
        for c in x.coeffs:
            m = m * c.denominator // math.gcd(m, c.denominator)
        if m % self.p == 0:
            raise UnsupportedShape(
                "residue needs a representation with denominator prime to p"
            )
        y = tuple(int(c * m) for c in x.coeffs)
        minv = pow(m, -1, self.p)
        reduced = _fp_divmod(_mod_poly(y, self.p), self.gbar, self.p)[1]
        return tuple(c * minv % self.p for c in reduced)

    def uniformizer(self) -> NFElt:
        g_elt = self.nf.element([Fraction(c) for c in self.gbar])
        candidates = [g_elt]
        if self.e == 1:
            candidates.append(self.nf.element((Fraction(self.p),)))
        gen = self.nf.gen()
        for j in range(self.nf.degree):
            candidates.append(g_elt + self.p * gen**j)
        for c in candidates:
            if self.ord(c) == 1:
                return c
        raise AssertionError("no uniformizer among standard candidates")

    def text(self) -> str:
        gtxt = _int_poly_text(self.gbar, self.nf.gen_name)
        return f"({self.p},{gtxt})"

    def __repr__(self):
        return f"PrimeIdealPlace({self.nf.text()}, p={self.p}, g={list(self.gbar)}, e={self.e}, f={self.f})"

    def __eq__(self, other):
        return (
            isinstance(other, PrimeIdealPlace)
            and self.nf == other.nf
            and self.p == other.p
            and self.gbar == other.gbar
        )

    def __hash__(self):
        return hash(("P", self.nf, self.p, self.gbar))


def _int_ord(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("order of zero integer")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _int_poly_text(coeffs, var):
    return (
        "+".join(
            f"{c}" if i == 0 else (var if i == 1 else f"{var}^{i}") if c == 1 else
            (f"{c}*{var}" if i == 1 else f"{c}*{var}^{i}")
            for i, c in enumerate(coeffs)
            if c != 0
        )
        or "0"
    )


def _hnf_basis(cols, n):
    """Triangular basis of the full-rank lattice spanned by integer columns.

    Returns n columns, the i-th having positive pivot at row i and zeros
    above; suitable for forward-substitution membership tests.
    """
    cols = [list(c) for c in cols if any(c)]
    basis = []
    for row in range(n):
        # gcd-eliminate until at most one column is nonzero at this row;
        # every remaining column is zero in all rows above by induction
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            piv = nz[0]
            for c in nz[1:]:
                q = c[row] // piv[row]
                if q:
                    for i in range(row, n):
                        c[i] -= q * piv[i]
        nz = [c for c in cols if c[row] != 0]
        if not nz:
            raise AssertionError("lattice not full rank")
        piv = nz[0]
        if piv[row] < 0:
            piv[:] = [-v for v in piv]
        basis.append(piv)
        cols = [c for c in cols if c is not piv and any(c)]
    return basis


def decompose_prime(nf: NumberField, p: int) -> list[PrimeIdealPlace]:
    """The primes of the field above p, under the Dedekind guard."""
    if not nf.has_integral_minpoly():
        raise UnsupportedShape(
            "prime decomposition needs a monic integer minimal polynomial"
        )
    if not sympy.isprime(p):
        raise UnsupportedShape(f"{p} is not prime")
    if not dedekind_p_maximal(nf, p):
        raise UnsupportedShape(
            f"power basis is not maximal at {p} (Dedekind criterion fails)"
        )
    factors = _factor_mod_p(tuple(int(c) for c in nf.minpoly), p)
    out = []
    for idx, (g, e) in enumerate(factors):
        out.append(PrimeIdealPlace(nf, p, g, e, polys.p_deg(g), idx))
    return out


# ------------------------------------------------------------------------
# places of function fields


class FinitePlace:
    """The place of base(T) at a monic irreducible polynomial."""

    __slots__ = ("ff", "poly")

    def __init__(self, ff: FunctionField, poly):
        poly = polys.p_trim(tuple(ff.base.coerce(c) for c in poly))
        if polys.p_deg(poly) < 1:
            raise UnsupportedShape("finite places come from nonconstant polynomials")
        if poly[-1] != 1:
            raise UnsupportedShape("place polynomial must be monic")
        if not _irreducible_over_base(ff.base, poly):
            raise UnsupportedShape("place polynomial must be irreducible")
        self.ff = ff
        self.poly = poly

    @property
    def field(self):
        return self.ff

    @property
    def degree(self) -> int:
        return polys.p_deg(self.poly)

    def ord(self, x) -> int | float:
        x = self.ff.coerce(x)
        if x.is_zero():
            return ORD_INF
        up = polys.p_multiplicity(x.num, self.poly) if x.num else 0
        down = polys.p_multiplicity(x.den, self.poly)
        return up - down

    def residue(self, x):
        """The image in the residue field, for x of nonnegative order."""
        x = self.ff.coerce(x)
        k = self.ord(x)
        if k == ORD_INF or k > 0:
            return self.residue_field().zero() if self.degree > 1 else self.ff.base.zero()
        if k < 0:
            raise ValueError("residue of a non-integral element")
        num, den = x.num, x.den
        if self.degree == 1:
            root = -self.poly[0]
            return polys.p_eval(num, root) / polys.p_eval(den, root)
        rf = self.residue_field()
        num_r = rf.element([Fraction(c) for c in polys.p_mod(num, self.poly)])
        den_r = rf.element([Fraction(c) for c in polys.p_mod(den, self.poly)])
        return num_r / den_r

    def residue_field(self):
        if self.degree == 1:
            return self.ff.base
        if not isinstance(self.ff.base, Rationals):
            raise UnsupportedShape(
                "higher-degree places over number-field constants are not supported"
            )
        return NumberField(self.poly, gen_name="a")

    def uniformizer(self) -> FFElt:
        return self.ff.element(self.poly)

    def text(self) -> str:
        from .descriptors import _poly_text

        return _poly_text(self.poly, self.ff.var_name)

    def __repr__(self):
        return f"FinitePlace({self.text()})"

    def __eq__(self, other):
        return (
            isinstance(other, FinitePlace)
            and self.ff == other.ff
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash(("fin", self.ff, self.poly))


class InfinitePlace:
    """The degree place of base(T): ord = deg(den) - deg(num)."""

    __slots__ = ("ff",)

    def __init__(self, ff: FunctionField):
        self.ff = ff

    @property
    def field(self):
        return self.ff

    @property
    def degree(self) -> int:
        return 1

    def ord(self, x) -> int | float:
        x = self.ff.coerce(x)
        if x.is_zero():
            return ORD_INF
        return polys.p_deg(x.den) - polys.p_deg(x.num)

    def residue(self, x):
        x = self.ff.coerce(x)
        k = self.ord(x)
        if k == ORD_INF or k > 0:
            return self.ff.base.zero()
        if k < 0:
            raise ValueError("residue of a non-integral element")
        return x.num[-1] / x.den[-1]

    def residue_field(self):
        return self.ff.base

    def uniformizer(self) -> FFElt:
        return self.ff.element((self.ff.base.one(),), (self.ff.base.zero(), self.ff.base.one()))

    def text(self) -> str:
        return "inf"

    def __repr__(self):
        return f"InfinitePlace({self.ff.text()})"

    def __eq__(self, other):
        return isinstance(other, InfinitePlace) and self.ff == other.ff

    def __hash__(self):
        return hash(("inf_place", self.ff))


def _irreducible_over_base(base, poly) -> bool:
    x = sympy.Symbol("x")
    if isinstance(base, Rationals):
        expr = sum(
            sympy.Rational(c.numerator, c.denominator) * x**i
            for i, c in enumerate(poly)
        )
        fl = sympy.Poly(expr, x, domain="QQ").factor_list()[1]
        return len(fl) == 1 and fl[0][1] == 1
    # number-field coefficients: factor over the extension
    alias = sympy.Symbol(base.gen_name)
    theta = sympy.AlgebraicNumber(
        sympy.CRootOf(_sympy_poly_expr(base.minpoly, alias), 0), alias=base.gen_name
    )
    expr = 0
    for i, c in enumerate(poly):
        expr += _nf_coeff_to_sympy(c, theta) * x**i
    fl = sympy.factor_list(expr, x, extension=theta)[1]
    nonconst = [(g, e) for g, e in fl if sympy.Poly(g, x).degree() > 0]
    return (
        len(nonconst) == 1
        and nonconst[0][1] == 1
        and sympy.Poly(nonconst[0][0], x).degree() == polys.p_deg(poly)
    )


def _sympy_poly_expr(coeffs, sym):
    return sum(
        sympy.Rational(c.numerator, c.denominator) * sym**i for i, c in enumerate(coeffs)
    )


def _nf_coeff_to_sympy(c, theta):
    if isinstance(c, (int, Fraction)):
        return sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
    expr = 0
    for i, q in enumerate(c.coeffs):
        expr += sympy.Rational(q.numerator, q.denominator) * theta.as_expr() ** i
    return expr


# ------------------------------------------------------------------------
# generic dispatch


def ord_at(place, x):
    return place.ord(x)


def residue_at(place, x):
    return place.residue(x)
