"""Field descriptors (Q, number fields, rational function fields) and
their element types.

Descriptors compare structurally: number fields by minimal polynomial
(generator names are cosmetic), function fields by constant field.  Number
field elements are coefficient vectors in the power basis; function field
elements are reduced fractions of polynomials over the constant field.
"""

from __future__ import annotations

import os
from fractions import Fraction

import sympy

from ..errors import UnsupportedShape
from ..xreal import XReal, nth_root_bounds
from . import polys
from .sturm import interval_eval, isolate_real_roots, refine_root

DEGREE_CAP = 16


def default_precision_bits() -> int:
    raw = os.environ.get("PAVFORGE_PRECISION", "")
    try:
        bits = int(raw)
    except ValueError:
        return 50
    return bits if bits > 0 else 50


# ------------------------------------------------------------------------
# descriptors


class Rationals:
    """The rational numbers; elements are Fraction."""

    degree = 1

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, NFElt) and x.as_rational() is not None:
            return x.as_rational()
        raise TypeError(f"cannot coerce {x!r} into Q")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def embeddings(self):
        return [Embedding(self, "real", 0, None)]

    def text(self) -> str:
        return "Q"

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


QQ = Rationals()

_IRREDUCIBILITY_CACHE: dict[tuple, bool] = {}


def _is_irreducible_over_q(coeffs: tuple) -> bool:
    key = coeffs
    hit = _IRREDUCIBILITY_CACHE.get(key)
    if hit is not None:
        return hit
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i
               for i, c in enumerate(coeffs))
    factors = sympy.Poly(expr, x, domain="QQ").factor_list()[1]
    out = len(factors) == 1 and factors[0][1] == 1
    _IRREDUCIBILITY_CACHE[key] = out
    return out


class NumberField:
    """Q(alpha) for alpha a root of a monic irreducible polynomial."""

    def __init__(self, minpoly, gen_name: str = "a"):
        coeffs = polys.p_trim(tuple(Fraction(c) for c in minpoly))
        if polys.p_deg(coeffs) < 2:
            raise UnsupportedShape("number fields need degree at least 2")
        if polys.p_deg(coeffs) > DEGREE_CAP:
            raise UnsupportedShape(f"degree cap is {DEGREE_CAP}")
        if coeffs[-1] != 1:
            raise UnsupportedShape("minimal polynomial must be monic")
        if not _is_irreducible_over_q(coeffs):
            raise UnsupportedShape("minimal polynomial must be irreducible")
        self.minpoly = coeffs
        self.gen_name = gen_name
        self._embeddings = None

    @property
    def degree(self) -> int:
        return polys.p_deg(self.minpoly)

    def element(self, coeffs) -> "NFElt":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > self.degree:
            coeffs = polys.p_mod(coeffs, self.minpoly)
        coeffs = coeffs + (Fraction(0),) * (self.degree - len(coeffs))
        return NFElt(self, coeffs)

    def gen(self) -> "NFElt":
        return self.element((0, 1))

    def zero(self):
        return self.element(())

    def one(self):
        return self.element((1,))

    def coerce(self, x):
        if isinstance(x, NFElt):
            if x.field == self:
                return x
            raise TypeError("element of a different number field")
        if isinstance(x, (int, Fraction)):
            return self.element((Fraction(x),))
        raise TypeError(f"cannot coerce {x!r} into {self.text()}")

    def has_integral_minpoly(self) -> bool:
        return all(c.denominator == 1 for c in self.minpoly)

    # conjugation: for imaginary quadratics the nontrivial automorphism
    # realises complex conjugation under either complex embedding
    def conjugation_exact(self) -> bool:
        if self.degree != 2:
            return False
        a0, a1 = self.minpoly[0], self.minpoly[1]
        return a1 * a1 - 4 * a0 < 0

    def embeddings(self):
        if self._embeddings is None:
            intervals = isolate_real_roots(self.minpoly)
            embs = [
                Embedding(self, "real", i, iv) for i, iv in enumerate(intervals)
            ]
            n_complex = (self.degree - len(intervals)) // 2
            if self.conjugation_exact():
                a0, a1 = self.minpoly[0], self.minpoly[1]
                data = (-a1 / 2, a0 - a1 * a1 / 4)  # (Re(alpha), Im(alpha)^2)
                embs.append(Embedding(self, "complex", len(intervals), data))
            else:
                for k in range(n_complex):
                    embs.append(Embedding(self, "complex", len(intervals) + k, None))
            self._embeddings = embs
        return self._embeddings

    def text(self) -> str:
        if self.minpoly == (Fraction(1), Fraction(0), Fraction(1)) and self.gen_name == "i":
            return "Q(i)"
        body = _poly_text(self.minpoly, self.gen_name)
        return f"Q({self.gen_name}:{body})"

    def __repr__(self):
        return f"NumberField({list(self.minpoly)}, {self.gen_name!r})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)


class FunctionField:
    """base(T): rational functions in one variable over a constant field."""

    def __init__(self, base, var_name: str = "T"):
        if not isinstance(base, (Rationals, NumberField)):
            raise UnsupportedShape("constant field must be Q or a number field")
        self.base = base
        self.var_name = var_name

    def element(self, num, den=None) -> "FFElt":
        num = polys.p_trim(tuple(self.base.coerce(c) for c in num))
        if den is None:
            den = (self.base.one(),)
        den = polys.p_trim(tuple(self.base.coerce(c) for c in den))
        return _ff_reduce(self, num, den)

    def gen(self) -> "FFElt":
        return self.element((0, 1))

    def zero(self):
        return self.element(())

    def one(self):
        return self.element((1,))

    def coerce(self, x):
        if isinstance(x, FFElt):
            if x.field == self:
                return x
            raise TypeError("element of a different function field")
        if isinstance(x, (int, Fraction)) or isinstance(x, NFElt):
            return self.element((x,))
        raise TypeError(f"cannot coerce {x!r} into {self.text()}")

    def text(self) -> str:
        return f"{self.base.text()}({self.var_name})"

    def __repr__(self):
        return f"FunctionField({self.base!r}, {self.var_name!r})"

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.base == other.base

    def __hash__(self):
        return hash(("FF", self.base))


# ------------------------------------------------------------------------
# elements


class NFElt:
    """An element of a number field, as a power-basis coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def as_poly(self):
        return polys.p_trim(self.coeffs)

    def as_rational(self):
        """The value as a Fraction if it lies in Q, else None."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _wrap(self, poly):
        coeffs = polys.p_mod(poly, self.field.minpoly)
        coeffs = tuple(coeffs) + (Fraction(0),) * (self.field.degree - len(coeffs))
        return NFElt(self.field, coeffs)

    def _coerce_other(self, other):
        if isinstance(other, NFElt):
            if other.field != self.field:
                raise TypeError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element((Fraction(other),))
        return None

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return NFElt(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElt(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self._wrap(polys.p_mul(self.as_poly(), o.as_poly()))

    __rmul__ = __mul__

    def inverse(self) -> "NFElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, u, _ = polys.p_xgcd(self.as_poly(), self.field.minpoly)
        assert polys.p_deg(g) == 0
        return self._wrap(polys.p_scale(u, 1 / g[0]))

    def __truediv__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def norm(self) -> Fraction:
        """Product of the values of this element under all embeddings."""
        p = self.as_poly()
        if not p:
            return Fraction(0)
        return Fraction(polys.p_resultant(self.field.minpoly, p))

    def conj(self) -> "NFElt":
        """The conjugation automorphism (imaginary quadratics only)."""
        if not self.field.conjugation_exact():
            raise UnsupportedShape("no exact conjugation on this field")
        a1 = self.field.minpoly[1]
        c0, c1 = self.coeffs
        return NFElt(self.field, (c0 - c1 * a1, -c1))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if isinstance(other, NFElt):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        r = self.as_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.minpoly, self.coeffs))

    def __repr__(self):
        return f"<{_poly_text(self.coeffs, self.field.gen_name) or '0'}>"


def _ff_reduce(field: FunctionField, num, den) -> "FFElt":
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return FFElt(field, (), (field.base.one(),))
    g = polys.p_gcd(num, den)
    if polys.p_deg(g) > 0:
        num, _ = polys.p_divmod(num, g)
        den, _ = polys.p_divmod(den, g)
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return FFElt(field, num, den)


class FFElt:
    """A rational function num/den in reduced form (monic denominator)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num: tuple, den: tuple):
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return polys.p_deg(self.num) <= 0 and polys.p_deg(self.den) == 0

    def as_constant(self):
        """The value in the constant field if this is a constant, else None."""
        if not self.is_constant():
            return None
        if not self.num:
            return self.field.base.zero()
        return self.num[0] / self.den[0]

    def _coerce_other(self, other):
        if isinstance(other, FFElt):
            if other.field != self.field:
                raise TypeError("mixed function fields")
            return other
        if isinstance(other, (int, Fraction, NFElt)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        num = polys.p_add(polys.p_mul(self.num, o.den), polys.p_mul(o.num, self.den))
        return _ff_reduce(self.field, num, polys.p_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return FFElt(self.field, polys.p_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return _ff_reduce(
            self.field, polys.p_mul(self.num, o.num), polys.p_mul(self.den, o.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return _ff_reduce(
            self.field, polys.p_mul(self.num, o.den), polys.p_mul(self.den, o.num)
        )

    def __rtruediv__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero")
            return FFElt(self.field, self.den, self.num)._normalized() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def _normalized(self):
        return _ff_reduce(self.field, self.num, self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NFElt)):
            try:
                other = self.field.coerce(other)
            except TypeError:
                return NotImplemented
        if isinstance(other, FFElt):
            return (
                self.field == other.field
                and self.num == other.num
                and self.den == other.den
            )
        return NotImplemented

    def __hash__(self):
        c = self.as_constant()
        if c is not None:
            return hash(c)
        return hash((self.num, self.den))

    def __repr__(self):
        v = self.field.var_name
        num = _poly_text(self.num, v) or "0"
        if polys.p_deg(self.den) == 0 and self.den and self.den[0] == 1:
            return f"<{num}>"
        return f"<({num})/({_poly_text(self.den, v)})>"


# ------------------------------------------------------------------------
# embeddings


class Embedding:
    """A real embedding (with isolating interval) or a conjugate pair."""

    __slots__ = ("field", "kind", "index", "data")

    def __init__(self, field, kind: str, index: int, data):
        self.field = field
        self.kind = kind  # "real" | "complex"
        self.index = index
        self.data = data

    def __eq__(self, other):
        return (
            isinstance(other, Embedding)
            and self.field == other.field
            and self.kind == other.kind
            and self.index == other.index
        )

    def __hash__(self):
        return hash((self.field, self.kind, self.index))

    def __repr__(self):
        return f"Embedding({self.field.text()}, {self.kind}, {self.index})"


def embed_interval(x, emb: Embedding, bits: int):
    """Enclosure of the image of x under the embedding.

    Returns (re_lo, re_hi, im_lo, im_hi) as Fractions, with the imaginary
    part for the positive-imaginary member of a conjugate pair.
    """
    zero = Fraction(0)
    if isinstance(emb.field, Rationals):
        v = Fraction(x)
        return v, v, zero, zero
    x = emb.field.coerce(x)
    r = x.as_rational()
    if r is not None:
        return r, r, zero, zero
    if emb.kind == "real":
        field = emb.field
        lo, hi = emb.data
        poly = x.coeffs
        target = Fraction(1, 1 << bits)
        while True:
            vlo, vhi = interval_eval(poly, lo, hi)
            mid = abs(vlo + vhi) / 2
            if vhi - vlo <= target * max(Fraction(1), mid):
                return vlo, vhi, zero, zero
            width = (hi - lo) / 2
            lo, hi = refine_root(field.minpoly, lo, hi, width)
            emb.data = (lo, hi)
    if emb.data is None:
        raise UnsupportedShape(
            "no exact evaluation for complex embeddings of this field"
        )
    re_alpha, imsq_alpha = emb.data
    c0, c1 = x.coeffs
    re = c0 + c1 * re_alpha
    im_lo, im_hi = nth_root_bounds(imsq_alpha, 2, bits)
    if c1 < 0:
        im_lo, im_hi = c1 * im_hi, c1 * im_lo
    else:
        im_lo, im_hi = c1 * im_lo, c1 * im_hi
    return re, re, im_lo, im_hi


def abs_sq_exact(x, emb: Embedding):
    """|image of x|**2 as an exact Fraction, or None when not available."""
    if isinstance(emb.field, Rationals):
        v = Fraction(x)
        return v * v
    x = emb.field.coerce(x)
    r = x.as_rational()
    if r is not None:
        return r * r
    if emb.kind == "complex" and emb.field.conjugation_exact():
        prod = x * x.conj()
        out = prod.as_rational()
        assert out is not None
        return out
    return None


def abs_value_at(x, emb: Embedding, bits: int | None = None) -> XReal:
    """|image of x| as an XReal (exact where the field structure allows)."""
    if bits is None:
        bits = default_precision_bits() + 2
    sq = abs_sq_exact(x, emb)
    if sq is not None:
        if sq == 0:
            return XReal.zero()
        root = _exact_sqrt(sq)
        if root is not None:
            return XReal.rational(root)
        lo, hi = nth_root_bounds(sq, 2, bits + 4)
        mid = (lo + hi) / 2
        return XReal.approx(mid.numerator / mid.denominator)
    if emb.kind == "real":
        x = emb.field.coerce(x)
        if x.is_zero():
            return XReal.zero()
        # refine until the image interval is sign-definite with small
        # relative width; the image is nonzero, so this terminates
        lo, hi = emb.data
        poly = x.coeffs
        target = Fraction(1, 1 << (bits + 2))
        while True:
            vlo, vhi = interval_eval(poly, lo, hi)
            if vlo > 0 or vhi < 0:
                alo, ahi = (vlo, vhi) if vlo > 0 else (-vhi, -vlo)
                if ahi - alo <= target * alo:
                    mid = (alo + ahi) / 2
                    return XReal.approx(mid.numerator / mid.denominator)
            width = (hi - lo) / 2
            lo, hi = refine_root(emb.field.minpoly, lo, hi, width)
            emb.data = (lo, hi)
    raise UnsupportedShape("cannot evaluate this embedding exactly")


def _exact_sqrt(f: Fraction):
    from ..xreal import exact_pow

    return exact_pow(f, Fraction(1, 2))


# ------------------------------------------------------------------------
# plain-text rendering of polynomials (shared with the parser)


def _coeff_text(c: Fraction) -> str:
    return str(c)


def _poly_text(coeffs, var: str) -> str:
    coeffs = polys.p_trim(tuple(coeffs))
    if not coeffs:
        return ""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if isinstance(c, NFElt):
            body = _poly_text(c.coeffs, c.field.gen_name) or "0"
            if i == 0:
                term = f"({body})"
            else:
                term = f"({body})*{var}" + (f"^{i}" if i > 1 else "")
            parts.append(("+", term))
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            term = str(a)
        else:
            mag = "" if a == 1 else (f"{a}*" if a.denominator == 1 else f"({a})*")
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out
