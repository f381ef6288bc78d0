"""Arithmetic on the extended half-line [0, +infinity].

Values are kept exact whenever they stay inside one of three exact lanes:

* ``rat``    -- a positive rational number
* ``exp``    -- e**q for a nonzero rational q
* ``zero`` / ``inf`` -- the two endpoints

Everything else demotes to the ``approx`` lane: a positive float together
with a tracked relative-error bound.  e**q is transcendental for rational
q != 0, so the rat and exp lanes never collide; e**0 canonicalizes to
rat(1) at construction.

Comparisons are decided through rigorous rational interval enclosures
(Taylor series with argument reduction for the exponential, integer n-th
roots for rational powers), refined until they separate.  Two values are
only ever reported Indeterminate when at least one is an approx whose
error interval overlaps the other.
"""

from __future__ import annotations

import enum
from fractions import Fraction

DEFAULT_RELERR = 2.0 ** -50

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)

_CMP_BITS_START = 64
_CMP_BITS_CAP = 1 << 14


class Cmp(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INDETERMINATE = "indeterminate"


class UndefinedProduct(ArithmeticError):
    """Raised for the product of zero and infinity."""

    def __init__(self, a, b):
        super().__init__(f"product of {a} and {b} is undefined")
        self.operands = (a, b)


# ------------------------------------------------------------------------
# rigorous rational enclosures


def _round_down(f: Fraction, bits: int) -> Fraction:
    return Fraction((f.numerator << bits) // f.denominator, 1 << bits)


def _round_up(f: Fraction, bits: int) -> Fraction:
    return Fraction(-((-f.numerator << bits) // f.denominator), 1 << bits)


def exp_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= e**q <= hi with relative width below 2**-bits."""
    q = Fraction(q)
    if q == 0:
        return _ONE, _ONE
    if q < 0:
        lo, hi = exp_bounds(-q, bits)
        return 1 / hi, 1 / lo
    # argument reduction: x = q / 2**k with x <= 1/2, square k times after
    k = 0
    x = q
    while x > _HALF:
        x /= 2
        k += 1
    work = bits + 2 * k + 16
    term = _ONE
    total = _ONE
    n = 1
    tail = _ONE
    while True:
        term = term * x / n
        total += term
        n += 1
        # remaining tail < next_term / (1 - x) <= 2 * next_term for x <= 1/2
        tail = 2 * term * x / n
        if tail < Fraction(1, 1 << (work + 4)):
            break
    lo, hi = total, total + tail
    for _ in range(k):
        lo, hi = _round_down(lo * lo, work), _round_up(hi * hi, work)
    return lo, hi


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer (Newton)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    t = 1 << (n.bit_length() // k + 1)
    while True:
        s = ((k - 1) * t + n // t ** (k - 1)) // k
        if s >= t:
            break
        t = s
    return t


def nth_root_bounds(a: Fraction, k: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= a**(1/k) <= hi with relative width below ~2**-bits."""
    if a < 0:
        raise ValueError("negative radicand")
    if a == 0:
        return _ZERO, _ZERO
    s = bits + 8
    while True:
        scaled = (a.numerator << (k * s)) // a.denominator
        t = _iroot(scaled, k)
        if t >> (bits + 2):
            return Fraction(t, 1 << s), Fraction(t + 2, 1 << s)
        s *= 2


def pow_bounds(base: Fraction, e: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of base**e for base > 0, rational e."""
    if base <= 0:
        raise ValueError("base must be positive")
    if e == 0:
        return _ONE, _ONE
    if e < 0:
        lo, hi = pow_bounds(base, -e, bits)
        return 1 / hi, 1 / lo
    m, rem = divmod(e.numerator, e.denominator)
    head = base ** m
    if rem == 0:
        return head, head
    frac_part = base ** rem  # (base**rem)**(1/den)
    lo, hi = nth_root_bounds(frac_part, e.denominator, bits)
    return head * lo, head * hi


def exact_pow(base: Fraction, e: Fraction):
    """base**e as an exact Fraction, or None if it leaves the rationals."""
    if base <= 0:
        raise ValueError("base must be positive")
    if e.denominator == 1:
        return base ** e.numerator
    k = e.denominator
    rn = _iroot(base.numerator, k)
    rd = _iroot(base.denominator, k)
    if rn ** k == base.numerator and rd ** k == base.denominator:
        return Fraction(rn, rd) ** e.numerator
    return None


# ------------------------------------------------------------------------
# the value type


class XReal:
    """A point of [0, +infinity]; see the module docstring for the lanes."""

    __slots__ = ("kind", "rat", "q", "val", "relerr")

    def __init__(self, kind, rat=None, q=None, val=None, relerr=None):
        self.kind = kind
        self.rat = rat
        self.q = q
        self.val = val
        self.relerr = relerr

    # constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "XReal":
        return _XR_ZERO

    @staticmethod
    def infinity() -> "XReal":
        return _XR_INF

    @staticmethod
    def rational(r) -> "XReal":
        r = Fraction(r)
        if r < 0:
            raise ValueError("rational lane holds positive values only")
        if r == 0:
            return _XR_ZERO
        return XReal("rat", rat=r)

    @staticmethod
    def exp_of(q) -> "XReal":
        q = Fraction(q)
        if q == 0:
            return XReal.rational(1)
        return XReal("exp", q=q)

    @staticmethod
    def approx(val: float, relerr: float = DEFAULT_RELERR) -> "XReal":
        if not (val > 0):
            raise ValueError("approx lane holds positive values only")
        if not (0 <= relerr < 1):
            raise ValueError("relative error must lie in [0, 1)")
        return XReal("approx", val=val, relerr=relerr)

    # predicates ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    @property
    def is_finite(self) -> bool:
        return self.kind not in ("zero", "inf")

    @property
    def is_exact(self) -> bool:
        return self.kind in ("zero", "inf", "rat", "exp")

    # conversion ------------------------------------------------------------

    def to_float(self) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "inf":
            return float("inf")
        if self.kind == "rat":
            return self.rat.numerator / self.rat.denominator
        if self.kind == "exp":
            lo, hi = exp_bounds(self.q, 60)
            mid = (lo + hi) / 2
            return mid.numerator / mid.denominator
        return self.val

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational interval certainly containing the value (finite kinds)."""
        if self.kind == "rat":
            return self.rat, self.rat
        if self.kind == "exp":
            return exp_bounds(self.q, bits)
        if self.kind == "approx":
            v = Fraction(self.val)
            r = Fraction(self.relerr)
            return v * (1 - r), v * (1 + r)
        if self.kind == "zero":
            return _ZERO, _ZERO
        raise ValueError("no finite bounds for infinity")

    # rendering -------------------------------------------------------------

    def __repr__(self):
        if self.kind == "zero":
            return "XReal.zero()"
        if self.kind == "inf":
            return "XReal.infinity()"
        if self.kind == "rat":
            return f"XReal.rational({self.rat})"
        if self.kind == "exp":
            return f"XReal.exp_of({self.q})"
        return f"XReal.approx({self.val!r}, {self.relerr!r})"

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "inf":
            return "inf"
        if self.kind == "rat":
            return str(self.rat)
        if self.kind == "exp":
            return f"e^({self.q})"
        return f"~{self.val:.12g}"

    # structural equality (not numeric comparison; see xr_cmp) -------------

    def __eq__(self, other):
        if not isinstance(other, XReal):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "rat":
            return self.rat == other.rat
        if self.kind == "exp":
            return self.q == other.q
        if self.kind == "approx":
            return self.val == other.val and self.relerr == other.relerr
        return True

    def __hash__(self):
        return hash((self.kind, self.rat, self.q, self.val, self.relerr))


_XR_ZERO = XReal("zero")
_XR_INF = XReal("inf")


def _demote(x: XReal) -> tuple[float, float]:
    """(val, relerr) view of a finite nonzero value."""
    if x.kind == "approx":
        return x.val, x.relerr
    return x.to_float(), DEFAULT_RELERR


# ------------------------------------------------------------------------
# arithmetic


def xr_mul(a: XReal, b: XReal) -> XReal:
    kinds = {a.kind, b.kind}
    if kinds == {"zero", "inf"}:
        raise UndefinedProduct(a, b)
    if "zero" in kinds:
        return _XR_ZERO
    if "inf" in kinds:
        return _XR_INF
    if a.kind == "rat" and b.kind == "rat":
        return XReal.rational(a.rat * b.rat)
    if a.kind == "exp" and b.kind == "exp":
        return XReal.exp_of(a.q + b.q)
    # multiplying by exactly 1 keeps the other lane
    if a.kind == "rat" and a.rat == 1:
        return b
    if b.kind == "rat" and b.rat == 1:
        return a
    va, ra = _demote(a)
    vb, rb = _demote(b)
    return XReal.approx(va * vb, ra + rb + DEFAULT_RELERR)


def xr_add(a: XReal, b: XReal) -> XReal:
    if a.kind == "inf" or b.kind == "inf":
        return _XR_INF
    if a.kind == "zero":
        return b
    if b.kind == "zero":
        return a
    if a.kind == "rat" and b.kind == "rat":
        return XReal.rational(a.rat + b.rat)
    va, ra = _demote(a)
    vb, rb = _demote(b)
    return XReal.approx(va + vb, max(ra, rb) + DEFAULT_RELERR)


def xr_pow(x: XReal, e) -> XReal:
    """x**e for a nonzero rational exponent (negative exponents invert)."""
    e = Fraction(e)
    if e == 0:
        if x.kind in ("zero", "inf"):
            raise ValueError(f"{x}**0 is undefined")
        return XReal.rational(1)
    if x.kind == "zero":
        return _XR_INF if e < 0 else _XR_ZERO
    if x.kind == "inf":
        return _XR_ZERO if e < 0 else _XR_INF
    if x.kind == "exp":
        return XReal.exp_of(x.q * e)
    if x.kind == "rat":
        exact = exact_pow(x.rat, e)
        if exact is not None:
            return XReal.rational(exact)
        lo, hi = pow_bounds(x.rat, e, 60)
        mid = (lo + hi) / 2
        return XReal.approx(mid.numerator / mid.denominator, DEFAULT_RELERR)
    new_relerr = abs(float(e)) * x.relerr + DEFAULT_RELERR
    if new_relerr >= 1:
        raise ValueError("power amplifies relative error beyond 1")
    return XReal.approx(x.val ** float(e), new_relerr)


def xr_div(a: XReal, b: XReal) -> XReal:
    return xr_mul(a, xr_pow(b, -1))


# ------------------------------------------------------------------------
# comparison


def xr_cmp(a: XReal, b: XReal) -> Cmp:
    order = {"zero": 0, "rat": 1, "exp": 1, "approx": 1, "inf": 2}
    oa, ob = order[a.kind], order[b.kind]
    if oa != ob or oa != 1:
        if oa < ob:
            return Cmp.LESS
        if oa > ob:
            return Cmp.GREATER
        return Cmp.EQUAL  # zero vs zero or inf vs inf
    # both strictly between 0 and infinity
    if a.kind == "rat" and b.kind == "rat":
        return _cmp_frac(a.rat, b.rat)
    if a.kind == "exp" and b.kind == "exp":
        return _cmp_frac(a.q, b.q)
    if a.kind != "approx" and b.kind != "approx":
        # exp vs rat: never equal (e**q transcendental for q != 0), so the
        # interval refinement always separates
        bits = _CMP_BITS_START
        while bits <= _CMP_BITS_CAP:
            alo, ahi = a.bounds(bits)
            blo, bhi = b.bounds(bits)
            if ahi < blo:
                return Cmp.LESS
            if bhi < alo:
                return Cmp.GREATER
            bits *= 2
        raise RuntimeError("exact comparison failed to separate")
    # at least one approx: a single interval test; overlap is honest doubt
    alo, ahi = a.bounds(_CMP_BITS_START)
    blo, bhi = b.bounds(_CMP_BITS_START)
    if ahi < blo:
        return Cmp.LESS
    if bhi < alo:
        return Cmp.GREATER
    return Cmp.INDETERMINATE


def _cmp_frac(a: Fraction, b: Fraction) -> Cmp:
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    return Cmp.EQUAL


def xr_le(a: XReal, b: XReal) -> bool:
    return xr_cmp(a, b) in (Cmp.LESS, Cmp.EQUAL)


def xr_max(values) -> XReal:
    """Largest of a nonempty collection.

    When the lead pair is Indeterminate (overlapping approx intervals) the
    larger center wins and the error bounds merge conservatively.
    """
    values = list(values)
    if not values:
        raise ValueError("xr_max of empty collection")
    best = values[0]
    for v in values[1:]:
        c = xr_cmp(v, best)
        if c == Cmp.GREATER:
            best = v
        elif c == Cmp.INDETERMINATE:
            va, ra = _demote(v)
            vb, rb = _demote(best)
            best = XReal.approx(max(va, vb), max(ra, rb) + DEFAULT_RELERR)
    return best


def xr_min(values) -> XReal:
    values = list(values)
    if not values:
        raise ValueError("xr_min of empty collection")
    best = values[0]
    for v in values[1:]:
        c = xr_cmp(v, best)
        if c == Cmp.LESS:
            best = v
        elif c == Cmp.INDETERMINATE:
            va, ra = _demote(v)
            vb, rb = _demote(best)
            best = XReal.approx(min(va, vb), max(ra, rb) + DEFAULT_RELERR)
    return best


# ------------------------------------------------------------------------
# serialization


def xr_to_json(x: XReal) -> dict:
    if x.kind == "zero":
        return {"kind": "zero"}
    if x.kind == "inf":
        return {"kind": "inf"}
    if x.kind == "rat":
        return {"kind": "rat", "num": x.rat.numerator, "den": x.rat.denominator}
    if x.kind == "exp":
        return {"kind": "exp", "q_num": x.q.numerator, "q_den": x.q.denominator}
    return {"kind": "approx", "val": x.val, "relerr": x.relerr}


def xr_from_json(obj: dict) -> XReal:
    kind = obj["kind"]
    if kind == "zero":
        return _XR_ZERO
    if kind == "inf":
        return _XR_INF
    if kind == "rat":
        return XReal.rational(Fraction(obj["num"], obj["den"]))
    if kind == "exp":
        return XReal.exp_of(Fraction(obj["q_num"], obj["q_den"]))
    if kind == "approx":
        return XReal.approx(obj["val"], obj["relerr"])
    raise ValueError(f"unknown kind {kind!r}")
