"""Pseudo-absolute values: a closed taxonomy with exact evaluation.

A pseudo-absolute value on a field K sends 0 to 0 and 1 to 1, is
subadditive, and is multiplicative away from the {0, infinity} clash.
Each member here is an immutable descriptor; evaluation lands in XReal
so exact lanes stay exact, and membership predicates (finiteness ring,
kernel) are decided from order data rather than numeric magnitude.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, FieldMismatch, NotUltrametric, UnsupportedShape
from .fields import (
    FinitePlace,
    FunctionField,
    InfinitePlace,
    NumberField,
    PrimeIdealPlace,
    PrimePlace,
    Rationals,
    abs_sq_exact,
    abs_value_at,
    element_text,
    parse_element,
    parse_field,
    parse_place,
    place_text,
)
from .fields.descriptors import FFElt
from .fields.polys import p_taylor_at
from .xreal import Cmp, XReal, xr_add, xr_cmp, xr_max, xr_mul, xr_pow

__all__ = [
    "Arch",
    "AxiomReport",
    "Composite",
    "Gauss",
    "RankInfo",
    "Scale",
    "Trivial",
    "UltraDegenerate",
    "UltraPlace",
    "check_pav_axioms",
    "extend_by_generalisation",
    "in_finiteness_ring",
    "in_kernel",
    "is_ultrametric",
    "lift_element",
    "pav_eval",
    "pav_from_json",
    "pav_rank",
    "pav_to_json",
    "restricts_to",
    "sample_elements",
    "sample_pairs",
    "scale_from_text",
]


class Scale:
    """Positive constant c in the weight e^(-c*ord), kept exact.

    Either a rational, or coeff*log(log_arg) with both parts rational
    and log_arg > 1.  The log form keeps powers of a uniformizer exactly
    rational: weight(k) = log_arg^(-coeff*k).
    """

    __slots__ = ("coeff", "log_arg")

    def __init__(self, coeff, log_arg=None):
        coeff = Fraction(coeff)
        if log_arg is not None:
            log_arg = Fraction(log_arg)
            if log_arg <= 0 or log_arg == 1:
                raise UnsupportedShape("log argument must be positive and not 1")
            if log_arg < 1:
                coeff, log_arg = -coeff, 1 / log_arg
        if coeff <= 0:
            raise UnsupportedShape("scale must be positive")
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "log_arg", log_arg)

    def __setattr__(self, name, value):
        raise AttributeError("Scale is immutable")

    @staticmethod
    def log_of(arg) -> "Scale":
        return Scale(1, arg)

    @property
    def is_rational(self) -> bool:
        return self.log_arg is None

    def mul(self, s) -> "Scale":
        return Scale(self.coeff * Fraction(s), self.log_arg)

    def weight(self, m) -> XReal:
        """e^(-c*m) as an XReal, exact whenever the lanes allow."""
        e = -self.coeff * Fraction(m)
        if self.log_arg is None:
            return XReal.exp_of(e)
        return xr_pow(XReal.rational(self.log_arg), e)

    def growth(self) -> XReal:
        """e^c, for comparing scales across the log and rational forms."""
        if self.log_arg is None:
            return XReal.exp_of(self.coeff)
        return xr_pow(XReal.rational(self.log_arg), self.coeff)

    def text(self) -> str:
        if self.log_arg is None:
            return str(self.coeff)
        if self.coeff == 1:
            return f"log({self.log_arg})"
        return f"{self.coeff}*log({self.log_arg})"

    def __eq__(self, other):
        if not isinstance(other, Scale):
            return NotImplemented
        return self.coeff == other.coeff and self.log_arg == other.log_arg

    def __hash__(self):
        return hash((self.coeff, self.log_arg))

    def __repr__(self):
        return f"Scale({self.text()})"


_SCALE_RE = re.compile(r"^(?:(-?\d+(?:/\d+)?)\*)?log\((\d+(?:/\d+)?)\)$")


def scale_from_text(text: str) -> Scale:
    text = text.strip().replace(" ", "")
    m = _SCALE_RE.match(text)
    if m:
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        return Scale(coeff, Fraction(m.group(2)))
    try:
        return Scale(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ExprSyntaxError(f"bad scale {text!r}", 0) from None


def _check_place(field, place):
    if isinstance(place, PrimePlace):
        ok = isinstance(field, Rationals)
    elif isinstance(place, PrimeIdealPlace):
        ok = place.nf == field
    elif isinstance(place, (FinitePlace, InfinitePlace)):
        ok = place.field == field
    else:
        raise UnsupportedShape(f"not a place: {place!r}")
    if not ok:
        raise FieldMismatch("place does not live on the given field")


class Trivial:
    """Sends every nonzero element to 1."""

    __slots__ = ("field",)

    def __init__(self, field):
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, Trivial):
            return NotImplemented
        return self.field == other.field

    def __hash__(self):
        return hash(("trivial", self.field))

    def __repr__(self):
        return f"Trivial({self.field.text()})"


class Arch:
    """|emb(.)|^eps for an embedding into the reals or complexes, 0 < eps <= 1."""

    __slots__ = ("field", "emb", "eps")

    def __init__(self, field, emb, eps):
        if not isinstance(field, (Rationals, NumberField)):
            raise UnsupportedShape("archimedean values need an embeddable field")
        if emb.field != field:
            raise FieldMismatch("embedding belongs to a different field")
        eps = Fraction(eps)
        if not 0 < eps <= 1:
            raise UnsupportedShape("exponent must lie in (0, 1]")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "emb", emb)
        object.__setattr__(self, "eps", eps)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, Arch):
            return NotImplemented
        return self.field == other.field and self.emb == other.emb and self.eps == other.eps

    def __hash__(self):
        return hash(("arch", self.emb, self.eps))

    def __repr__(self):
        return f"Arch({self.field.text()}, emb={self.emb.index}, eps={self.eps})"


class UltraPlace:
    """e^(-c*ord) at a place: a genuine rank-one absolute value."""

    __slots__ = ("field", "place", "scale")

    def __init__(self, field, place, scale=1):
        _check_place(field, place)
        if not isinstance(scale, Scale):
            scale = Scale(scale)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "place", place)
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, UltraPlace):
            return NotImplemented
        return (self.field == other.field and self.place == other.place
                and self.scale == other.scale)

    def __hash__(self):
        return hash(("ultra", self.place, self.scale))

    def __repr__(self):
        return f"UltraPlace({place_text(self.place)}, c={self.scale.text()})"


class UltraDegenerate:
    """Residually trivial at a place: 0 / 1 / infinity by the sign of ord."""

    __slots__ = ("field", "place")

    def __init__(self, field, place):
        _check_place(field, place)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "place", place)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, UltraDegenerate):
            return NotImplemented
        return self.field == other.field and self.place == other.place

    def __hash__(self):
        return hash(("ultradeg", self.place))

    def __repr__(self):
        return f"UltraDegenerate({place_text(self.place)})"


class Gauss:
    """Disc weight min_i(v(d_i) + i*slope) over Taylor coefficients at a center.

    The base value must be ultrametric on the constant field; the result
    lives on the rational function field over it.
    """

    __slots__ = ("field", "base", "center", "gamma")

    def __init__(self, base, center, gamma):
        if not isinstance(base, (Trivial, UltraPlace, UltraDegenerate)):
            raise NotUltrametric("base must be trivial or place-based on constants")
        if not isinstance(base.field, (Rationals, NumberField)):
            raise UnsupportedShape("coefficients must form a constant field")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "field", FunctionField(base.field))
        object.__setattr__(self, "center", base.field.coerce(center))
        object.__setattr__(self, "gamma", Fraction(gamma))

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, Gauss):
            return NotImplemented
        return (self.base == other.base and self.center == other.center
                and self.gamma == other.gamma)

    def __hash__(self):
        return hash(("gauss", self.base, self.gamma))

    def __repr__(self):
        return f"Gauss({self.base!r}, a={element_text(self.center)}, slope={self.gamma})"


class Composite:
    """Order-first filter at a function-field place, then a residue value.

    0 when the order is positive, infinity when negative, and otherwise
    the residue value applied to the reduction of the unit part.
    """

    __slots__ = ("field", "place", "residue")

    def __init__(self, place, residue):
        if not isinstance(place, (FinitePlace, InfinitePlace)):
            raise UnsupportedShape("composition starts from a function-field place")
        rf = place.residue_field()
        if residue.field != rf:
            raise FieldMismatch(
                f"residue value lives on {residue.field.text()}, "
                f"place residue field is {rf.text()}")
        object.__setattr__(self, "field", place.field)
        object.__setattr__(self, "place", place)
        object.__setattr__(self, "residue", residue)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __eq__(self, other):
        if not isinstance(other, Composite):
            return NotImplemented
        return self.place == other.place and self.residue == other.residue

    def __hash__(self):
        return hash(("composite", self.place, self.residue))

    def __repr__(self):
        return f"Composite({place_text(self.place)}, {self.residue!r})"


def is_ultrametric(v) -> bool:
    if isinstance(v, Arch):
        return False
    if isinstance(v, Composite):
        return is_ultrametric(v.residue)
    return True


# --------------------------------------------------------------- evaluation


def _gval_cmp(a, b, log_arg):
    """Exact three-way comparison of q + s*log(log_arg) pairs."""
    dq = a[0] - b[0]
    ds = a[1] - b[1]
    if ds == 0:
        return (dq > 0) - (dq < 0)
    if dq == 0:
        return (ds > 0) - (ds < 0)
    d = ds.denominator
    c = xr_cmp(XReal.exp_of(d * dq), XReal.rational(log_arg ** (-d * ds)))
    if c is Cmp.LESS:
        return -1
    if c is Cmp.GREATER:
        return 1
    return 0


def _gval_min(coeffs, place, s, gamma, log_arg):
    best = None
    for i, d in enumerate(coeffs):
        if d == 0:
            continue
        cand = (i * gamma, s * place.ord(d))
        if best is None or _gval_cmp(cand, best, log_arg) < 0:
            best = cand
    return best


def _lex_min(coeffs, place, gamma):
    # min of (ord, i*gamma) pairs, ordered lexicographically: the
    # dominant part is the base order, the slope only breaks ties
    best = None
    for i, d in enumerate(coeffs):
        if d == 0:
            continue
        cand = (place.ord(d), i * gamma)
        if best is None or cand < best:
            best = cand
    return best


def _gauss_lex_key(v, x):
    num = p_taylor_at(x.num, v.center)
    den = p_taylor_at(x.den, v.center)
    mn, gn = _lex_min(num, v.base.place, v.gamma)
    md, gd = _lex_min(den, v.base.place, v.gamma)
    return (mn - md, gn - gd)


def _gauss_eval(v, x) -> XReal:
    base = v.base
    if isinstance(base, UltraDegenerate):
        key = _gauss_lex_key(v, x)
        if key > (0, 0):
            return XReal.zero()
        if key < (0, 0):
            return XReal.infinity()
        return XReal.rational(1)
    num = p_taylor_at(x.num, v.center)
    den = p_taylor_at(x.den, v.center)
    if isinstance(base, Trivial):
        wn = min(i * v.gamma for i, d in enumerate(num) if d != 0)
        wd = min(i * v.gamma for i, d in enumerate(den) if d != 0)
        return XReal.exp_of(wd - wn)
    scale = base.scale
    if scale.is_rational:
        c = scale.coeff
        wn = min(c * base.place.ord(d) + i * v.gamma for i, d in enumerate(num) if d != 0)
        wd = min(c * base.place.ord(d) + i * v.gamma for i, d in enumerate(den) if d != 0)
        return XReal.exp_of(wd - wn)
    r = scale.log_arg
    wn = _gval_min(num, base.place, scale.coeff, v.gamma, r)
    wd = _gval_min(den, base.place, scale.coeff, v.gamma, r)
    dq, ds = wn[0] - wd[0], wn[1] - wd[1]
    return xr_mul(XReal.exp_of(-dq), xr_pow(XReal.rational(r), -ds))


def _arch_eval(v, x, bits) -> XReal:
    if isinstance(v.field, Rationals):
        return xr_pow(XReal.rational(abs(x)), v.eps)
    if v.emb.kind == "complex":
        sq = abs_sq_exact(x, v.emb)
        return xr_pow(XReal.rational(sq), v.eps / 2)
    return xr_pow(abs_value_at(x, v.emb, bits), v.eps)


def pav_eval(v, f, bits=None) -> XReal:
    """The value of f under v, as an XReal."""
    x = v.field.coerce(f)
    if x == 0:
        return XReal.zero()
    if isinstance(v, Trivial):
        return XReal.rational(1)
    if isinstance(v, Arch):
        return _arch_eval(v, x, bits)
    if isinstance(v, UltraPlace):
        return v.scale.weight(v.place.ord(x))
    if isinstance(v, UltraDegenerate):
        k = v.place.ord(x)
        if k > 0:
            return XReal.zero()
        if k < 0:
            return XReal.infinity()
        return XReal.rational(1)
    if isinstance(v, Gauss):
        return _gauss_eval(v, x)
    if isinstance(v, Composite):
        k = v.place.ord(x)
        if k > 0:
            return XReal.zero()
        if k < 0:
            return XReal.infinity()
        return pav_eval(v.residue, v.place.residue(x), bits)
    raise UnsupportedShape(f"not a pseudo-absolute value: {v!r}")


def in_finiteness_ring(v, f) -> bool:
    """Whether |f| < infinity, decided structurally from order data."""
    x = v.field.coerce(f)
    if x == 0:
        return True
    if isinstance(v, (Trivial, Arch, UltraPlace)):
        return True
    if isinstance(v, UltraDegenerate):
        return v.place.ord(x) >= 0
    if isinstance(v, Gauss):
        if isinstance(v.base, UltraDegenerate):
            return _gauss_lex_key(v, x) >= (0, 0)
        return True
    if isinstance(v, Composite):
        k = v.place.ord(x)
        if k != 0:
            return k > 0
        return in_finiteness_ring(v.residue, v.place.residue(x))
    raise UnsupportedShape(f"not a pseudo-absolute value: {v!r}")


def in_kernel(v, f) -> bool:
    """Whether |f| = 0, decided structurally from order data."""
    x = v.field.coerce(f)
    if x == 0:
        return True
    if isinstance(v, (Trivial, Arch, UltraPlace)):
        return False
    if isinstance(v, UltraDegenerate):
        return v.place.ord(x) > 0
    if isinstance(v, Gauss):
        if isinstance(v.base, UltraDegenerate):
            return _gauss_lex_key(v, x) > (0, 0)
        return False
    if isinstance(v, Composite):
        k = v.place.ord(x)
        if k != 0:
            return k > 0
        return in_kernel(v.residue, v.place.residue(x))
    raise UnsupportedShape(f"not a pseudo-absolute value: {v!r}")


# --------------------------------------------------------------------- rank


@dataclass(frozen=True)
class RankInfo:
    rank: int
    rat_rank: int

    def __post_init__(self):
        if self.rank > self.rat_rank:
            raise UnsupportedShape("rank exceeds rational rank")


def pav_rank(v) -> RankInfo:
    if isinstance(v, (Trivial, Arch)):
        return RankInfo(0, 0)
    if isinstance(v, (UltraPlace, UltraDegenerate)):
        return RankInfo(1, 1)
    if isinstance(v, Gauss):
        base = v.base
        if isinstance(base, Trivial):
            return RankInfo(0, 0) if v.gamma == 0 else RankInfo(1, 1)
        if isinstance(base, UltraPlace):
            # the slope enlarges the rational rank only when the value
            # group of the base does not already span it over Q
            extra = 0 if (base.scale.is_rational or v.gamma == 0) else 1
            return RankInfo(1, 1 + extra)
        step = 0 if v.gamma == 0 else 1
        return RankInfo(1 + step, 1 + step)
    if isinstance(v, Composite):
        r = pav_rank(v.residue)
        return RankInfo(1 + r.rank, 1 + r.rat_rank)
    raise UnsupportedShape(f"not a pseudo-absolute value: {v!r}")


# -------------------------------------------------------------- composition


def extend_by_generalisation(place, residue):
    """Compose a degree-one place with a value on the constant field.

    The result restricts to `residue` on constants; that is re-checked
    on a sample set before returning.
    """
    if not isinstance(place, (FinitePlace, InfinitePlace)):
        raise UnsupportedShape("composition starts from a function-field place")
    ff = place.field
    if place.residue_field() != ff.base:
        raise FieldMismatch("needs a degree-one place so constants survive unchanged")
    v = Composite(place, residue)
    for t in sample_elements(ff.base, 12, nonzero=True):
        c = xr_cmp(pav_eval(v, ff.coerce(t)), pav_eval(residue, t))
        if c not in (Cmp.EQUAL, Cmp.INDETERMINATE):
            raise AssertionError("constant restriction disagreement")
    return v


def lift_element(x, field):
    """Map x into `field` along the canonical inclusion, if one exists."""
    if isinstance(x, FFElt) and isinstance(field, FunctionField) and x.field != field:
        num = tuple(field.base.coerce(c) for c in x.num)
        den = tuple(field.base.coerce(c) for c in x.den)
        return field.element(num, den)
    return field.coerce(x)


def restricts_to(sub, ext, samples) -> bool:
    """Whether ext agrees with sub on lifted samples from sub's field."""
    for x in samples:
        lifted = lift_element(x, ext.field)
        if xr_cmp(pav_eval(ext, lifted), pav_eval(sub, x)) not in (
                Cmp.EQUAL, Cmp.INDETERMINATE):
            return False
    return True


# ------------------------------------------------------------ axiom harness


def sample_elements(field, count, *, nonzero=False, seed=0):
    """Deterministic small field elements for property checks."""
    rng = random.Random(f"{seed}:{field.text()}")
    out = []
    while len(out) < count:
        x = _random_element(field, rng)
        if nonzero and x == 0:
            continue
        out.append(x)
    return out


def sample_pairs(field, count, seed=0):
    xs = sample_elements(field, 2 * count, seed=seed)
    return list(zip(xs[:count], xs[count:]))


def _random_element(field, rng):
    if isinstance(field, Rationals):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if isinstance(field, NumberField):
        d = len(field.minpoly) - 1
        return field.element(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                                   for _ in range(d)))
    if isinstance(field, FunctionField):
        num = tuple(_random_element(field.base, rng) for _ in range(rng.randint(1, 3)))
        den = tuple(_random_element(field.base, rng) for _ in range(rng.randint(1, 3)))
        if not any(c != 0 for c in den):
            den = (field.base.one(),)
        return field.element(num, den)
    raise UnsupportedShape(f"cannot sample from {field!r}")


@dataclass
class AxiomReport:
    samples: int
    violations: list
    warnings: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations


def check_pav_axioms(v, pairs) -> AxiomReport:
    """Check unit/zero normalization, subadditivity, multiplicativity,
    and the infinity-inverse law over the given element pairs.

    Indeterminate comparisons (overlapping approximation intervals)
    count as warnings, never as violations.
    """
    violations = []
    warnings = 0

    val_one = pav_eval(v, v.field.one())
    if val_one != XReal.rational(1):
        violations.append(("unit", ("1",), (repr(val_one),)))
    val_zero = pav_eval(v, v.field.zero())
    if not val_zero.is_zero:
        violations.append(("zero", ("0",), (repr(val_zero),)))

    ultra = is_ultrametric(v)
    for f, g in pairs:
        f = v.field.coerce(f)
        g = v.field.coerce(g)
        vf = pav_eval(v, f)
        vg = pav_eval(v, g)
        vs = pav_eval(v, f + g)
        wit = (element_text(f), element_text(g))

        c = xr_cmp(vs, xr_add(vf, vg))
        if c is Cmp.GREATER:
            violations.append(("triangle", wit, (repr(vs), repr(vf), repr(vg))))
        elif c is Cmp.INDETERMINATE:
            warnings += 1

        if ultra:
            c = xr_cmp(vs, xr_max((vf, vg)))
            if c is Cmp.GREATER:
                violations.append(("strong-triangle", wit, (repr(vs), repr(vf), repr(vg))))
            elif c is Cmp.INDETERMINATE:
                warnings += 1

        clash = (vf.is_zero and vg.is_infinite) or (vf.is_infinite and vg.is_zero)
        if not clash:
            vp = pav_eval(v, f * g)
            c = xr_cmp(vp, xr_mul(vf, vg))
            if c is Cmp.INDETERMINATE:
                warnings += 1
            elif c is not Cmp.EQUAL:
                violations.append(("mult", wit, (repr(vp), repr(vf), repr(vg))))

        for h, vh in ((f, vf), (g, vg)):
            if h != 0 and vh.is_infinite and not pav_eval(v, 1 / h).is_zero:
                violations.append(("infinity-inverse", (element_text(h),), (repr(vh),)))

    return AxiomReport(len(pairs), violations, warnings)


# --------------------------------------------------------------------- JSON


def pav_to_json(v) -> dict:
    if isinstance(v, Trivial):
        return {"kind": "trivial", "field": v.field.text()}
    if isinstance(v, Arch):
        return {"kind": "arch", "field": v.field.text(),
                "emb": v.emb.index, "eps": str(v.eps)}
    if isinstance(v, UltraPlace):
        return {"kind": "ultra", "field": v.field.text(),
                "place": place_text(v.place), "c": v.scale.text()}
    if isinstance(v, UltraDegenerate):
        return {"kind": "ultradeg", "field": v.field.text(),
                "place": place_text(v.place)}
    if isinstance(v, Gauss):
        return {"kind": "gauss", "base": pav_to_json(v.base),
                "center": element_text(v.center), "gamma": str(v.gamma)}
    if isinstance(v, Composite):
        return {"kind": "composite", "field": v.field.text(),
                "place": place_text(v.place), "residue": pav_to_json(v.residue)}
    raise UnsupportedShape(f"not a pseudo-absolute value: {v!r}")


def pav_from_json(data) -> object:
    if not isinstance(data, dict) or "kind" not in data:
        raise ExprSyntaxError("value descriptor must be an object with a 'kind'", 0)
    kind = data["kind"]
    if kind == "trivial":
        return Trivial(parse_field(data["field"]))
    if kind == "arch":
        field = parse_field(data["field"])
        embs = field.embeddings()
        idx = int(data.get("emb", 0))
        if not 0 <= idx < len(embs):
            raise ExprSyntaxError(f"field has {len(embs)} embeddings, got index {idx}", 0)
        return Arch(field, embs[idx], Fraction(str(data.get("eps", 1))))
    if kind in ("ultra", "ultradeg"):
        field = parse_field(data["field"])
        ptext = data.get("place", data.get("p"))
        if ptext is None:
            raise ExprSyntaxError("missing place", 0)
        place = parse_place(str(ptext), field)
        if kind == "ultra":
            return UltraPlace(field, place, scale_from_text(str(data.get("c", 1))))
        return UltraDegenerate(field, place)
    if kind == "gauss":
        base = pav_from_json(data["base"])
        center = parse_element(str(data.get("center", 0)), base.field)
        return Gauss(base, center, Fraction(str(data["gamma"])))
    if kind == "composite":
        field = parse_field(data["field"])
        place = parse_place(str(data["place"]), field)
        return Composite(place, pav_from_json(data["residue"]))
    raise ExprSyntaxError(f"unknown value kind {kind!r}", 0)
