"""Extensions of pseudo-absolute values along finite field extensions.

Supported shapes: number fields over Q (degree at most 8) and constant
extensions of Q(T).  Completions are never built; local degrees come
from exact residue factorization and embedding counts, and the weighted
degree sum over the maximal ideals is an exact rational identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import FieldMismatch, NotGalois, UnsupportedShape
from .fields import (
    FinitePlace,
    FunctionField,
    InfinitePlace,
    NumberField,
    Rationals,
    decompose_prime,
    element_text,
    embed_interval,
)
from .pav import (
    Arch,
    Trivial,
    UltraDegenerate,
    UltraPlace,
    pav_eval,
    restricts_to,
    sample_elements,
)
from .xreal import Cmp, XReal, xr_cmp, xr_max, xr_pow

__all__ = [
    "ExtensionEntry",
    "ExtensionProblem",
    "ExtensionSet",
    "FieldAutomorphism",
    "LimsupReport",
    "OrbitCertificate",
    "PowerSumSequence",
    "automorphisms_of",
    "extensions_over",
    "factor_over_constants",
    "galois_act",
    "limsup_max_estimate",
    "local_degree_sum",
    "newton_power_sums",
    "orbit_is_transitive",
]

DEGREE_SUM_CAP = 8


def _constant_field(field):
    return field.base if isinstance(field, FunctionField) else field


@dataclass(frozen=True)
class ExtensionProblem:
    base_pav: object
    ext: object
    galois: bool = False

    def __post_init__(self):
        K = self.base_pav.field
        L = self.ext
        if isinstance(K, Rationals) and isinstance(L, NumberField):
            pass
        elif (isinstance(K, FunctionField) and isinstance(K.base, Rationals)
              and isinstance(L, FunctionField) and isinstance(L.base, NumberField)):
            pass
        else:
            raise UnsupportedShape(
                "supported: a number field over Q, or a constant extension of Q(T)")
        if self.degree > DEGREE_SUM_CAP:
            raise UnsupportedShape(f"extension degree above the cap of {DEGREE_SUM_CAP}")

    @property
    def degree(self) -> int:
        return len(_constant_field(self.ext).minpoly) - 1


@dataclass(frozen=True)
class ExtensionEntry:
    pav: object
    w_index: int
    i_index: int
    local_degree: int
    residue_degree: int


@dataclass(frozen=True)
class ExtensionSet:
    problem: ExtensionProblem
    entries: tuple

    @property
    def pavs(self):
        return [e.pav for e in self.entries]

    @property
    def ideal_count(self) -> int:
        return 1 + max(e.w_index for e in self.entries)


_FX = sympy.Symbol("_pavforge_x")
_FR = sympy.Symbol("_pavforge_r")


def factor_over_constants(poly, nf: NumberField):
    """Monic irreducible factors of a rational polynomial over a number field.

    Returns tuples of NFElt coefficients, low to high, in a deterministic
    order.  The input must be squarefree (true of any polynomial that is
    irreducible over Q, since everything here has characteristic zero).
    """
    mp = sum(sympy.Rational(c) * _FR ** k for k, c in enumerate(nf.minpoly))
    root = sympy.AlgebraicNumber(sympy.CRootOf(mp, 0), alias=nf.gen_name)
    target = sum(sympy.Rational(c) * _FX ** k for k, c in enumerate(poly))
    _, raw = sympy.Poly(target, _FX, extension=root).factor_list()
    out = []
    for f, mult in raw:
        if mult != 1:
            raise UnsupportedShape("repeated factor in a squarefree polynomial")
        coeffs = []
        for anp in f.rep.to_list()[::-1]:
            qs = tuple(Fraction(int(q.numerator), int(q.denominator))
                       for q in anp.to_list()[::-1])
            coeffs.append(nf.element(qs))
        lead = coeffs[-1]
        if lead != 1:
            inv = 1 / lead
            coeffs = [c * inv for c in coeffs]
        out.append(tuple(coeffs))
    out.sort(key=lambda g: (len(g), [element_text(c) for c in g]))
    return out


def _finite_place_factors(place, L):
    """Places of L above a finite place of Q(T), with residue degrees."""
    E = L.base
    n = len(E.minpoly) - 1
    m = place.poly
    deg_m = len(m) - 1
    factors = factor_over_constants(m, E)
    out = []
    for g in factors:
        f_num = (len(g) - 1) * n
        if f_num % deg_m:
            raise AssertionError("residue degree is not integral")
        out.append((FinitePlace(L, g), f_num // deg_m))
    return out


def extensions_over(prob: ExtensionProblem) -> ExtensionSet:
    v = prob.base_pav
    L = prob.ext
    n = prob.degree
    if isinstance(v, Trivial):
        entries = [ExtensionEntry(Trivial(L), 0, 0, n, n)]
    elif isinstance(v, Arch):
        entries = [
            ExtensionEntry(Arch(L, emb, v.eps), 0, j,
                           1 if emb.kind == "real" else 2, n)
            for j, emb in enumerate(L.embeddings())
        ]
    elif isinstance(v, UltraDegenerate):
        entries = _degenerate_entries(v, L, n)
    elif isinstance(v, UltraPlace):
        entries = _place_entries(v, L, n)
    else:
        raise UnsupportedShape(
            "only trivial, archimedean, and place-based values extend here")
    result = ExtensionSet(prob, tuple(entries))
    samples = sample_elements(v.field, 8, nonzero=True, seed=17)
    for e in result.entries:
        if not restricts_to(v, e.pav, samples):
            raise AssertionError("extension does not restrict to the base value")
    return result


def _degenerate_entries(v, L, n):
    place = v.place
    if isinstance(v.field, Rationals):
        places = decompose_prime(L, place.p)
        return [ExtensionEntry(UltraDegenerate(L, pl), j, 0, pl.f, pl.f)
                for j, pl in enumerate(places)]
    if isinstance(place, InfinitePlace):
        return [ExtensionEntry(UltraDegenerate(L, InfinitePlace(L)), 0, 0, n, n)]
    above = _finite_place_factors(place, L)
    return [ExtensionEntry(UltraDegenerate(L, pl), j, 0, f, f)
            for j, (pl, f) in enumerate(above)]


def _place_entries(v, L, n):
    place = v.place
    if isinstance(v.field, Rationals):
        places = decompose_prime(L, place.p)
        return [
            ExtensionEntry(UltraPlace(L, pl, v.scale.mul(Fraction(1, pl.e))),
                           0, j, pl.e * pl.f, n)
            for j, pl in enumerate(places)
        ]
    if isinstance(place, InfinitePlace):
        return [ExtensionEntry(UltraPlace(L, InfinitePlace(L), v.scale), 0, 0, n, n)]
    above = _finite_place_factors(place, L)
    return [ExtensionEntry(UltraPlace(L, pl, v.scale), 0, j, f, n)
            for j, (pl, f) in enumerate(above)]


def local_degree_sum(prob: ExtensionProblem) -> Fraction:
    """Sum over maximal ideals, weighted 1/#ideals, of local over residue
    degree ratios.  Exactly 1 for every supported problem."""
    ext = extensions_over(prob)
    nspm = ext.ideal_count
    total = Fraction(0)
    for e in ext.entries:
        total += Fraction(1, nspm) * Fraction(e.local_degree, e.residue_degree)
    return total


# ------------------------------------------------------------ Galois action


@dataclass(frozen=True)
class FieldAutomorphism:
    field: object
    gen_image: object

    def apply(self, x):
        if isinstance(self.field, FunctionField):
            x = self.field.coerce(x)
            nf = self.field.base
            num = tuple(self._apply_const(nf.coerce(c)) for c in x.num)
            den = tuple(self._apply_const(nf.coerce(c)) for c in x.den)
            return self.field.element(num, den)
        return self._apply_const(self.field.coerce(x))

    def _apply_const(self, c):
        nf = _constant_field(self.field)
        acc = nf.zero()
        for q in reversed(c.coeffs):
            acc = acc * self.gen_image + q
        return acc

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """self after other: x maps to self(other(x))."""
        return FieldAutomorphism(self.field, self.apply(other.gen_image))

    @property
    def is_identity(self) -> bool:
        return self.gen_image == _constant_field(self.field).gen()

    def text(self) -> str:
        nf = _constant_field(self.field)
        return f"{nf.gen_name}->{element_text(self.gen_image)}"


def automorphisms_of(field):
    """All automorphisms fixing Q (and T, on function fields)."""
    nf = _constant_field(field)
    if isinstance(nf, Rationals):
        raise UnsupportedShape("automorphism enumeration needs a proper extension")
    roots = []
    for g in factor_over_constants(nf.minpoly, nf):
        if len(g) == 2:
            roots.append(-g[0])
    autos = [FieldAutomorphism(field, r) for r in roots]
    autos.sort(key=lambda s: (not s.is_identity, element_text(s.gen_image)))
    if not autos or not autos[0].is_identity:
        raise AssertionError("generator is not a root of its own minimal polynomial")
    return tuple(autos)


def _image_place(sigma: FieldAutomorphism, place):
    """The place whose order function is ord(sigma(.)) at the given place."""
    if isinstance(place, InfinitePlace):
        return place
    if isinstance(place, FinitePlace):
        inverse = _inverse_of(sigma)
        moved = tuple(inverse._apply_const(place.field.base.coerce(c))
                      for c in place.poly)
        return FinitePlace(place.field, moved)
    # prime ideal: match by order signatures against the candidates
    nf = place.nf
    candidates = decompose_prime(nf, place.p)
    tests = [pl.uniformizer() for pl in candidates]
    tests += [nf.gen(), nf.gen() + 1, nf.gen() - 2]
    matches = [pl for pl in candidates
               if all(pl.ord(t) == place.ord(sigma.apply(t)) for t in tests)]
    if len(matches) != 1:
        raise AssertionError("order signature did not single out one place")
    return matches[0]


def _inverse_of(sigma: FieldAutomorphism) -> FieldAutomorphism:
    gen = _constant_field(sigma.field).gen()
    for tau in automorphisms_of(sigma.field):
        if sigma.apply(tau.gen_image) == gen:
            return tau
    raise AssertionError("automorphism has no inverse in the enumerated group")


def _match_embedding(sigma: FieldAutomorphism, emb):
    field = sigma.field
    embs = field.embeddings()
    if emb.kind == "complex":
        if sum(1 for e in embs if e.kind == "complex") == 1:
            # the conjugate pair is one entry, and conjugation preserves it
            return emb
        raise UnsupportedShape("cannot order several complex embedding pairs")
    target = sigma.apply(field.gen())
    reals = [e for e in embs if e.kind == "real"]
    bits = 32
    while bits <= 4096:
        lo, hi, _, _ = embed_interval(target, emb, bits)
        live = []
        for e in reals:
            glo, ghi, _, _ = embed_interval(field.gen(), e, bits)
            if not (ghi < lo or hi < glo):
                live.append(e)
        if len(live) == 1:
            return live[0]
        bits *= 2
    raise AssertionError("embedding images did not separate")


def galois_act(sigma: FieldAutomorphism, w):
    """Precompose w with the automorphism: the value f -> w(sigma(f))."""
    if sigma.field != w.field:
        raise FieldMismatch("automorphism and value live on different fields")
    if isinstance(w, Trivial):
        return w
    if isinstance(w, Arch):
        return Arch(w.field, _match_embedding(sigma, w.emb), w.eps)
    if isinstance(w, UltraPlace):
        return UltraPlace(w.field, _image_place(sigma, w.place), w.scale)
    if isinstance(w, UltraDegenerate):
        return UltraDegenerate(w.field, _image_place(sigma, w.place))
    raise UnsupportedShape(
        "the action is supported on trivial, archimedean, and place-based values")


@dataclass(frozen=True)
class OrbitCertificate:
    transitive: bool
    assignments: tuple
    orbit_size: int
    extension_count: int


def _pavs_agree(u, w, samples) -> bool:
    for x in samples:
        if xr_cmp(pav_eval(u, x), pav_eval(w, x)) not in (Cmp.EQUAL, Cmp.INDETERMINATE):
            return False
    return True


def orbit_is_transitive(prob: ExtensionProblem) -> OrbitCertificate:
    ext = extensions_over(prob)
    autos = automorphisms_of(prob.ext)
    if len(autos) != prob.degree:
        raise NotGalois(
            f"{len(autos)} automorphisms for an extension of degree {prob.degree}")
    w0 = ext.entries[0].pav
    samples = sample_elements(w0.field, 20, nonzero=True, seed=23)
    assignments = []
    hit = set()
    for sigma in autos:
        img = galois_act(sigma, w0)
        idx = next((j for j, e in enumerate(ext.entries) if e.pav == img), None)
        if idx is None:
            idx = next((j for j, e in enumerate(ext.entries)
                        if _pavs_agree(img, e.pav, samples)), None)
        if idx is None:
            raise AssertionError("orbit left the extension set")
        if not _pavs_agree(img, ext.entries[idx].pav, samples):
            raise AssertionError("matched extension disagrees on samples")
        hit.add(idx)
        assignments.append((sigma.text(), idx))
    return OrbitCertificate(
        transitive=len(hit) == len(ext.entries),
        assignments=tuple(assignments),
        orbit_size=len(hit),
        extension_count=len(ext.entries),
    )


# ------------------------------------------------------- power-sum sequences


def _elementary(minpoly):
    # monic X^d + a_{d-1} X^{d-1} + ... + a_0; e_k = (-1)^k a_{d-k}
    d = len(minpoly) - 1
    return [(-1) ** k * minpoly[d - k] for k in range(d + 1)]


@dataclass(frozen=True)
class PowerSumSequence:
    minpoly: tuple
    lambdas: tuple

    def value(self, n):
        return self.lambdas[n - 1]

    def verify_recurrence(self) -> bool:
        d = len(self.minpoly) - 1
        e = _elementary(self.minpoly)
        for n in range(d + 1, len(self.lambdas) + 1):
            acc = sum(((-1) ** (n - 1 + k)) * e[n - k] * self.lambdas[k - 1]
                      for k in range(n - d, n))
            if acc != self.lambdas[n - 1]:
                return False
        return True


def newton_power_sums(minpoly, count: int) -> PowerSumSequence:
    """Exact power sums of the roots, from the coefficients alone."""
    mp = tuple(Fraction(c) if isinstance(c, int) else c for c in minpoly)
    d = len(mp) - 1
    if d < 1 or mp[-1] != 1:
        raise UnsupportedShape("need a monic polynomial of positive degree")
    if count < d:
        raise UnsupportedShape("need at least as many terms as the degree")
    e = _elementary(mp)
    lam = []
    for n in range(1, count + 1):
        if n <= d:
            acc = ((-1) ** (n - 1)) * n * e[n]
            for k in range(1, n):
                acc += ((-1) ** (n - 1 + k)) * e[n - k] * lam[k - 1]
        else:
            acc = sum(((-1) ** (n - 1 + k)) * e[n - k] * lam[k - 1]
                      for k in range(n - d, n))
        lam.append(acc)
    return PowerSumSequence(mp, tuple(lam))


@dataclass
class LimsupReport:
    estimate: XReal
    exact: XReal | None
    gap: float | None
    window: tuple
    terms_used: int


def _exact_extension_max(minpoly, v):
    mp = tuple(minpoly)
    d = len(mp) - 1
    if d == 1:
        return pav_eval(v, -mp[0])
    if not isinstance(v.field, Rationals):
        return None
    try:
        L = NumberField(mp)
        ext = extensions_over(ExtensionProblem(v, L))
    except UnsupportedShape:
        return None
    return xr_max(pav_eval(e.pav, L.gen()) for e in ext.entries)


def limsup_max_estimate(minpoly, base_pav, n_max: int) -> LimsupReport:
    """Sup of |power sum|^(1/n) over the tail window [n_max/2, n_max],
    with the exact extension-side maximum when it is computable."""
    if n_max < 10:
        raise UnsupportedShape("window is too short to mean anything")
    seq = newton_power_sums(minpoly, n_max)
    lo = max(1, n_max // 2)
    vals = []
    for n in range(lo, n_max + 1):
        lam = seq.lambdas[n - 1]
        if lam == 0:
            continue
        vals.append(xr_pow(pav_eval(base_pav, lam), Fraction(1, n)))
    if not vals:
        raise UnsupportedShape("every term in the window vanished")
    est = xr_max(vals)
    exact = _exact_extension_max(minpoly, base_pav)
    gap = None
    if exact is not None:
        gap = 0.0 if xr_cmp(est, exact) is Cmp.EQUAL else abs(
            est.to_float() - exact.to_float())
    return LimsupReport(est, exact, gap, (lo, n_max), len(vals))
