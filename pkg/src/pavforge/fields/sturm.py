"""Real root isolation by Sturm sequences, over exact rationals.

No floating root-finding anywhere: isolation and refinement work entirely
with Fraction endpoints, so every interval is a certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .polys import (
    p_derivative,
    p_divmod,
    p_eval,
    p_gcd,
    p_mod,
    p_neg,
    p_trim,
)


def squarefree_part(p):
    g = p_gcd(p, p_derivative(p))
    if len(g) <= 1:
        return p
    q, r = p_divmod(p, g)
    assert not r
    return q


def sturm_chain(p):
    p = squarefree_part(p)
    chain = [p, p_derivative(p)]
    while chain[-1]:
        nxt = p_neg(p_mod(chain[-2], chain[-1]))
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _variations(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = p_eval(q, x)
        if v > 0:
            signs.append(1)
        elif v < 0:
            signs.append(-1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_between(chain, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]."""
    return _variations(chain, a) - _variations(chain, b)


def root_bound(p) -> Fraction:
    """B with every real root strictly inside (-B, B) (Cauchy bound)."""
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=Fraction(0))
    return 1 + m / lead


def isolate_real_roots(p):
    """Disjoint rational intervals, one simple root of p each, in order.

    Returned intervals are either [r, r] for an exact rational root or open
    (lo, hi) with non-root endpoints and exactly one root inside.
    """
    p = squarefree_part(p)
    if len(p) <= 1:
        return []
    chain = sturm_chain(p)
    bound = root_bound(p)
    out = []

    def descend(lo, hi, n):
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if p_eval(p, mid) == 0:
            # exact rational root at the midpoint: peel it off and keep a
            # root-free margin around it for the recursive halves
            w = (hi - lo) / 4
            while (
                count_roots_between(chain, mid - w, mid + w) > 1
                or p_eval(p, mid - w) == 0
                or p_eval(p, mid + w) == 0
            ):
                w /= 2
            left = count_roots_between(chain, lo, mid - w)
            right = count_roots_between(chain, mid + w, hi)
            descend(lo, mid - w, left)
            out.append((mid, mid))
            descend(mid + w, hi, right)
            return
        left = count_roots_between(chain, lo, mid)
        descend(lo, mid, left)
        descend(mid, hi, n - left)

    total = count_roots_between(chain, -bound, bound)
    descend(-bound, bound, total)
    return sorted(out, key=lambda iv: iv[0])


def refine_root(p, lo: Fraction, hi: Fraction, max_width: Fraction):
    """Shrink an isolating interval of a simple root to the given width."""
    p = squarefree_part(p)
    if lo == hi:
        return lo, hi
    flo = p_eval(p, lo)
    if flo == 0:
        return lo, lo
    fhi = p_eval(p, hi)
    if fhi == 0:
        return hi, hi
    assert (flo > 0) != (fhi > 0), "interval does not bracket a sign change"
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        fm = p_eval(p, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo, hi


def interval_eval(g, lo: Fraction, hi: Fraction):
    """Enclosure of g([lo, hi]) by interval Horner with exact endpoints."""
    g = p_trim(g)
    if not g:
        return Fraction(0), Fraction(0)
    vlo = vhi = Fraction(g[-1])
    for c in reversed(g[:-1]):
        prods = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(prods) + c, max(prods) + c
    return vlo, vhi
