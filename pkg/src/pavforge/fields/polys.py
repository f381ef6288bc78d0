"""Dense polynomial helpers over any field-like coefficient type.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  Coefficients can
be Fraction or any element type supporting +, -, *, /, == (including
against int 0 and 1), so the same helpers serve rational, number-field and
residue arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


def p_trim(cs):
    cs = tuple(cs)
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return cs[:n]


def p_deg(cs) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(cs) - 1


def p_is_zero(cs) -> bool:
    return len(cs) == 0


def p_const(c):
    return p_trim((c,))


def p_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return p_trim(out)


def p_neg(a):
    return tuple(-c for c in a)


def p_sub(a, b):
    return p_add(a, p_neg(b))


def p_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return p_trim(out)


def p_scale(a, c):
    if c == 0:
        return ()
    return p_trim(tuple(x * c for x in a))


def p_pow(a, n: int):
    if n == 0:
        if not a:
            raise ZeroDivisionError("0**0 for polynomials")
        return (_one_like(a, a),)
    acc = None
    base = a
    while n:
        if n & 1:
            acc = base if acc is None else p_mul(acc, base)
        n >>= 1
        if n:
            base = p_mul(base, base)
    return acc


def p_eval(a, x):
    if not a:
        return x - x if not isinstance(x, (int, Fraction)) else Fraction(0)
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def p_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and p_trim(r):
        r = list(p_trim(r))
        if len(r) < len(b):
            break
        c = r[-1] / lead
        k = len(r) - len(b)
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] = r[k + i] - c * cb
        r = r[: len(r) - 1]
    return p_trim(q), p_trim(r)


def p_mod(a, b):
    return p_divmod(a, b)[1]


def p_monic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def p_gcd(a, b):
    while b:
        a, b = b, p_mod(a, b)
    return p_monic(a)


def p_xgcd(a, b):
    """(g, u, w) with u*a + w*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = p_const(_one_like(a, b)), ()
    t0, t1 = (), p_const(_one_like(a, b))
    while r1:
        q, r = p_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1))
        t0, t1 = t1, p_sub(t0, p_mul(q, t1))
    if not r0:
        return (), s0, t0
    lead = r0[-1]
    g = tuple(c / lead for c in r0)
    u = tuple(c / lead for c in s0)
    w = tuple(c / lead for c in t0)
    return g, u, w


def _one_like(a, b):
    for cs in (a, b):
        for c in cs:
            if c != 0:
                return c / c
    return Fraction(1)


def p_derivative(a):
    return p_trim(tuple(a[i] * i for i in range(1, len(a))))


def p_shift(a, c):
    """Coefficients of a(X + c): the expansion of a around -c.

    Used to re-express a polynomial in powers of (X - z) via p_shift(a, z).
    """
    # repeated division by (X - c): the remainders are the coefficients of
    # a(X) = sum d_i (X - c)^i, i.e. of b(Y) = a(Y + c)
    out = []
    cur = a
    divisor = p_trim((-c, _one_like(a, a)))
    while cur:
        cur, rem = p_divmod(cur, divisor)
        out.append(rem[0] if rem else 0 * a[0])
    return p_trim(out)


def p_taylor_at(a, z):
    """Coefficients d with a(X) = sum d_i (X - z)**i."""
    return p_shift(a, z)


def p_resultant(a, b):
    """Resultant via the Euclidean remainder sequence (field coefficients)."""
    if not a or not b:
        return Fraction(0) if isinstance(_one_like(a, b), Fraction) else 0 * _one_like(a, b)
    if p_deg(a) == 0:
        return a[0] ** p_deg(b) if p_deg(b) >= 0 else a[0]
    if p_deg(b) == 0:
        return b[0] ** p_deg(a)
    sign = 1
    acc = _one_like(a, b)
    while True:
        da, db = p_deg(a), p_deg(b)
        r = p_mod(a, b)
        if not r:
            return acc * 0
        dr = p_deg(r)
        acc = acc * b[-1] ** (da - dr)
        if (da * db) % 2 == 1:
            acc = -acc
        a, b = b, r
        if p_deg(b) == 0:
            return acc * b[-1] ** p_deg(a)


def p_multiplicity(a, d):
    """Largest k with d**k dividing a (a nonzero)."""
    if not a:
        raise ValueError("multiplicity in the zero polynomial")
    k = 0
    while True:
        q, r = p_divmod(a, d)
        if r:
            return k
        a = q
        k += 1
        if not a:
            return k
