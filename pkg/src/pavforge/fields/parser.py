"""Text forms: parsing field descriptors, elements, and places.

Element grammar (a leading unary minus is accepted as a convenience):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'? base ('^' '-'? integer)?
    base   := integer | name | '(' expr ')'

Field descriptors: "Q", "Q(i)", "Q(a:a^2-2)", "Q(T)", "Q(a:a^2-2)(T)".
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, ExprSyntaxError
from . import polys
from .descriptors import (
    FFElt,
    FunctionField,
    NFElt,
    NumberField,
    QQ,
    Rationals,
    _poly_text,
)
from .places import FinitePlace, InfinitePlace, PrimeIdealPlace, PrimePlace, decompose_prime


# ------------------------------------------------------------------------
# tokenizer


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("int", src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        if c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, field):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.field = field

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind}, found {tok[1] or 'end'!r}", tok[2])
        self.i += 1
        return tok

    def parse_expr(self):
        out = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.parse_term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def parse_term(self):
        out = self.parse_factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.parse_factor()
            if op == "*":
                out = out * rhs
            else:
                try:
                    out = out / rhs
                except ZeroDivisionError:
                    raise DivisionByZero(f"division by zero (at position {pos})")
        return out

    def parse_factor(self):
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        out = self.parse_base()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            esign = 1
            if self.peek()[0] == "-":
                self.take()
                esign = -1
            etok = self.take("int")
            e = esign * int(etok[1])
            try:
                out = out ** e
            except ZeroDivisionError:
                raise DivisionByZero(f"zero raised to a negative power (at position {pos})")
        return -out if neg else out

    def parse_base(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return self.field.coerce(int(text))
        if kind == "name":
            self.take()
            return self._resolve_name(text, pos)
        if kind == "(":
            self.take()
            out = self.parse_expr()
            self.take(")")
            return out
        raise ExprSyntaxError(f"expected a value, found {text or 'end'!r}", pos)

    def _resolve_name(self, name, pos):
        f = self.field
        if isinstance(f, FunctionField):
            if name == f.var_name:
                return f.gen()
            if isinstance(f.base, NumberField) and name == f.base.gen_name:
                return f.coerce(f.base.gen())
        elif isinstance(f, NumberField) and name == f.gen_name:
            return f.gen()
        raise ExprSyntaxError(f"unknown name {name!r}", pos)


def parse_element(src: str, field):
    p = _Parser(src, field)
    out = p.parse_expr()
    kind, text, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"trailing input {text!r}", pos)
    return field.coerce(out)


# ------------------------------------------------------------------------
# field descriptors


def parse_field(src: str):
    s = src.strip()
    if not s.startswith("Q"):
        raise ExprSyntaxError("field descriptors start with 'Q'", 0)
    rest = s[1:]
    field = QQ
    while rest:
        if not rest.startswith("("):
            raise ExprSyntaxError("expected '('", len(s) - len(rest))
        depth = 0
        for j, c in enumerate(rest):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth == 0:
                    break
        else:
            raise ExprSyntaxError("unbalanced parentheses", len(s) - 1)
        group = rest[1:j]
        rest = rest[j + 1:]
        if group == "T":
            field = FunctionField(field, "T")
        elif group == "i" and isinstance(field, Rationals):
            field = NumberField((1, 0, 1), gen_name="i")
        elif ":" in group:
            if not isinstance(field, Rationals):
                raise ExprSyntaxError("number fields are defined over Q", 0)
            gen_name, _, body = group.partition(":")
            gen_name = gen_name.strip()
            if not gen_name.isidentifier():
                raise ExprSyntaxError(f"bad generator name {gen_name!r}", 0)
            coeffs = _poly_coeffs_from_text(body, gen_name)
            field = NumberField(coeffs, gen_name=gen_name)
        else:
            raise ExprSyntaxError(f"cannot read field group {group!r}", 0)
    return field


def _poly_coeffs_from_text(body: str, var: str):
    """Coefficients of a univariate polynomial over Q given as text."""
    ff = FunctionField(QQ, var)
    elt = parse_element(body, ff)
    if polys.p_deg(elt.den) != 0:
        raise ExprSyntaxError("expected a polynomial, found a denominator", 0)
    scale = elt.den[0]
    return tuple(c / scale for c in elt.num)


def field_text(field) -> str:
    return field.text()


# ------------------------------------------------------------------------
# element rendering


def element_text(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, NFElt):
        r = x.as_rational()
        if r is not None:
            return str(r)
        return _poly_text(x.coeffs, x.field.gen_name)
    if isinstance(x, FFElt):
        if x.is_zero():
            return "0"
        num = _poly_text(x.num, x.field.var_name)
        if polys.p_deg(x.den) == 0:
            return num
        den = _poly_text(x.den, x.field.var_name)
        return f"({num})/({den})"
    raise TypeError(f"cannot render {x!r}")


# ------------------------------------------------------------------------
# places


def parse_place(src: str, field):
    s = src.strip()
    if isinstance(field, FunctionField):
        if s == "inf":
            return InfinitePlace(field)
        elt = parse_element(s, field)
        if polys.p_deg(elt.den) != 0:
            raise ExprSyntaxError("a finite place needs a polynomial", 0)
        num = tuple(c / elt.num[-1] for c in elt.num)
        return FinitePlace(field, num)
    if isinstance(field, Rationals):
        return PrimePlace(int(s))
    if isinstance(field, NumberField):
        if s.startswith("(") and s.endswith(")"):
            inner = s[1:-1]
            p_txt, _, g_txt = inner.partition(",")
            p = int(p_txt)
            target = _gbar_from_text(g_txt, field, p)
            for place in decompose_prime(field, p):
                if place.gbar == target:
                    return place
            raise ExprSyntaxError(f"no prime matches {s!r}", 0)
        # a bare rational prime: must be inert/unique to be unambiguous
        p = int(s)
        places = decompose_prime(field, p)
        if len(places) != 1:
            raise ExprSyntaxError(
                f"{p} splits; name the prime as (p,g) among "
                + ", ".join(pl.text() for pl in places),
                0,
            )
        return places[0]
    raise ExprSyntaxError("cannot parse a place for this field", 0)


def _gbar_from_text(g_txt: str, field: NumberField, p: int):
    ff = FunctionField(QQ, field.gen_name)
    elt = parse_element(g_txt, ff)
    if polys.p_deg(elt.den) != 0 or elt.den[0] != 1:
        raise ExprSyntaxError("prime generator must be a monic integer polynomial", 0)
    return tuple(int(c) % p for c in elt.num)


def place_text(place) -> str:
    return place.text()
