"""Text forms: field specs and Laurent polynomial expressions.

Grammar for polynomial expressions (whitespace insensitive):

    expr   :=  [sign] term ( sign term )*
    term   :=  factor ( "*" factor )*
    factor :=  INT  |  "g" [ "^" sint ]  |  "t1" [ "^" sint ]  |  "t2" [ "^" sint ]
    sint   :=  [ "+" | "-" ] INT

Integer coefficients reduce mod p; "g" is the polynomial-basis generator
of the extension and is rejected over a prime field.  Exponents of t1 and
t2 within one term add up, so factor order is free.  Like terms combine
in the field.  Exponent magnitudes above 10**6 are refused.

Field specs are "p" or "p^k", e.g. "3", "2^1", "3^2".
"""

from __future__ import annotations

import re

from .fields import field
from .laurent import LaurentPolynomial

EXPONENT_CAP = 10 ** 6

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>t1|t2|g)|(?P<op>[-+*^]))")


class ParseError(ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


def parse_field(spec):
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", spec)
    if not m:
        raise ParseError(f"field spec {spec!r} is not of the form p or p^k", 0)
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    return field(p, k)


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", where)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse_polynomial(text, ctx):
    """Parse an expression into a LaurentPolynomial over the context."""
    tokens = _tokens(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    poly = LaurentPolynomial.zero(ctx)
    i = 0
    sign = 1
    if tokens[0][0] == "op" and tokens[0][1] in "+-":
        sign = -1 if tokens[0][1] == "-" else 1
        i = 1
    while True:
        coeff, m, n, i = _parse_term(tokens, i, ctx)
        if sign == -1:
            coeff = -coeff
        poly = poly + LaurentPolynomial.monomial(coeff, m, n)
        if i >= len(tokens):
            return poly
        kind, value, pos = tokens[i]
        if kind != "op" or value not in "+-":
            raise ParseError(f"expected + or - between terms, got {value!r}", pos)
        sign = -1 if value == "-" else 1
        i += 1


def _parse_term(tokens, i, ctx):
    coeff = ctx.one()
    m = 0
    n = 0
    saw_factor = False
    while True:
        if i >= len(tokens):
            if not saw_factor:
                raise ParseError("expected a factor at the end of input",
                                 tokens[-1][2] if tokens else 0)
            return coeff, m, n, i
        kind, value, pos = tokens[i]
        if kind == "int":
            coeff = coeff * ctx.element(int(value))
            i += 1
        elif kind == "name":
            base_pos = pos
            i += 1
            exponent = 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                exponent, i = _parse_sint(tokens, i + 1)
            if value == "g":
                if ctx.degree == 1:
                    raise ParseError("generator g is not available over a "
                                     "prime field", base_pos)
                coeff = coeff * ctx.gen() ** exponent
            elif value == "t1":
                m += exponent
            else:
                n += exponent
        else:
            if not saw_factor:
                raise ParseError(f"expected a factor, got {value!r}", pos)
            return coeff, m, n, i
        saw_factor = True
        if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
            i += 1
            if i >= len(tokens):
                raise ParseError("dangling *", tokens[i - 1][2])
        elif i < len(tokens) and tokens[i][0] != "op":
            raise ParseError("factors must be joined by *", tokens[i][2])
        else:
            if not saw_factor:
                raise ParseError("expected a factor", tokens[i][2] if i < len(tokens) else 0)
            return coeff, m, n, i


def _parse_sint(tokens, i):
    sign = 1
    if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
        sign = -1 if tokens[i][1] == "-" else 1
        i += 1
    if i >= len(tokens) or tokens[i][0] != "int":
        pos = tokens[i][2] if i < len(tokens) else (tokens[-1][2] if tokens else 0)
        raise ParseError("expected an integer exponent", pos)
    value = int(tokens[i][1])
    if value > EXPONENT_CAP:
        raise ParseError(f"exponent {value} exceeds the cap {EXPONENT_CAP}",
                         tokens[i][2])
    return sign * value, i + 1


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def format_polynomial(poly):
    """Round-trippable text form.  Extension coefficients are split into
    their basis components, one printed term per component."""
    pieces = []
    for (m, n) in sorted(poly.terms, key=lambda e: (-e[0], -e[1])):
        c = poly.terms[(m, n)]
        for i in range(poly.ctx.degree - 1, -1, -1):
            if c.coeffs[i] == 0:
                continue
            factors = []
            if c.coeffs[i] != 1:
                factors.append(str(c.coeffs[i]))
            if i == 1:
                factors.append("g")
            elif i > 1:
                factors.append(f"g^{i}")
            if m:
                factors.append("t1" if m == 1 else f"t1^{m}")
            if n:
                factors.append("t2" if n == 1 else f"t2^{n}")
            if not factors:
                factors.append("1")
            pieces.append("*".join(factors))
    return " + ".join(pieces) if pieces else "0"


def polynomial_as_triples(poly):
    """Sorted (m, n, coefficient-vector) triples for JSON reports."""
    return [[m, n, list(poly.terms[(m, n)].coeffs)]
            for (m, n) in sorted(poly.terms)]
