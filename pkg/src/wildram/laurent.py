"""Sparse bivariate Laurent polynomials over F_{p^k}.

A polynomial is a finite map from integer exponent pairs (m, n) to nonzero
field elements, m the exponent of the first coordinate t1 and n of the
second coordinate t2.  Supports are tiny but exponents may be large and
negative, so the representation is a dict, kept canonical (no stored
zeros).  Values are immutable; every operation returns a new polynomial.

Pole staircases read the support in (a, b) = (-m, n) coordinates: a is the
pole order along {t1 = 0} and b the t2-exponent.  The staircase of f is
the set of minimal support points under the componentwise order on (m, n),
sorted by a.

Truncation.  Moving the origin to a point t2 = a with a != 0 expands each
negative t2-power into a power series, which must be cut off.  Instead of
a single global cutoff the polynomial carries a set of *unknown corners*:
lattice points u such that every coefficient on u + (Z>=0)^2 is possibly
incomplete (stored values there are partial sums).  Arithmetic propagates
the corners conservatively, and any consumer that would have to trust a
coefficient inside the unknown region raises PrecisionLossError instead of
silently truncating.  Exact polynomials have an empty corner set, and
operations on exact data never lose exactness except for the translation
of a negative power.
"""

from __future__ import annotations

import math

from .fields import ContextMismatchError, embed, join_context
from .staircase import Staircase


class PrecisionLossError(ArithmeticError):
    """A computation needed coefficient data beyond the truncation order."""

    def __init__(self, position, message=None):
        self.position = position
        super().__init__(message or f"coefficient at {position} is beyond "
                                    "the valid truncation order")


CHART_FIRST = "A"   # (t1, t2) = (u, u*v):   exponents (m, n) -> (m + n, n)
CHART_SECOND = "B"  # (t1, t2) = (u*v, v):   exponents (m, n) -> (m, m + n)


def _dominates(lo, hi):
    return lo[0] <= hi[0] and lo[1] <= hi[1]


def _min_antichain(points):
    """Minimal elements of a finite set under the componentwise order."""
    pts = set(points)
    return frozenset(q for q in pts
                     if not any(r != q and _dominates(r, q) for r in pts))


class LaurentPolynomial:
    """Canonical sparse Laurent polynomial with truncation bookkeeping."""

    __slots__ = ("ctx", "terms", "unknown")

    def __init__(self, ctx, terms=None, unknown=frozenset()):
        self.ctx = ctx
        clean = {}
        for (m, n), c in (terms or {}).items():
            if c.ctx != ctx:
                raise ContextMismatchError("coefficient from a foreign context")
            if c:
                clean[(int(m), int(n))] = c
        self.terms = clean
        self.unknown = _min_antichain(unknown)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def constant(cls, coeff):
        return cls(coeff.ctx, {(0, 0): coeff})

    @classmethod
    def monomial(cls, coeff, m, n):
        return cls(coeff.ctx, {(m, n): coeff})

    # -- basic structure ----------------------------------------------------

    @property
    def is_exact(self):
        return not self.unknown

    @property
    def valid_order(self):
        """Smallest t2-order at which a coefficient may be unknown."""
        return min((n for _, n in self.unknown), default=None)

    def support(self):
        return set(self.terms)

    def in_unknown_region(self, m, n):
        return any(_dominates(u, (m, n)) for u in self.unknown)

    def exact_terms(self):
        """Stored terms whose coefficients are certified exact."""
        return {e: c for e, c in self.terms.items()
                if not self.in_unknown_region(*e)}

    def coefficient(self, m, n):
        if self.in_unknown_region(m, n):
            raise PrecisionLossError((m, n))
        return self.terms.get((m, n), self.ctx.zero())

    def has_no_stored_terms(self):
        """True when every stored coefficient cancelled.  For exact
        polynomials this is equality with zero; for truncated ones it says
        the identity holds on all computed data."""
        return not self.terms

    def __bool__(self):
        return bool(self.terms) or bool(self.unknown)

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.ctx == other.ctx
                and self.terms == other.terms
                and self.unknown == other.unknown)

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items()), self.unknown))

    def __repr__(self):
        from .parsing import format_polynomial
        body = format_polynomial(self)
        if self.unknown:
            body += f" [unknown beyond {sorted(self.unknown)}]"
        return f"<{body} over {self.ctx}>"

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentPolynomial):
            raise TypeError(f"expected LaurentPolynomial, got {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ContextMismatchError("polynomials from different contexts; "
                                       "embed explicitly first")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return LaurentPolynomial(self.ctx, terms, self.unknown | other.unknown)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPolynomial(self.ctx, {e: -c for e, c in self.terms.items()},
                                 self.unknown)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for (m1, n1), c1 in self.terms.items():
            for (m2, n2), c2 in other.terms.items():
                e = (m1 + m2, n1 + n2)
                prod = c1 * c2
                s = terms.get(e)
                terms[e] = prod if s is None else s + prod
        unknown = set()
        if self.unknown or other.unknown:
            mine = _min_antichain(self.support()) | self.unknown
            theirs = _min_antichain(other.support()) | other.unknown
            for u in self.unknown:
                for v in theirs:
                    unknown.add((u[0] + v[0], u[1] + v[1]))
            for u in other.unknown:
                for v in mine:
                    unknown.add((u[0] + v[0], u[1] + v[1]))
        return LaurentPolynomial(self.ctx, terms, unknown)

    def scale(self, coeff):
        if not coeff:
            return LaurentPolynomial(self.ctx, {}, self.unknown)
        return LaurentPolynomial(self.ctx,
                                 {e: c * coeff for e, c in self.terms.items()},
                                 self.unknown)

    def frobenius_power(self):
        """The p-th power: coefficients through Frobenius, exponents scaled
        by p (the characteristic collapses all cross terms)."""
        p = self.ctx.p
        return LaurentPolynomial(
            self.ctx,
            {(p * m, p * n): c ** p for (m, n), c in self.terms.items()},
            {(p * u[0], p * u[1]) for u in self.unknown})

    def embed_into(self, target):
        if target == self.ctx:
            return self
        return LaurentPolynomial(
            target,
            {e: embed(c, target) for e, c in self.terms.items()},
            self.unknown)


# ---------------------------------------------------------------------------
# staircase extraction and valuations
# ---------------------------------------------------------------------------

def undominated_unknowns(poly):
    """Unknown corners not dominated by any certified support corner.
    These are the positions where a truncated tail could still hide a
    staircase corner."""
    corners = _min_antichain(poly.exact_terms())
    return [u for u in poly.unknown
            if not any(_dominates(c, u) for c in corners)]


def pole_staircase(poly):
    """Minimal support corners in (a, b) = (-m, n) coordinates, sorted by a.

    Only coefficients outside the unknown region can witness a corner, and
    every unknown corner must be dominated by a certified one; otherwise a
    truncated tail could hide a corner and the call raises.
    """
    exact = poly.exact_terms()
    corners = _min_antichain(exact)
    for u in poly.unknown:
        if not any(_dominates(c, u) for c in corners):
            raise PrecisionLossError(u, "a truncated region may hide a corner")
    return Staircase(sorted(((-m, n) for m, n in corners)))


def valuation(poly, axis):
    """Minimum exponent along the axis ("t1" or "t2"); +inf for zero."""
    idx = _axis_index(axis)
    exact = poly.exact_terms()
    if not exact:
        if poly.unknown or poly.terms:
            raise PrecisionLossError(min(poly.unknown | set(poly.terms)),
                                     "no certified term to take the valuation from")
        return math.inf
    v = min(e[idx] for e in exact)
    bad = [u for u in poly.unknown if u[idx] < v]
    if bad:
        raise PrecisionLossError(bad[0], "a truncated region may lower the valuation")
    return v


def _axis_index(axis):
    if axis == "t1":
        return 0
    if axis == "t2":
        return 1
    raise ValueError(f"axis must be 't1' or 't2', got {axis!r}")


def transpose(poly):
    """Swap the two coordinates."""
    return LaurentPolynomial(poly.ctx,
                             {(n, m): c for (m, n), c in poly.terms.items()},
                             {(n, m) for m, n in poly.unknown})


# ---------------------------------------------------------------------------
# blow-up chart substitution
# ---------------------------------------------------------------------------

def blowup_substitute(poly, chart):
    """Exponent change of one blow-up chart, exact in all cases.

    Chart "A" is (t1, t2) = (u, u*v), so (m, n) -> (m + n, n); the
    exceptional curve is {u = 0} and the strict transform of {t2 = 0} is
    {v = 0}.  Chart "B" is (t1, t2) = (u*v, v), so (m, n) -> (m, m + n);
    the exceptional curve is {v = 0} and the strict transform of {t1 = 0}
    is {u = 0}.  Both maps are unimodular, but coefficients landing on the
    same exponent are summed anyway.
    """
    if chart == CHART_FIRST:
        remap = lambda m, n: (m + n, n)
    elif chart == CHART_SECOND:
        remap = lambda m, n: (m, m + n)
    else:
        raise ValueError(f"chart must be 'A' or 'B', got {chart!r}")
    terms = {}
    for (m, n), c in poly.terms.items():
        e = remap(m, n)
        s = terms.get(e)
        terms[e] = c if s is None else s + c
    return LaurentPolynomial(poly.ctx, terms,
                             {remap(*u) for u in poly.unknown})


# ---------------------------------------------------------------------------
# origin translation in the second coordinate
# ---------------------------------------------------------------------------

def translate(poly, shift, budget):
    """Substitute t2 -> t2 + shift for a nonzero field element shift.

    Nonnegative powers expand exactly through binomial coefficients mod p.
    A negative power (t2 + shift)^n expands as

        shift^n * sum_j C(-n-1+j, j) * (-1)^j * shift^(-j) * t2^j,

    cut after `budget` terms; the cut is recorded as an unknown corner at
    (m, budget) for the term's t1-exponent m.  Coefficients are embedded
    into the shift's context if needed (degrees must divide).
    """
    if not shift:
        raise ValueError("translation by zero; the origin needs no shift")
    if budget < 1:
        raise ValueError("series budget must be >= 1")
    ctx = join_context(poly.ctx, shift.ctx)
    poly = poly.embed_into(ctx)
    shift = embed(shift, ctx)
    p = ctx.p
    terms = {}
    unknown = {(m, 0) for m, _ in poly.unknown}

    def put(m, n, c):
        if not c:
            return
        s = terms.get((m, n))
        total = c if s is None else s + c
        if total:
            terms[(m, n)] = total
        elif s is not None:
            del terms[(m, n)]

    for (m, n), c in poly.terms.items():
        if n >= 0:
            for j in range(n + 1):
                binom = math.comb(n, j) % p
                if binom:
                    put(m, j, c * binom * shift ** (n - j))
        else:
            unknown.add((m, budget))
            inv = shift.inverse()
            lead = c * shift ** n
            for j in range(budget):
                binom = math.comb(-n - 1 + j, j) % p
                if binom:
                    coeff = lead * binom * inv ** j
                    put(m, j, -coeff if j % 2 else coeff)
    return LaurentPolynomial(ctx, terms, unknown)
