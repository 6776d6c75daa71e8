import random

import pytest

from wildram.fields import field
from wildram.laurent import (LaurentPolynomial, PrecisionLossError,
                             blowup_substitute, pole_staircase, translate,
                             transpose, undominated_unknowns, valuation)
from wildram.parsing import parse_polynomial
from wildram.staircase import Staircase


def poly(text, ctx):
    return parse_polynomial(text, ctx)


F2 = field(2)
F3 = field(3)
F5 = field(5)


def test_canonical_form_drops_zeros():
    f = LaurentPolynomial(F5, {(1, 1): F5.zero(), (0, 0): F5.one()})
    assert f.support() == {(0, 0)}


def test_addition_cancels():
    f = poly("t1^-1", F5)
    g = poly("4*t1^-1", F5)
    assert not (f + g)


# ---------------------------------------------------------------------------
# staircase extraction
# ---------------------------------------------------------------------------

def test_corners_two_incomparable():
    f = poly("t1^-3*t2^-1 + t1^-1*t2^-2", F5)
    assert pole_staircase(f) == Staircase([(1, -2), (3, -1)])


def test_corners_absorption():
    f = poly("t1^-3*t2^-1 + t1^-1*t2^2", F5)
    assert pole_staircase(f) == Staircase([(3, -1)])


def test_corners_of_zero():
    assert pole_staircase(LaurentPolynomial.zero(F2)) == Staircase()


def test_corners_against_brute_force():
    rng = random.Random(1)
    for _ in range(300):
        terms = {}
        for _ in range(rng.randint(1, 7)):
            terms[(rng.randint(-5, 5), rng.randint(-5, 5))] = F3.element(
                rng.randrange(1, 3))
        f = LaurentPolynomial(F3, terms)
        stair = pole_staircase(f)
        support = f.support()
        corners = {(-a, b) for a, b in stair}
        # O(n^2) oracle: minimal elements under the componentwise order
        expected = {s for s in support
                    if not any(t != s and t[0] <= s[0] and t[1] <= s[1]
                               for t in support)}
        assert corners == expected
        # the corner set is an antichain and dominates the support
        for s in support:
            assert any(c[0] <= s[0] and c[1] <= s[1] for c in corners)


# ---------------------------------------------------------------------------
# chart substitution
# ---------------------------------------------------------------------------

def test_chart_exponent_maps():
    f = poly("t1^-2*t2", F5)
    assert blowup_substitute(f, "A").support() == {(-1, 1)}
    assert blowup_substitute(f, "B").support() == {(-2, -1)}


def test_chart_fixes_constants():
    f = poly("3", F5)
    assert blowup_substitute(f, "A") == f
    assert blowup_substitute(f, "B") == f


def test_chart_is_ring_homomorphism():
    rng = random.Random(2)
    for _ in range(60):
        def rand():
            terms = {}
            for _ in range(rng.randint(1, 4)):
                terms[(rng.randint(-4, 4), rng.randint(-4, 4))] = F3.element(
                    rng.randrange(1, 3))
            return LaurentPolynomial(F3, terms)
        f, g = rand(), rand()
        for chart in ("A", "B"):
            sub = lambda h: blowup_substitute(h, chart)
            assert sub(f * g) == sub(f) * sub(g)
            assert sub(f + g) == sub(f) + sub(g)


# ---------------------------------------------------------------------------
# translation
# ---------------------------------------------------------------------------

def test_translate_linear_exact():
    f = poly("t2", F2)
    assert translate(f, F2.one(), 4) == poly("t2 + 1", F2)


def test_translate_square_mod3():
    f = poly("t2^2", F3)
    assert translate(f, F3.one(), 4) == poly("t2^2 + 2*t2 + 1", F3)


def test_translate_geometric_series():
    f = poly("t2^-1", F2)
    t = translate(f, F2.one(), 4)
    assert t.terms == poly("1 + t2 + t2^2 + t2^3", F2).terms
    assert t.unknown == frozenset({(0, 4)})
    assert t.valid_order == 4


def test_translate_exact_for_nonnegative_exponents():
    f = poly("t1^-3*t2^2 + t2^5", F5)
    t = translate(f, F5.element(2), 1)
    assert t.is_exact


def test_translate_by_zero_rejected():
    with pytest.raises(ValueError):
        translate(poly("t2", F2), F2.zero(), 4)


def test_translate_round_trip_up_to_valid_order():
    f = poly("t1^-1*t2^-2 + t2^3 + t1^-2", F3)
    a = F3.element(2)
    there = translate(f, a, 12)
    back = translate(there, -a, 12)
    cut = back.valid_order
    for (m, n), c in f.terms.items():
        if 0 <= n < cut:
            assert back.terms.get((m, n)) == c
    for (m, n), c in back.terms.items():
        if n < cut and n >= 0:
            assert f.terms.get((m, n), F3.zero()) == c


def test_translate_embeds_into_shift_field():
    f = poly("t2^2", F2)
    g4 = field(2, 2).gen()
    t = translate(f, g4, 4)
    assert t.ctx == field(2, 2)
    # (t2 + g)^2 = t2^2 + g^2
    assert t.terms[(0, 0)] == g4 * g4


# ---------------------------------------------------------------------------
# precision bookkeeping
# ---------------------------------------------------------------------------

def test_coefficient_read_beyond_order_raises():
    t = translate(poly("t2^-1", F2), F2.one(), 4)
    assert t.coefficient(0, 3) == F2.one()
    with pytest.raises(PrecisionLossError):
        t.coefficient(0, 4)
    with pytest.raises(PrecisionLossError):
        t.coefficient(5, 9)


def test_staircase_raises_when_corner_hidden():
    t = translate(poly("t1^-1*t2^-1", F2), F2.one(), 3)
    # remove the certified part of the column; only the unknown tail is left
    visible = LaurentPolynomial(F2, dict(t.terms))
    blinded = t - visible
    assert undominated_unknowns(blinded)
    with pytest.raises(PrecisionLossError):
        pole_staircase(blinded)


def test_staircase_tolerates_dominated_unknowns():
    t = translate(poly("t1^-1*t2^-1", F2), F2.one(), 3)
    # the certified corner (1, 0) dominates the truncated tail at (-1, 3)
    assert pole_staircase(t) == Staircase([(1, 0)])


def test_valuation_basics():
    f = poly("t1^-3 + t2^-2", F5)
    assert valuation(f, "t1") == -3
    assert valuation(f, "t2") == -2
    assert valuation(LaurentPolynomial.zero(F5), "t1") == float("inf")


def test_valuation_raises_when_truncation_could_lower_it():
    t = translate(poly("t1^-1*t2^-1", F2), F2.one(), 3)
    blinded = t - LaurentPolynomial(F2, dict(t.terms))
    with pytest.raises(PrecisionLossError):
        valuation(blinded, "t2")


def test_transpose_swaps_axes():
    f = poly("t1^-3*t2^2", F5)
    assert transpose(f).support() == {(2, -3)}


def test_chart_diagonal_evaluation_identity():
    # composing the first chart and evaluating at v = 1 agrees with
    # evaluating f on the diagonal t2 = t1
    rng = random.Random(21)
    for _ in range(80):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            terms[(rng.randint(-4, 4), rng.randint(-4, 4))] = F5.element(
                rng.randrange(1, 5))
        f = LaurentPolynomial(F5, terms)
        charted = blowup_substitute(f, "A")
        at_one = {}
        for (m, n), c in charted.terms.items():
            at_one[m] = at_one.get(m, F5.zero()) + c
        diagonal = {}
        for (m, n), c in f.terms.items():
            diagonal[m + n] = diagonal.get(m + n, F5.zero()) + c
        assert ({m: c for m, c in at_one.items() if c}
                == {m: c for m, c in diagonal.items() if c})


def test_multiplication_propagates_unknown_regions():
    t = translate(poly("t2^-1", F2), F2.one(), 3)
    product = t * poly("t1^-2", F2)
    assert not product.is_exact
    with pytest.raises(PrecisionLossError):
        product.coefficient(-2, 3)
    assert product.coefficient(-2, 0) == F2.one()


def test_equal_contexts_are_interchangeable():
    from wildram.fields import FieldContext
    fresh = FieldContext(2, 2)
    interned = field(2, 2)
    assert fresh == interned
    assert fresh.gen() * interned.gen() == interned.gen() * fresh.gen()


def test_translated_inverse_multiplies_back_to_one():
    # oracle for the negative-power series: (t2 + a)^k * series((t2+a)^-k)
    # must be 1 up to the recorded order
    for ctx, enc in ((F3, 2), (F5, 3), (field(2, 2), 2)):
        a = ctx.from_encoding(enc)
        for k in (1, 2, 3):
            series = translate(LaurentPolynomial.monomial(ctx.one(), 0, -k),
                               a, 10)
            exact = translate(LaurentPolynomial.monomial(ctx.one(), 0, k),
                              a, 10)
            product = series * exact
            for (m, n), c in product.exact_terms().items():
                expected = ctx.one() if (m, n) == (0, 0) else ctx.zero()
                assert c == expected, (str(ctx), k, m, n)


def test_axis_validation():
    with pytest.raises(ValueError):
        valuation(poly("t1", F2), "t3")
