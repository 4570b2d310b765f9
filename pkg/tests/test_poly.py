from fractions import Fraction

import pytest
from hypothesis import given, settings

from sosreduce import (
    Polynomial,
    PolynomialSyntaxError,
    degree,
    format_polynomial,
    multiply,
    parse_polynomial,
    sum_of_squares,
)

from conftest import QUARTIC
from strategies import polynomial_pairs, polynomials


def P(text, n=None):
    return parse_polynomial(text, n)


class TestParse:
    def test_quartic_support(self):
        p = P(QUARTIC)
        assert p.nvars == 2
        assert set(p.terms) == {(4, 0), (2, 1), (2, 0), (1, 1), (0, 2), (0, 0)}
        assert p.coefficient((2, 1)) == -2
        assert p.coefficient((1, 1)) == -4

    def test_cancellation_gives_zero(self):
        p = P("x1 - x1")
        assert p.is_zero()
        assert p.support == ()

    def test_like_terms_merge(self):
        p = P("1/2*x1^2 + 1/2*x1^2")
        assert dict(p.terms) == {(2,): Fraction(1)}

    def test_decimal_is_exact(self):
        assert P("0.5*x1").coefficient((1,)) == Fraction(1, 2)
        assert P("0.1").coefficient((0,)) == Fraction(1, 10)

    def test_declared_nvars_pads(self):
        p = P("x1^2", 3)
        assert p.nvars == 3
        assert p.support == ((2, 0, 0),)

    def test_constant_defaults_to_one_variable(self):
        assert P("7").nvars == 1
        assert P("0").is_zero()

    def test_repeated_variable_accumulates(self):
        assert P("x1*x1^2").support == ((3,),)

    @pytest.mark.parametrize(
        "text, pos",
        [
            ("", 0),
            ("   ", 0),
            ("x1 +", 4),
            ("3 x1", 2),
            ("x0", 1),
            ("x1^0", 3),
            ("2*", 2),
            ("1/0", 2),
            ("x1 $ x2", 3),
            ("--x1", 1),
        ],
    )
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(PolynomialSyntaxError) as info:
            parse_polynomial(text)
        assert info.value.position == pos

    def test_index_beyond_declared_nvars(self):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("x1 + x3", 2)


class TestFormat:
    def test_zero(self):
        assert format_polynomial(Polynomial(2)) == "0"

    def test_simple(self):
        assert format_polynomial(Polynomial(2, {(2, 0): 1, (0, 0): -1})) == "x1^2 - 1"

    def test_quartic_round_trip(self):
        p = P(QUARTIC)
        assert P(format_polynomial(p)) == p

    def test_leading_negative_and_fractions(self):
        p = Polynomial(2, {(1, 1): Fraction(-3, 2), (0, 0): 1})
        assert format_polynomial(p) == "-3/2*x1*x2 + 1"

    @given(polynomials())
    def test_parse_format_round_trip(self, p):
        text = format_polynomial(p)
        q = parse_polynomial(text, p.nvars)
        assert q == p
        assert format_polynomial(q) == text


class TestRing:
    def test_difference_of_squares(self):
        assert multiply(P("x1 + 1"), P("x1 - 1")) == P("x1^2 - 1")

    def test_times_zero(self):
        assert multiply(P(QUARTIC), Polynomial(2)).is_zero()

    def test_binomial_square(self):
        assert multiply(P("x1 + x2"), P("x1 + x2")) == P("x1^2 + 2*x1*x2 + x2^2")

    def test_nvars_mismatch(self):
        with pytest.raises(ValueError):
            multiply(P("x1"), P("x2"))

    @given(polynomial_pairs(k=3))
    @settings(max_examples=80)
    def test_ring_laws(self, pqr):
        p, q, r = pqr
        assert p * q == q * p
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p - p).is_zero()

    @given(polynomial_pairs(k=2))
    @settings(max_examples=80)
    def test_degree_of_product(self, pq):
        p, q = pq
        if p.is_zero() or q.is_zero():
            return
        assert degree(p * q) == degree(p) + degree(q)

    def test_evaluate(self):
        assert P("x1^2 + x1")(Fraction(-1, 2)) == Fraction(-1, 4)


class TestSumOfSquares:
    def test_two_variables(self):
        assert sum_of_squares([P("x1", 2), P("x2")]) == P("x1^2 + x2^2")

    def test_shifted(self):
        assert sum_of_squares([P("x1 - 1")]) == P("x1^2 - 2*x1 + 1")

    def test_mixed_degrees(self):
        assert sum_of_squares([P("x1^2", 2), P("x2")]) == P("x1^4 + x2^2")

    def test_empty(self):
        with pytest.raises(ValueError):
            sum_of_squares([])

    @given(polynomial_pairs(k=3))
    def test_even_degree(self, fs):
        s = sum_of_squares(fs)
        assert s.degree % 2 == 0


class TestDegree:
    def test_values(self):
        assert degree(P(QUARTIC)) == 4
        assert degree(P("5")) == 0
        assert degree(P("x1^2*x2^4 + x1")) == 6
        assert degree(Polynomial(3)) == 0
