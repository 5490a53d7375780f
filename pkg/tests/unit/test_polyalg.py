"""Unit tests for chambercross.polyalg module."""

from fractions import Fraction

import pytest  # type: ignore

from chambercross.errors import NonRationalValueError, RankMismatchError
from chambercross.polyalg import (
    LinearForm,
    MultiPoly,
    QuasiPoly,
    diff_apply,
    difference_apply,
    grlex_key,
    pair,
    poly_eval,
    qp_eval,
    qp_from_cosets,
    qp_to_cosets,
)

A1 = MultiPoly.variable(2, 0)
A2 = MultiPoly.variable(2, 1)
HALF = Fraction(1, 2)


class TestPair:
    """Test the standard pairing."""

    def test_pair(self):
        """Test pairing of integer and rational vectors."""
        assert pair((1, 2), (3, -1)) == 1
        assert pair((HALF, 1), (1, 1)) == Fraction(3, 2)

    def test_pair_rank_mismatch(self):
        """Test that vectors of different lengths are rejected."""
        with pytest.raises(RankMismatchError):
            pair((1, 2), (1, 2, 3))

    def test_grlex_key(self):
        """Test that higher degrees sort first."""
        exponents = [(0, 1), (2, 0), (1, 1), (0, 0)]
        assert sorted(exponents, key=grlex_key) == [(2, 0), (1, 1), (0, 1), (0, 0)]


class TestLinearForm:
    """Test LinearForm helpers."""

    def test_unit_and_pair(self):
        """Test unit forms pair to coordinates."""
        form = LinearForm.unit(3, 1)
        assert form.pair((4, 5, 6)) == 5
        assert (-form).coeffs == (0, -1, 0)
        assert form.is_integral()
        assert not LinearForm.of([HALF, 0]).is_integral()
        assert LinearForm.of([0, 0]).is_zero()


class TestMultiPoly:
    """Test sparse polynomial arithmetic."""

    def test_zero_terms_are_dropped(self):
        """Test that zero coefficients do not survive construction."""
        poly = MultiPoly(2, {(1, 0): 0, (0, 1): 3})
        assert poly.terms == {(0, 1): Fraction(3)}
        assert not MultiPoly.zero(2)
        assert MultiPoly.zero(2).degree() == -1

    def test_arithmetic(self):
        """Test (a1 + a2)^2 expansion."""
        square = (A1 + A2) ** 2
        assert square == A1 * A1 + 2 * A1 * A2 + A2 * A2
        assert square - A1 * A1 - A2 * A2 == 2 * A1 * A2
        assert square.degree() == 2
        assert square.is_homogeneous()
        assert not (square + 1).is_homogeneous()

    def test_scalar_equality(self):
        """Test comparison against scalars."""
        assert MultiPoly.constant(2, 3) == 3
        assert MultiPoly.zero(2) == 0

    def test_rank_mismatch(self):
        """Test that polynomials of different rank do not combine."""
        with pytest.raises(RankMismatchError):
            A1 + MultiPoly.variable(3, 0)

    def test_evaluate(self):
        """Test exact evaluation."""
        poly = (A1 + A2) ** 2 * Fraction(1, 4) - A2 * A2 * HALF
        assert poly.evaluate((2, 1)) == Fraction(9, 4) - HALF
        assert poly.evaluate((HALF, 0)) == Fraction(1, 16)

    def test_partial_and_derivative(self):
        """Test partial and directional derivatives."""
        poly = A1**3 * A2
        assert poly.partial(0) == 3 * A1**2 * A2
        assert poly.partial(0, 2) == 6 * A1 * A2
        assert poly.partial(1, 2) == 0
        assert poly.derivative((1, 1)) == 3 * A1**2 * A2 + A1**3

    def test_substitute_and_shift(self):
        """Test pullback along a linear map and translation."""
        poly = A1 * A2
        swapped = poly.substitute([[0, 1], [1, 0]])
        assert swapped == poly
        assert (A1 * A1).shift((1, 0)) == A1 * A1 + 2 * A1 + 1
        line = MultiPoly.variable(1, 0)
        assert (line * line).substitute([[1, 1]], columns=2) == (A1 + A2) ** 2

    def test_substitute_rank_zero(self):
        """Test that a constant of rank zero lifts to any rank."""
        one = MultiPoly.constant(0, 1)
        assert one.substitute([], columns=3) == MultiPoly.constant(3, 1)

    def test_difference(self):
        """Test D(gamma) p = p - p(. - gamma)."""
        poly = A1 * A1
        assert poly.difference((1, 0)) == 2 * A1 - 1
        assert difference_apply((0, 1), poly) == 0

    def test_diff_apply(self):
        """Test constant coefficient differential operators."""
        operator = MultiPoly(2, {(1, 0): 1, (0, 0): 2})
        assert diff_apply(operator, A1**2 * A2) == 2 * A1 * A2 + 2 * A1**2 * A2

    def test_str(self):
        """Test graded lex rendering."""
        poly = Fraction(1, 4) * A1**2 + HALF * A1 * A2 - A2 + Fraction(7, 8)
        assert str(poly) == "1/4*a1^2 + 1/2*a1*a2 - a2 + 7/8"


class TestQuasiPoly:
    """Test quasi-polynomials."""

    def parity(self):
        return QuasiPoly.character((HALF, HALF))

    def test_character_evaluation(self):
        """Test (-1)^(a1 + a2)."""
        parity = self.parity()
        assert parity.evaluate((1, 0)) == -1
        assert parity.evaluate((1, 1)) == 1
        assert parity.period == 2
        assert not parity.is_polynomial()

    def test_shifts_reduce_mod_one(self):
        """Test that shifts are taken modulo 1."""
        assert QuasiPoly.character((Fraction(3, 2), 1)) == QuasiPoly.character((HALF, 0))

    def test_product_of_characters(self):
        """Test that characters multiply by adding shifts."""
        parity = self.parity()
        assert parity * parity == QuasiPoly.constant(2, 1)

    def test_evaluate_rejects_non_integral(self):
        """Test evaluation at a non-integral point."""
        with pytest.raises(ValueError):
            self.parity().evaluate((HALF, 0))

    def test_non_rational_value(self):
        """Test that a complex value raises NonRationalValueError."""
        quarter = QuasiPoly.character((Fraction(1, 4),))
        with pytest.raises(NonRationalValueError):
            quarter.evaluate((1,))
        assert quarter.evaluate((2,)) == -1

    def test_shift_and_difference(self):
        """Test translation and difference of a character times a polynomial."""
        parity = QuasiPoly.character((HALF,), MultiPoly.variable(1, 0))
        shifted = parity.shift((1,))
        assert shifted.evaluate((2,)) == -3
        assert parity.difference((1,)).evaluate((2,)) == 2 - (-1)

    def test_difference_needs_integral_vector(self):
        """Test that rational differences are rejected."""
        with pytest.raises(ValueError):
            self.parity().difference((HALF, 0))

    def test_top_part(self):
        """Test homogeneous top part per shift."""
        q = QuasiPoly.from_poly(A1**2 + A2) + QuasiPoly.character((HALF, HALF), MultiPoly.constant(2, 3))
        assert q.top_part(2) == QuasiPoly.from_poly(A1**2)
        assert q.degree() == 2

    def test_cosets_round_trip(self):
        """Test conversion to and from coset tables."""
        q = QuasiPoly.from_poly(A1 + Fraction(7, 8)) + QuasiPoly.character((HALF, HALF), MultiPoly.constant(2, Fraction(1, 8)))
        table = qp_to_cosets(q)
        assert [h for h, _ in table] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert dict(table)[(0, 0)] == A1 + 1
        assert dict(table)[(0, 1)] == A1 + Fraction(3, 4)
        assert qp_from_cosets(2, 2, table) == q

    def test_diff_apply_per_shift(self):
        """Test that operators act on every shift."""
        q = QuasiPoly.character((HALF, 0), A1**2)
        assert q.diff_apply(MultiPoly.variable(2, 0)) == QuasiPoly.character((HALF, 0), 2 * A1)

    def test_substitute(self):
        """Test pullback of shifts and polynomials."""
        q = QuasiPoly.character((HALF,), MultiPoly.variable(1, 0))
        pulled = q.substitute([[1, 1]])
        assert pulled == QuasiPoly.character((HALF, HALF), A1 + A2)


class TestEvaluation:
    """Test the module level evaluation helpers."""

    def test_poly_eval(self):
        """Test substitution of rational points."""
        assert poly_eval(HALF * A1**2, (3, 1)) == Fraction(9, 2)
        assert poly_eval(Fraction(1, 4) * (A1 + A2) ** 2, (1, 1)) == 1
        assert poly_eval(Fraction(1, 4) * (A1 + A2) ** 2 - HALF * A2**2, (1, 1)) == HALF
        with pytest.raises(RankMismatchError):
            poly_eval(A1, (1,))

    def test_qp_eval(self):
        """Test evaluation of quasi-polynomials at lattice points."""
        assert qp_eval(QuasiPoly.from_poly(1 + A1), (2, 1)) == 3
        parity = QuasiPoly.constant(2, Fraction(7, 8)) + QuasiPoly.character(
            (HALF, HALF), MultiPoly.constant(2, Fraction(1, 8))
        )
        assert qp_eval(parity, (1, 1)) == 1
        assert qp_eval(parity, (2, 1)) == Fraction(3, 4)
