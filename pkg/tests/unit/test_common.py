"""Unit tests for chambercross.common module."""

import json
from fractions import Fraction

import pytest  # type: ignore

from chambercross.chambers import chamber_complex
from chambercross.common import (
    dump_json,
    format_character,
    format_poly,
    format_quasi_shifts,
    format_scalar,
    parse_poly,
    parse_quasi,
    poly_document,
    quasi_document,
    solution_document,
    solution_text,
)
from chambercross.errors import InputFormatError, RankMismatchError
from chambercross.polyalg import MultiPoly, QuasiPoly
from chambercross.presets import preset
from chambercross.wallcross import sweep

HALF = Fraction(1, 2)


def b2_middle() -> QuasiPoly:
    a1, a2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    poly = a1**2 * Fraction(1, 4) + a1 * a2 * HALF - a2**2 * Fraction(1, 4) + a1 + a2 * HALF + Fraction(7, 8)
    return QuasiPoly.from_poly(poly) + QuasiPoly.character((HALF, HALF), MultiPoly.constant(2, Fraction(1, 8)))


class TestFormat:
    """Test text rendering."""

    def test_format_scalar(self):
        """Test rational scalars."""
        assert format_scalar(Fraction(-3, 4)) == "-3/4"
        assert format_scalar(2) == "2"

    def test_format_poly(self):
        """Test graded lex order and signs."""
        a1, a2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
        assert format_poly(MultiPoly.zero(2)) == "0"
        assert format_poly(a1 - a2) == "a1 - a2"
        assert format_poly(-(a1**2) + 3) == "-a1^2 + 3"
        assert format_poly(a1 * a2 * Fraction(2, 3)) == "2/3*a1*a2"

    def test_format_character(self):
        """Test the character of (1/2, 1/2)."""
        assert format_character((HALF, HALF)) == "E(2)^(a1 + a2)"
        assert format_character((Fraction(1, 3), Fraction(0))) == "E(3)^(a1)"

    def test_format_quasi_shifts(self):
        """Test the shift form of a B2 partition function."""
        text = format_quasi_shifts(b2_middle())
        assert text.endswith("(1/8)*E(2)^(a1 + a2)")
        assert text.startswith("(1/4*a1^2 + 1/2*a1*a2 - 1/4*a2^2")
        assert format_quasi_shifts(QuasiPoly.zero(3)) == "0"


class TestParse:
    """Test parsing rendered text."""

    def test_parse_poly(self):
        """Test a rendered polynomial."""
        a1, a2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
        expected = a1**2 * Fraction(1, 4) + a1 * a2 * HALF - a2 + Fraction(7, 8)
        assert parse_poly("1/4*a1^2 + 1/2*a1*a2 - a2 + 7/8", 2) == expected
        assert parse_poly("-(a1 - 2)*a2", 2) == -(a1 - 2) * a2

    def test_parse_rendered_quasi(self):
        """Test that the shift form parses back."""
        quasi = b2_middle()
        assert parse_quasi(format_quasi_shifts(quasi), 2) == quasi

    def test_parse_character(self):
        """Test a character evaluated at integer points."""
        quasi = parse_quasi("E(2)^(a1 + a2)", 2)
        assert quasi.evaluate((1, 0)) == -1
        assert quasi.evaluate((1, 1)) == 1

    @pytest.mark.parametrize(
        "text",
        ["1/a1", "2 $ 3", "E(2)^(a1 + 1)", "E(2)^(a1*a2)", "(a1", "a1 +", "E(2)^(1/2*a1)"],
    )
    def test_parse_errors(self, text):
        """Test rejected text."""
        with pytest.raises(InputFormatError):
            parse_quasi(text, 2)

    def test_variable_out_of_range(self):
        """Test a variable beyond the rank."""
        with pytest.raises(RankMismatchError):
            parse_quasi("a3", 2)

    def test_parse_poly_rejects_characters(self):
        """Test that a quasi-polynomial is not a polynomial."""
        with pytest.raises(InputFormatError):
            parse_poly("E(2)^(a1)", 1)


class TestDocuments:
    """Test output documents."""

    def test_poly_document(self):
        """Test a polynomial document."""
        document = poly_document(MultiPoly.variable(2, 0) * HALF)
        assert document.text == "1/2*a1"
        assert document.degree == 1

    def test_quasi_document_cosets(self):
        """Test the coset form."""
        document = quasi_document(b2_middle())
        assert document.period == 2
        assert document.shifts is None
        assert [c.residue for c in document.cosets] == [[0, 0], [0, 1], [1, 0], [1, 1]]
        assert document.cosets[0].polynomial.endswith(" + 1")

    def test_quasi_document_shifts(self):
        """Test the shift form."""
        document = quasi_document(b2_middle(), shift_form=True)
        assert document.cosets is None
        assert [s.shift for s in document.shifts] == [["0", "0"], ["1/2", "1/2"]]
        assert document.shifts[1].polynomial == "1/8"

    def test_solution_document(self):
        """Test the solve document of B2."""
        solution = sweep(preset("B2"))
        document = solution_document(solution.complex, solution)
        assert document.config.name == "B2"
        assert document.config.period == 2
        assert not document.config.unimodular
        assert len(document.walls) == 4
        assert sum(1 for w in document.walls if w.facet) == 2
        assert len(document.chambers) == 3
        for chamber in document.chambers:
            assert chamber.volume_poly.degree == 2
            assert len(chamber.partition_qp.cosets) == chamber.partition_qp.period**2
        assert sorted(c.partition_qp.period for c in document.chambers) == [1, 2, 2]
        data = json.loads(dump_json(document))
        assert data["config"]["vectors"] == [[1, 0], [0, 1], [1, 1], [1, -1]]

    def test_chambers_document(self):
        """Test the chambers document without functions."""
        document = solution_document(chamber_complex(preset("A2")))
        assert len(document.chambers) == 2
        assert all(c.volume_poly is None and c.partition_qp is None for c in document.chambers)
        assert document.config.unimodular

    def test_solution_text(self):
        """Test the text rendering."""
        solution = sweep(preset("B2"))
        text = solution_text(solution_document(solution.complex, solution))
        assert text.startswith("configuration B2: rank 2, 4 vectors")
        assert "k on (0, 0) mod 2 = " in text
        shifted = solution_text(solution_document(solution.complex, solution, shift_form=True))
        assert "E(2)^(a1 + a2)" in shifted
