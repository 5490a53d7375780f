"""Unit tests for chambercross.oracle module."""

import itertools
import random
from fractions import Fraction

import pytest  # type: ignore

from chambercross.chambers import chamber_complex, validate_config
from chambercross.errors import NotPointedError, WallVectorError
from chambercross.oracle import (
    CountQuery,
    brute_count,
    closure_points,
    compare_point,
    convolve_C,
    kplus,
    pointed_certificate,
    regular_points,
    volume_dilation,
)
from chambercross.polyalg import MultiPoly
from chambercross.presets import preset, roots_a
from chambercross.wallcross import par, sweep

B2 = [(1, 0), (0, 1), (1, 1), (1, -1)]


class TestBruteCount:
    """Test direct partition counts."""

    @pytest.mark.parametrize(
        "vectors, point, expected",
        [
            (roots_a(2), (2, 1), 3),
            (B2, (1, 1), 3),
            (B2, (2, 0), 4),
            (B2, (2, 1), 5),
            (B2, (2, -1), 2),
            (B2, (0, 0), 1),
            (B2, (-1, 0), 0),
            ([(1, 1), (1, -1)], (1, 0), 0),
        ],
    )
    def test_known_counts(self, vectors, point, expected):
        """Test hand-counted values."""
        assert brute_count(vectors, point) == expected

    def test_config_argument(self):
        """Test that a validated configuration can be passed directly."""
        assert brute_count(validate_config(B2), (2, 1)) == 5

    def test_rank_one(self):
        """Test that two copies of one vector count a + 1 ways."""
        query = CountQuery([(1,), (1,)])
        assert [query.count((a,)) for a in range(5)] == [1, 2, 3, 4, 5]

    def test_non_integer_point(self):
        """Test that rational points are rejected."""
        with pytest.raises(ValueError):
            brute_count(B2, (Fraction(1, 2), 0))

    def test_not_pointed(self):
        """Test that opposite vectors have no certificate."""
        with pytest.raises(NotPointedError):
            pointed_certificate([(1, 0), (-1, 0)])
        with pytest.raises(NotPointedError):
            CountQuery([(1, 0), (0, 1)], certificate=(1, -1))

    def test_no_vectors(self):
        """Test that an empty vector list is rejected."""
        with pytest.raises(ValueError):
            CountQuery([])


class TestKPlus:
    """Test the signed shifted counts."""

    def test_positive_vector(self):
        """Test a single vector on the positive side."""
        assert kplus([(1, 0)], (1, 0), (3, 0)) == 1
        assert kplus([(1, 0)], (1, 0), (3, 1)) == 0
        assert kplus([(1, 0)], (1, 0), (-1, 0)) == 0

    def test_negative_vector(self):
        """Test that a reflected vector counts with a sign from n = 1."""
        assert kplus([(-1, 0)], (1, 0), (0, 0)) == 0
        assert kplus([(-1, 0)], (1, 0), (1, 0)) == -1
        assert kplus([(-1, 0)], (1, 0), (4, 0)) == -1

    def test_mixed_rank_one(self):
        """Test Psi = {1, -1} gives -a for a >= 1."""
        assert [kplus([(1,), (-1,)], (1,), (a,)) for a in range(4)] == [0, -1, -2, -3]

    def test_vector_in_wall(self):
        """Test that vectors in the wall are rejected."""
        with pytest.raises(WallVectorError):
            kplus([(0, 1)], (1, 0), (1, 0))


class TestConvolution:
    """Test the wall convolution against the residue functionals."""

    def test_rank_one(self):
        """Test the rank one convolutions."""
        one = MultiPoly.constant(0, 1)
        assert [convolve_C(one, [(1,), (1,)], (1,), (a,)) for a in range(4)] == [1, 2, 3, 4]
        assert [convolve_C(one, [(1,), (-1,)], (1,), (a,)) for a in range(4)] == [0, -1, -2, -3]

    def test_below_the_wall(self):
        """Test that negative heights give zero."""
        one = MultiPoly.constant(0, 1)
        assert convolve_C(one, [(1,)], (1,), (-2,)) == 0

    def test_a3_jump(self):
        """Test the convolution against Par on the A3 jump."""
        a1, a2, _ = [MultiPoly.variable(3, i) for i in range(3)]
        q = a1 + a2 + 1
        psis = [(0, 0, 1), (1, 0, -1), (0, 1, -1)]
        jump = par(q, psis, (0, 0, 1))
        for point in itertools.product(range(-1, 3), range(-1, 3), range(0, 4)):
            assert convolve_C(q, psis, (0, 0, 1), point) == jump.evaluate(point)


class TestDilation:
    """Test volumes read off dilations."""

    def test_b2_volumes(self):
        """Test B2 volumes at regular points."""
        config = preset("B2")
        assert volume_dilation(config, (2, -1), 2) == Fraction(1, 4)
        assert volume_dilation(config, (1, 2), 2) == Fraction(1, 2)

    def test_matches_solution(self):
        """Test that dilation volumes agree with the solved volume polynomials."""
        config = preset("A2")
        solution = sweep(config)
        for chamber in solution.complex.interior:
            for point in regular_points(solution.complex, chamber, 3, random.Random(3)):
                assert volume_dilation(config, point, 1) == solution.volumes[chamber.id].evaluate(point)


class TestPoints:
    """Test sample point generation and point comparison."""

    def test_closure_points(self):
        """Test that closure points lie in the closure and include the origin."""
        complex_ = chamber_complex(preset("B2"))
        for chamber in complex_.interior:
            points = closure_points(complex_, chamber, 8, random.Random(5))
            assert (0, 0) in points
            assert len(points) <= 8
            for point in points:
                assert complex_.closure_contains(chamber, point)

    @pytest.mark.parametrize("name", ["A2", "B2"])
    def test_closure_points_reach_count(self, name):
        """Test that rank two chambers yield the full count of distinct closure points."""
        complex_ = chamber_complex(preset(name))
        for chamber in complex_.interior:
            points = closure_points(complex_, chamber, 50, random.Random(0))
            assert len(points) == 50
            assert len(set(points)) == 50

    def test_regular_points(self):
        """Test that regular points locate to their own chamber."""
        complex_ = chamber_complex(preset("B2"))
        for chamber in complex_.interior:
            points = regular_points(complex_, chamber, 4, random.Random(9))
            assert points
            for point in points:
                assert complex_.locate(point).id == chamber.id

    def test_compare_point(self):
        """Test a solved value next to the brute-force count."""
        config = preset("B2")
        solution = sweep(config)
        outcome = compare_point(config, (2, 1), solution)
        assert outcome.value == 5
        assert outcome.brute == 5
        assert outcome.match is True
        assert outcome.chamber

    def test_compare_point_without_solution(self):
        """Test a count without a solution."""
        outcome = compare_point(preset("B2"), (2, 0))
        assert outcome.brute == 4
        assert outcome.value is None
        assert outcome.match is None

    def test_compare_point_outside_lattice(self):
        """Test a point outside the lattice of the vectors."""
        config = validate_config([(1, 1), (1, -1)], name="d2")
        outcome = compare_point(config, (1, 0), sweep(config))
        assert outcome.chamber == "outside lattice"
        assert outcome.brute == 0
        assert outcome.value == 0
        assert outcome.document().match is True
