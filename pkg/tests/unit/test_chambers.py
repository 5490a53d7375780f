"""Unit tests for chambercross.chambers module."""

from fractions import Fraction

import pytest  # type: ignore

from chambercross.chambers import (
    EXTERIOR,
    chamber_complex,
    enumerate_walls,
    unimodular_and_period,
    validate_config,
    wall_frame,
)
from chambercross.errors import InvalidConfigError, NotPointedError, RankMismatchError, ZeroVectorError
from chambercross.presets import preset

B2 = [(1, 0), (0, 1), (1, 1), (1, -1)]


class TestValidateConfig:
    """Test configuration validation."""

    def test_standard_config(self):
        """Test that a saturated configuration keeps its coordinates."""
        config = validate_config(B2, name="B2")
        assert config.is_standard
        assert config.rank == 2
        assert config.size == 4
        assert config.index == 1
        assert config.to_working((3, -1)) == (3, -1)
        for v in config.vectors:
            assert sum(x * c for x, c in zip(v, config.certificate, strict=True)) >= 1

    def test_zero_vector(self):
        """Test that the zero vector is rejected."""
        with pytest.raises(ZeroVectorError):
            validate_config([(1, 0), (0, 0)])

    def test_not_pointed(self):
        """Test that opposite vectors are rejected."""
        with pytest.raises(NotPointedError):
            validate_config([(1, 0), (-1, 0)])

    def test_rank_mismatch(self):
        """Test that vectors of different lengths are rejected."""
        with pytest.raises(RankMismatchError):
            validate_config([(1, 0), (1, 0, 0)])

    def test_empty(self):
        """Test that an empty configuration is rejected."""
        with pytest.raises(InvalidConfigError):
            validate_config([])

    def test_sublattice_of_index_two(self):
        """Test that vectors generating an index two lattice are rewritten."""
        config = validate_config([(1, 1), (1, -1)], name="d2")
        assert not config.is_standard
        assert config.rank == 2
        assert config.index == 2
        assert config.to_working((1, 0)) is None
        working = config.to_working((2, 0))
        assert working is not None
        assert config.to_ambient(working) == (2, 0)

    def test_lower_rank(self):
        """Test a configuration spanning a plane in Z^3."""
        config = validate_config([(1, 0, 0), (0, 1, 0), (1, 1, 0)], name="plane")
        assert config.rank == 2
        assert config.ambient_rank == 3
        assert config.to_working((1, 1, 1)) is None
        working = config.to_working((2, 3, 0))
        assert config.to_ambient(working) == (2, 3, 0)

    def test_as_dict(self):
        """Test the dictionary form."""
        data = validate_config(B2, name="B2").as_dict()
        assert data["name"] == "B2"
        assert data["vectors"] == [list(v) for v in B2]


class TestWalls:
    """Test wall enumeration."""

    def test_b2_walls(self):
        """Test the four walls of B2, two of them facets."""
        walls = enumerate_walls(validate_config(B2))
        assert sorted(w.normal for w in walls) == [(0, 1), (1, -1), (1, 0), (1, 1)]
        facets = sorted(w.normal for w in walls if w.is_facet)
        assert facets == [(1, 0), (1, 1)]
        for wall in walls:
            assert len(wall.on) == 1

    def test_rank_one(self):
        """Test the single wall in rank one."""
        walls = enumerate_walls(validate_config([(1,), (2,)]))
        assert len(walls) == 1
        assert walls[0].is_facet
        assert walls[0].on == []


class TestChamberComplex:
    """Test chambers, crossings and point location."""

    @pytest.mark.parametrize("name, count", [("A1", 1), ("A2", 2), ("B2", 3), ("A3", 7)])
    def test_chamber_counts(self, name, count):
        """Test known chamber counts."""
        assert len(chamber_complex(preset(name)).interior) == count

    def test_b2_locate(self):
        """Test that interior points land in three different chambers."""
        complex_ = chamber_complex(validate_config(B2))
        ids = {complex_.locate(p).id for p in [(1, 2), (2, 1), (2, -1)]}
        assert len(ids) == 3
        assert EXTERIOR not in ids
        assert complex_.locate((-1, 3)).is_exterior
        assert complex_.locate((-1, 0)) is None
        assert complex_.locate((1, 1)) is None
        assert complex_.locate((3, 2)).id == complex_.locate((2, 1)).id

    def test_b2_closure(self):
        """Test closures and the lowest-id rule on shared boundaries."""
        complex_ = chamber_complex(validate_config(B2))
        upper = complex_.locate((1, 2))
        middle = complex_.locate((2, 1))
        assert complex_.closure_contains(upper, (1, 1))
        assert complex_.closure_contains(middle, (1, 1))
        assert complex_.closure_chamber((1, 1)).id == min(upper.id, middle.id)
        assert complex_.closure_chamber((0, 0)).id == 1
        assert complex_.closure_chamber((-1, 0)).is_exterior

    def test_b2_crossings_and_rays(self):
        """Test crossings and rays of B2."""
        complex_ = chamber_complex(validate_config(B2))
        assert len(complex_.crossings) == 4
        assert sum(1 for c in complex_.crossings if c.target == EXTERIOR) == 2
        upper = complex_.locate((1, 2))
        assert upper.rays == [(1, 1), (0, 1)]
        lower = complex_.locate((2, -1))
        assert lower.rays == [(1, 0), (1, -1)]
        for crossing in complex_.crossings:
            assert crossing.source != crossing.target

    def test_witnesses_locate_their_chamber(self):
        """Test that every witness lies in its own chamber."""
        complex_ = chamber_complex(preset("A3"))
        for chamber in complex_.interior:
            assert complex_.locate(chamber.witness).id == chamber.id

    def test_locate_rank_mismatch(self):
        """Test that points of the wrong rank are rejected."""
        complex_ = chamber_complex(validate_config(B2))
        with pytest.raises(RankMismatchError):
            complex_.locate((1, 2, 3))

    def test_as_dict(self):
        """Test the dictionary form."""
        data = chamber_complex(validate_config(B2)).as_dict()
        assert len(data["walls"]) == 4
        assert len(data["chambers"]) == 3


class TestWallFrame:
    """Test wall frames and the sub-configurations on walls."""

    def test_primitive_wall(self):
        """Test a wall whose vectors generate its lattice."""
        config = validate_config(B2)
        wall = next(w for w in enumerate_walls(config) if w.normal == (0, 1))
        frame = wall_frame(config, wall)
        assert frame.phi0 == [(1,)]
        assert frame.index == 1
        assert frame.coordinates == [[1, 0]]
        assert frame.complement == (0, 1)

    def test_wall_of_index_two(self):
        """Test a wall spanned by a non-primitive vector."""
        config = validate_config([(2, 0), (0, 1), (1, 1)])
        assert config.is_standard
        wall = next(w for w in enumerate_walls(config) if w.normal == (0, 1))
        frame = wall_frame(config, wall)
        assert frame.phi0 == [(2,)]
        assert frame.index == 2
        assert frame.characters == [(Fraction(0),), (Fraction(1, 2),)]


class TestUnimodular:
    """Test unimodularity and period."""

    def test_unimodular(self):
        """Test that A_r is unimodular and B2 is not."""
        assert unimodular_and_period(preset("A3")) == (True, 1)
        assert unimodular_and_period(preset("B2")) == (False, 2)
