"""Functional tests for the chambercross verify suites."""

from unittest.mock import patch

import pytest  # type: ignore

from chambercross import constants
from chambercross.chambers import validate_config
from chambercross.errors import TruncationError
from chambercross.presets import preset
from chambercross.suites import FAMILIES, VerifyRunner, default_battery
from chambercross.wallcross import Solver


class TestVerifyRunner:
    """Test the invariant families on small configurations."""

    def test_a2_all_families(self):
        """Test that every family passes on A2."""
        report = VerifyRunner(preset("A2"), budget=10).run()
        assert [s.name for s in report.suites] == list(FAMILIES)
        failures = [f for s in report.suites for f in s.failures]
        assert report.passed, failures
        assert all(s.checks > 0 for s in report.suites)

    @pytest.mark.slow
    def test_b2_all_families(self):
        """Test that every family passes on B2."""
        report = VerifyRunner(preset("B2"), budget=10, seed=3).run()
        failures = [f for s in report.suites for f in s.failures]
        assert report.passed, failures

    def test_index_two_wall(self):
        """Test the oracle families on a configuration with a wall of index two."""
        config = validate_config([(2, 0), (0, 1), (1, 1)], name="wall2")
        report = VerifyRunner(config, budget=15).run(["jumps", "oracle", "todd", "functionals", "convolution"])
        failures = [f for s in report.suites for f in s.failures]
        assert report.passed, failures

    def test_single_vector_walls(self):
        """Test the functional family where one vector lies off each wall."""
        config = validate_config([(1, 0), (0, 1)], name="square")
        report = VerifyRunner(config, budget=10).run(["functionals", "jumps", "oracle"])
        failures = [f for s in report.suites for f in s.failures]
        assert report.passed, failures
        assert all(s.checks > 0 for s in report.suites)

    def test_oracle_samples_full_count(self):
        """Test that the oracle family checks the default number of closure points per chamber."""
        report = VerifyRunner(preset("A2")).run(["oracle"])
        assert report.passed
        assert report.suites[0].checks == 2 * (1 + constants.CLOSURE_POINTS)

    def test_short_closure_sample_fails(self):
        """Test that too few closure points fail the oracle family."""
        with patch("chambercross.suites.closure_points", return_value=[(0, 0)]):
            report = VerifyRunner(preset("A2"), budget=10).run(["oracle"])
        assert not report.passed
        assert report.suites[0].failures[0] == "c1: 1 closure points, expected 10"

    def test_shared_solver(self):
        """Test that runners share a solver's cached solutions."""
        solver = Solver(check_all_jumps=False)
        first = VerifyRunner(preset("A2"), solver=solver)
        second = VerifyRunner(preset("A2"), solver=solver)
        assert first.solution is second.solution

    def test_failing_family_is_recorded(self):
        """Test that a family raising a package error fails without stopping the run."""
        with patch.object(VerifyRunner, "check_period", side_effect=TruncationError("orders too low")):
            report = VerifyRunner(preset("A2"), budget=5).run(["census", "period", "jumps"])
        assert not report.passed
        by_name = {s.name: s for s in report.suites}
        assert by_name["census"].passed
        assert by_name["jumps"].passed
        assert by_name["period"].failures == ["TruncationError: orders too low"]

    def test_seeded_runs_agree(self):
        """Test that the same seed reproduces the same report."""
        first = VerifyRunner(preset("B2"), budget=8, seed=11).run(["oracle", "differences"])
        second = VerifyRunner(preset("B2"), budget=8, seed=11).run(["oracle", "differences"])
        assert first.model_dump() == second.model_dump()


class TestDefaultBattery:
    """Test the battery run by verify without a source."""

    def test_battery(self):
        """Test presets first, then seeded random configurations."""
        battery = default_battery(1)
        assert [c.name for c, _ in battery[:3]] == ["A2", "B2", "A3"]
        assert all(families == FAMILIES for _, families in battery[:3])
        assert len(battery) == 13
        for config, families in battery[3:]:
            assert config.is_standard
            assert "oracle" in families

    def test_battery_is_seeded(self):
        """Test that the seed fixes the random configurations."""
        first = [c.vectors for c, _ in default_battery(5)]
        second = [c.vectors for c, _ in default_battery(5)]
        assert first == second
