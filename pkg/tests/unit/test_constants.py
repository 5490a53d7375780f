"""Unit tests for chambercross.constants module."""

import pytest  # type: ignore

from chambercross import constants


class TestConstants:
    """Test constants module values and functionality."""

    def test_title_constant(self):
        """Test that __title__ is correctly set."""
        assert constants.__title__ == "chambercross"

    def test_version_constant_exists(self):
        """Test that __version__ exists and is a string."""
        assert isinstance(constants.__version__, str)
        assert len(constants.__version__) > 0

    def test_version_info_matches_version(self):
        """Test that __version_info__ matches __version__."""
        assert constants.__version_info__ == tuple(constants.__version__.split("."))

    def test_info_function_format(self):
        """Test the exact format of info function output."""
        assert constants.info() == f"{constants.__title__}\n{constants.__version__}"

    def test_version_follows_semver_pattern(self):
        """Test that version follows semantic versioning pattern."""
        parts = constants.__version__.split(".")
        assert len(parts) >= 2
        try:
            int(parts[0])
            int(parts[1])
        except ValueError:
            pytest.fail(f"Version {constants.__version__} does not follow semantic versioning")

    def test_exit_codes_are_distinct(self):
        """Test the command line exit codes."""
        codes = [
            constants.EXIT_OK,
            constants.EXIT_VALIDATION,
            constants.EXIT_VERIFICATION,
            constants.EXIT_CONSISTENCY,
        ]
        assert codes == [0, 1, 2, 3]

    def test_environment_names(self):
        """Test the environment variable names."""
        assert constants.DEBUG_ENV == "CHAMBERCROSS_DEBUG"
        assert constants.SEED_ENV == "CHAMBERCROSS_SEED"

    def test_budgets_are_positive(self):
        """Test default oracle sample sizes."""
        assert constants.CLOSURE_POINTS > 0
        assert constants.DIFFERENCE_TRIPLES > 0
        assert constants.DILATION_POINTS > 0
