"""Unit tests for chambercross.errors module."""

import io
from unittest.mock import Mock, patch

import pytest  # type: ignore

from chambercross.errors import (
    ArithmeticDomainError,
    BaseError,
    ConfigError,
    ConsistencyError,
    DilationMismatchError,
    InputFormatError,
    InvalidConfigError,
    JumpMismatchError,
    NonRationalValueError,
    NotPointedError,
    RankMismatchError,
    TruncationError,
    UnknownPresetError,
    WallVectorError,
    ZeroDivisionInFieldError,
    ZeroVectorError,
    debug_except_hook,
)


class TestBaseError:
    """Test BaseError exception class."""

    def test_base_error_is_exception(self):
        """Test that BaseError is an Exception."""
        assert issubclass(BaseError, Exception)

    def test_base_error_with_message(self):
        """Test BaseError with custom message."""
        error = BaseError("Custom error message")
        assert str(error) == "Custom error message"


class TestConsistencyError:
    """Test ConsistencyError and its message prefixing."""

    def test_default_message(self):
        """Test message without details."""
        assert str(ConsistencyError()) == "Internal consistency check failed"

    def test_message_with_details(self):
        """Test that details are appended to the class message."""
        error = ConsistencyError("chamber 3")
        assert str(error) == "Internal consistency check failed: chamber 3"

    def test_subclass_messages(self):
        """Test subclass message prefixes."""
        assert str(JumpMismatchError("wall (1, 0)")).startswith("Chamber difference disagrees")
        assert str(DilationMismatchError()) == "Dilation fit leading coefficients disagree"
        assert str(NonRationalValueError("x")) == "Quasi-polynomial value is not rational: x"

    def test_message_does_not_leak_between_instances(self):
        """Test that the class message is not mutated."""
        JumpMismatchError("first")
        assert str(JumpMismatchError()) == "Chamber difference disagrees with the jump formula"


class TestErrorHierarchy:
    """Test the error class hierarchy."""

    def test_config_errors(self):
        """Test that input problems are ConfigErrors."""
        for error_class in [
            InvalidConfigError,
            ZeroVectorError,
            NotPointedError,
            RankMismatchError,
            UnknownPresetError,
            InputFormatError,
        ]:
            assert issubclass(error_class, ConfigError)
            assert issubclass(error_class, BaseError)

    def test_arithmetic_errors(self):
        """Test arithmetic domain errors."""
        assert issubclass(WallVectorError, ArithmeticDomainError)
        assert issubclass(ZeroDivisionInFieldError, ArithmeticDomainError)
        assert issubclass(ZeroDivisionInFieldError, ZeroDivisionError)

    def test_consistency_errors(self):
        """Test that cross-check failures are ConsistencyErrors."""
        for error_class in [JumpMismatchError, DilationMismatchError, NonRationalValueError]:
            assert issubclass(error_class, ConsistencyError)
            assert issubclass(error_class, BaseError)

    def test_truncation_is_not_consistency(self):
        """Test that truncation errors stand apart."""
        assert issubclass(TruncationError, BaseError)
        assert not issubclass(TruncationError, ConsistencyError)

    def test_field_division_caught_as_zero_division(self):
        """Test that field division errors can be caught as ZeroDivisionError."""
        with pytest.raises(ZeroDivisionError):
            raise ZeroDivisionInFieldError("division by zero")


class TestDebugExceptHook:
    """Test debug_except_hook function."""

    @patch("traceback.print_exception")
    @patch("pdb.post_mortem")
    @patch("builtins.print")
    def test_debug_except_hook_calls(self, mock_print, mock_post_mortem, mock_print_exception):
        """Test that debug_except_hook calls expected functions."""
        exc_type = ValueError
        exc_value = ValueError("Test error")
        exc_traceback = Mock()

        debug_except_hook(exc_type, exc_value, exc_traceback)

        assert mock_print.call_count == 2
        mock_print.assert_any_call("chambercross hit ValueError")
        mock_print.assert_any_call(str(exc_type))
        mock_print_exception.assert_called_once_with(exc_type, exc_value, exc_traceback)
        mock_post_mortem.assert_called_once_with(exc_traceback)

    @patch("sys.stdout", new_callable=io.StringIO)
    @patch("pdb.post_mortem")
    @patch("traceback.print_exception")
    def test_debug_except_hook_output_format(self, mock_print_exception, mock_post_mortem, mock_stdout):
        """Test the output format of debug_except_hook."""
        exc_type = JumpMismatchError
        debug_except_hook(exc_type, exc_type("wall"), Mock())

        output = mock_stdout.getvalue()
        assert "chambercross hit JumpMismatchError" in output
        assert str(exc_type) in output
