"""Smoke tests for chambercross module."""

import pytest  # type: ignore


def test_chambercross_is_importable():
    """Test that chambercross module can be imported without errors."""
    try:
        import chambercross  # noqa: F401
    except ImportError as e:
        pytest.fail(f"Failed to import chambercross: {e}")


def test_chambercross_wallcross_is_importable():
    """Test that chambercross.wallcross module can be imported without errors."""
    try:
        import chambercross.wallcross  # noqa: F401
    except ImportError as e:
        pytest.fail(f"Failed to import chambercross.wallcross: {e}")


def test_chambercross_server_is_importable():
    """Test that chambercross.server module can be imported without errors."""
    try:
        import chambercross.server  # noqa: F401
    except ImportError as e:
        pytest.fail(f"Failed to import chambercross.server: {e}")


def test_key_classes_importable():
    """Test that key classes can be imported."""
    try:
        from chambercross.chambers import ChamberComplex, VectorConfig  # noqa: F401
        from chambercross.polyalg import MultiPoly, QuasiPoly  # noqa: F401
        from chambercross.wallcross import ChamberSolution, Solver  # noqa: F401
    except ImportError as e:
        pytest.fail(f"Failed to import key classes: {e}")
