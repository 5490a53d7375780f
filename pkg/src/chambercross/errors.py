# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0


import pdb
import traceback


class BaseError(Exception):
    """Base Error Class"""


class ConfigError(BaseError):
    """Raised when a vector configuration or run configuration is unusable"""


class InvalidConfigError(ConfigError):
    """Raised when command line options contradict each other"""


class ZeroVectorError(ConfigError):
    """A configuration contains the zero vector"""


class NotPointedError(ConfigError):
    """No linear form is positive on every vector of the configuration"""


class RankMismatchError(ConfigError):
    """Vectors, points or polynomials of different ranks were combined"""


class UnknownPresetError(ConfigError):
    """The requested root system preset does not exist"""


class InputFormatError(ConfigError):
    """An input file could not be read or parsed"""


class ArithmeticDomainError(BaseError):
    """Base class for exact arithmetic that has no answer"""


class ZeroDivisionInFieldError(ArithmeticDomainError, ZeroDivisionError):
    """Division by zero in a cyclotomic field"""


class WallVectorError(ArithmeticDomainError):
    """A vector handed to a residue functional lies in the wall"""


class TruncationError(BaseError):
    """Series truncation orders cannot produce an exact residue"""


class ConsistencyError(BaseError):
    """Base Error for failed internal cross-checks"""

    message = "Internal consistency check failed"

    def __init__(self, message=None):
        if message:
            self.message += ": " + message
        super().__init__(self.message)


class NonRationalValueError(ConsistencyError):
    """A count evaluated to a non-rational cyclotomic number"""

    message = "Quasi-polynomial value is not rational"


class JumpMismatchError(ConsistencyError):
    """Two adjacent chambers disagree with their wall-crossing jump"""

    message = "Chamber difference disagrees with the jump formula"


class DilationMismatchError(ConsistencyError):
    """Residue classes of a dilation fit disagree on the leading coefficient"""

    message = "Dilation fit leading coefficients disagree"


def debug_except_hook(type, value, tb):
    print(f"chambercross hit {type.__name__}")
    print(str(type))

    traceback.print_exception(type, value, tb)
    pdb.post_mortem(tb)
