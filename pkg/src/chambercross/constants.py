# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

from importlib import metadata

__title__ = "chambercross"
__version__ = metadata.version(__title__)
__build__ = "1"
__author__ = "Brett Smith"
__license__ = "Apache 2.0"
__version_info__ = tuple(__version__.split("."))

DEBUG_ENV = "CHAMBERCROSS_DEBUG"
SEED_ENV = "CHAMBERCROSS_SEED"
DEFAULT_SEED = 1

# Exit codes of the command line.
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2
EXIT_CONSISTENCY = 3

# Default oracle sample sizes, overridable with --budget.
CLOSURE_POINTS = 50
DIFFERENCE_TRIPLES = 100
DILATION_POINTS = 20


def info():
    return f"{__title__}\n{__version__}"
