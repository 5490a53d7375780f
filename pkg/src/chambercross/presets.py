# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Positive roots of the classical root systems and random test configurations.

A_r is written in the coordinates a = sum a_i (e_i - e_{r+1}), so
e_i - e_{r+1} becomes the unit vector u_i and e_i - e_j becomes u_i - u_j.
B_r, C_r and D_r use the standard coordinates of R^r.
"""

import logging
import random
import re
from typing import List, Tuple

from .chambers import VectorConfig, validate_config
from .errors import ConfigError, UnknownPresetError

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]

PRESET_PATTERN = re.compile(r"^\s*([ABCD])_?(\d+)\s*$", re.IGNORECASE)
MINIMUM_RANK = {"A": 1, "B": 2, "C": 2, "D": 2}


def _unit(r: int, i: int, scale: int = 1) -> IntVector:
    return tuple(scale if k == i else 0 for k in range(r))


def _plus(u: IntVector, v: IntVector, sign: int = 1) -> IntVector:
    return tuple(x + sign * y for x, y in zip(u, v, strict=True))


def roots_a(r: int) -> List[IntVector]:
    """e_i - e_j for 1 <= i < j <= r + 1, ordered by height"""
    roots = []
    for height in range(1, r + 1):
        for i in range(r + 1 - height):
            j = i + height
            if j == r:
                roots.append(_unit(r, i))
            else:
                roots.append(_plus(_unit(r, i), _unit(r, j), -1))
    return roots


def _pairs(r: int) -> List[IntVector]:
    plus, minus = [], []
    for i in range(r):
        for j in range(i + 1, r):
            plus.append(_plus(_unit(r, i), _unit(r, j)))
            minus.append(_plus(_unit(r, i), _unit(r, j), -1))
    return plus + minus


def roots_b(r: int) -> List[IntVector]:
    """e_i, e_i + e_j, e_i - e_j"""
    return [_unit(r, i) for i in range(r)] + _pairs(r)


def roots_c(r: int) -> List[IntVector]:
    """2 e_i, e_i + e_j, e_i - e_j"""
    return [_unit(r, i, 2) for i in range(r)] + _pairs(r)


def roots_d(r: int) -> List[IntVector]:
    """e_i + e_j, e_i - e_j"""
    return _pairs(r)


FAMILIES = {"A": roots_a, "B": roots_b, "C": roots_c, "D": roots_d}


def parse_preset(name: str) -> Tuple[str, int]:
    match = PRESET_PATTERN.match(name or "")
    if not match:
        raise UnknownPresetError(f"unknown preset {name!r}, expected one of A<r>, B<r>, C<r>, D<r>")
    family, r = match.group(1).upper(), int(match.group(2))
    if r < MINIMUM_RANK[family]:
        raise UnknownPresetError(f"preset {family}{r} needs rank at least {MINIMUM_RANK[family]}")
    return family, r


def preset_vectors(name: str) -> List[IntVector]:
    family, r = parse_preset(name)
    return FAMILIES[family](r)


def preset(name: str) -> VectorConfig:
    """Validated configuration for a preset such as A2, B3 or D4"""
    family, r = parse_preset(name)
    return validate_config(FAMILIES[family](r), name=f"{family}{r}")


def random_config(rank: int, size: int, rng: random.Random, bound: int = 3, attempts: int = 1000) -> VectorConfig:
    """A pointed configuration spanning and generating Z^rank, entries in [-bound, bound]"""
    if size < rank:
        raise ConfigError(f"{size} vectors cannot span rank {rank}")
    for attempt in range(attempts):
        rows = [tuple(rng.randint(-bound, bound) for _ in range(rank)) for _ in range(size)]
        if any(not any(row) for row in rows):
            continue
        try:
            config = validate_config(rows, name=f"random{rank}x{size}")
        except ConfigError:
            continue
        if config.is_standard:
            logger.debug("random configuration found after %d attempts: %s", attempt + 1, rows)
            return config
    raise ConfigError(f"no pointed saturated {rank}x{size} configuration found in {attempts} attempts")
