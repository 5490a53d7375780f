# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

import json
import logging
import os
import random
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

import yaml

from . import constants
from .chambers import VectorConfig, validate_config
from .errors import InputFormatError, InvalidConfigError
from .models import OutputFormat
from .presets import preset, random_config
from .schemas import validate_input

logger = logging.getLogger(__name__)

SHAPE_PATTERN = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def env_seed() -> int:
    """Seed for randomized suites, read from CHAMBERCROSS_SEED"""
    value = os.environ.get(constants.SEED_ENV)
    if value is None or value.strip() == "":
        return constants.DEFAULT_SEED
    try:
        return int(value)
    except ValueError as e:
        raise InvalidConfigError(f"{constants.SEED_ENV} must be an integer, got {value!r}") from e


def parse_shape(text: str) -> Tuple[int, int]:
    """"RxN" as (rank, size)"""
    match = SHAPE_PATTERN.match(text or "")
    if not match:
        raise InvalidConfigError(f"random shape {text!r} is not of the form RxN")
    rank, size = int(match.group(1)), int(match.group(2))
    if rank < 1 or size < rank:
        raise InvalidConfigError(f"random shape {text!r} needs 1 <= R <= N")
    return rank, size


@dataclass
class RunConfig:
    """Data class for one command line run"""

    command: str
    preset: Optional[str] = None
    input_path: Optional[str] = None
    output_format: str = "json"
    points: List[Tuple[int, ...]] = field(default_factory=list)
    budget: Optional[int] = None
    seed: int = constants.DEFAULT_SEED
    debug: bool = False
    debug_truncation: bool = False
    check_all_jumps: bool = True
    shift_form: bool = False
    random_shape: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        self.validate()

    @property
    def has_source(self) -> bool:
        return any((self.preset, self.input_path, self.random_shape))

    def validate(self):
        """Enforce a single input source and a known output format"""
        sources = [s for s in (self.preset, self.input_path, self.random_shape) if s]
        if self.command in ("solve", "chambers", "eval", "count") and len(sources) != 1:
            raise InvalidConfigError("exactly one of --preset, --input or --random is required")
        if self.command == "verify" and len(sources) > 1:
            raise InvalidConfigError("verify takes at most one of --preset, --input or --random")
        if self.command in ("eval", "count") and not self.points:
            raise InvalidConfigError(f"{self.command} needs at least one --point")
        try:
            self.output_format = OutputFormat.parse(self.output_format).value
        except (ValueError, AttributeError) as e:
            raise InvalidConfigError(f"unknown output format {self.output_format!r}") from e
        if self.budget is not None and self.budget < 1:
            raise InvalidConfigError("--budget must be positive")

    def check_points(self, rank: int):
        """Points must carry the configuration's rank"""
        for point in self.points:
            if len(point) != rank:
                raise InvalidConfigError(f"point {point} has {len(point)} coordinates, expected {rank}")

    def as_dict(self):
        """Get a dictionary containing object properties"""
        return asdict(self)


def read_input(path: str) -> VectorConfig:
    """Load a configuration from a JSON or YAML file"""
    source = Path(path)
    try:
        with source.open() as f:
            if source.suffix.lower() in (".yaml", ".yml"):
                data = yaml.safe_load(f)
            else:
                data = json.load(f)
    except (OSError, json.JSONDecodeError, yaml.YAMLError) as e:
        raise InputFormatError(f"cannot read {path}: {e!s}") from e
    validated = validate_input("config", data)
    return validate_config(validated["vectors"], name=validated["name"] or source.stem)


def load_config(cfg: RunConfig) -> VectorConfig:
    """The configuration named by the run's single input source"""
    if cfg.preset:
        config = preset(cfg.preset)
    elif cfg.input_path:
        config = read_input(cfg.input_path)
    elif cfg.random_shape:
        rank, size = cfg.random_shape
        config = random_config(rank, size, random.Random(cfg.seed))
    else:
        raise InvalidConfigError("no configuration given")
    logger.debug("loaded %s: %s", config.name, config.original)
    return config
