# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, StrictInt, ValidationError, field_validator

from .errors import InputFormatError


class ConfigInput(BaseModel):
    """Schema for a vector configuration file"""

    name: str = Field("", description="Label of the configuration")
    vectors: List[List[StrictInt]] = Field(..., min_length=1, description="Integer vectors, all of the same length")

    @field_validator("name", mode="before")
    @classmethod
    def strip_whitespace(cls, v):
        """Strip whitespace from the name"""
        if v is None:
            return ""
        if isinstance(v, str):
            return v.strip()
        return v

    @field_validator("vectors")
    @classmethod
    def same_rank(cls, v):
        """Every vector is nonempty and has the same length"""
        lengths = {len(row) for row in v}
        if 0 in lengths:
            raise ValueError("vectors must be nonempty")
        if len(lengths) != 1:
            raise ValueError(f"vectors have different lengths {sorted(lengths)}")
        return v


class PointInput(BaseModel):
    """Schema for an evaluation point"""

    point: List[StrictInt] = Field(..., min_length=1, description="Integer coordinates of the point")

    @field_validator("point", mode="before")
    @classmethod
    def split_text(cls, v):
        """Accept "a1,a2,..." as well as a list"""
        if isinstance(v, str):
            try:
                return [int(x) for x in v.replace(" ", "").split(",") if x != ""]
            except ValueError as e:
                raise ValueError(f"point {v!r} is not a comma separated list of integers") from e
        return v


class PolynomialDocument(BaseModel):
    """A polynomial in a1..ar"""

    text: str = Field(..., description="Rendered polynomial")
    degree: int = Field(..., description="Total degree, -1 for zero")


class CosetDocument(BaseModel):
    residue: List[int] = Field(..., description="Coset representative h of h + M Z^r")
    polynomial: str = Field(..., description="Polynomial agreeing with the function on the coset")


class ShiftDocument(BaseModel):
    shift: List[str] = Field(..., description="Rational shift y with entries in [0, 1)")
    polynomial: str = Field(..., description="Polynomial multiplying e^(2 i pi <y, a>)")


class QuasiPolynomialDocument(BaseModel):
    """A quasi-polynomial in coset or shift form"""

    period: int = Field(..., description="Least common denominator of the shifts")
    text: str = Field(..., description="Rendered shift form")
    cosets: Optional[List[CosetDocument]] = Field(None, description="One polynomial per coset")
    shifts: Optional[List[ShiftDocument]] = Field(None, description="One polynomial per shift")


class WallDocument(BaseModel):
    id: int
    normal: List[int]
    on_wall: List[int] = Field(..., description="Indices of the vectors lying on the wall")
    facet: bool = Field(..., description="Whether the wall bounds the cone")


class ChamberDocument(BaseModel):
    id: int
    rays: List[List[int]]
    witness: List[str]
    adjacency: List[List[int]] = Field(..., description="Pairs (wall id, neighbor chamber id), 0 is the exterior")
    volume_poly: Optional[PolynomialDocument] = None
    partition_qp: Optional[QuasiPolynomialDocument] = None


class ConfigDocument(BaseModel):
    name: str
    rank: int
    vectors: List[List[int]]
    working_vectors: List[List[int]]
    basis: List[List[int]] = Field(..., description="Lattice basis the working coordinates refer to")
    unimodular: bool
    period: int


class SolutionDocument(BaseModel):
    """Output of solve and chambers"""

    config: ConfigDocument
    walls: List[WallDocument]
    chambers: List[ChamberDocument]


class EvalDocument(BaseModel):
    point: List[int]
    chamber: str
    value: Optional[str] = None
    brute: Optional[int] = None
    match: Optional[bool] = None


class SuiteReport(BaseModel):
    name: str
    passed: bool
    checks: int
    failures: List[str] = Field(default_factory=list)


class VerifyReport(BaseModel):
    """Pass or fail per invariant family"""

    config: str
    seed: int
    passed: bool
    suites: List[SuiteReport]


SCHEMA_MAP = {
    "config": ConfigInput,
    "point": PointInput,
}


def validate_input(kind: str, input_data: Any) -> Dict[str, Any]:
    """
    Validate input data of a given kind.

    Args:
        kind: The input kind ('config' or 'point')
        input_data: The raw data, a dictionary (or a string for points)

    Returns:
        Validated data as a dictionary

    Raises:
        InputFormatError: If the kind is unknown or the data doesn't match the schema
    """
    if kind not in SCHEMA_MAP:
        raise InputFormatError(f"Unsupported input kind: {kind}")
    schema_class = SCHEMA_MAP[kind]
    if kind == "point" and not isinstance(input_data, dict):
        input_data = {"point": input_data}
    if not isinstance(input_data, dict):
        raise InputFormatError(f"Input data for {kind} must be a dictionary")
    try:
        validated = schema_class(**input_data)
    except ValidationError as e:
        raise InputFormatError(f"{kind} validation failed: {e!s}") from e
    return validated.model_dump()
