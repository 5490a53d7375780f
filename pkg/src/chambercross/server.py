# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

import asyncio
import json
import logging
import os
import sys
from typing import Annotated, List, Optional

from fastmcp import Context, FastMCP
from pydantic import Field
from starlette.requests import Request
from starlette.responses import PlainTextResponse

from . import constants
from .chambers import VectorConfig, validate_config
from .common import dump_json, solution_document
from .errors import BaseError, InvalidConfigError, debug_except_hook
from .oracle import compare_point
from .presets import preset
from .schemas import validate_input
from .wallcross import Solver

logger = logging.getLogger(__name__)

PresetField = Annotated[Optional[str], Field(description="Root system preset such as A3 or B2")]
VectorsField = Annotated[
    Optional[List[List[int]]], Field(description="Integer vectors of the configuration, used when no preset is given")
]
PointField = Annotated[str, Field(description="Comma separated integer coordinates, e.g. 2,-1")]


def resolve_config(preset_name: Optional[str], vectors: Optional[List[List[int]]], name: str = "") -> VectorConfig:
    """The configuration named by a preset or given as vectors"""
    if bool(preset_name) == bool(vectors):
        raise InvalidConfigError("give exactly one of preset or vectors")
    if preset_name:
        return preset(preset_name)
    validated = validate_input("config", {"name": name, "vectors": vectors})
    return validate_config(validated["vectors"], name=validated["name"] or "input")


async def handle_errors(ctx: Context, e: Exception, operation: str) -> str:
    """Turn package errors into tool results"""
    if isinstance(e, BaseError):
        await ctx.error(f"{operation} failed: {e!s}")
        return f"{type(e).__name__}: {e!s}"
    await ctx.error(f"Unexpected error in {operation}: {e!s}")
    return f"Error in {operation}: {e!s}"


async def solve_tool(
    ctx: Context,
    solver: Solver,
    preset_name: Optional[str] = None,
    vectors: Optional[List[List[int]]] = None,
    shift_form: bool = False,
) -> str:
    """Solve every chamber of a configuration"""
    try:
        config = resolve_config(preset_name, vectors)
        await ctx.debug(f"Solving {config.name} with {config.size} vectors in rank {config.rank}")
        solution = await asyncio.to_thread(solver.solve, config)
        await ctx.info(f"Solved {len(solution.complex.interior)} chambers of {config.name}")
        return dump_json(solution_document(solution.complex, solution, shift_form=shift_form))
    except Exception as e:
        return await handle_errors(ctx, e, "solve_config")


async def evaluate_tool(
    ctx: Context,
    solver: Solver,
    point: str,
    preset_name: Optional[str] = None,
    vectors: Optional[List[List[int]]] = None,
) -> str:
    """Evaluate the chamber quasi-polynomial at a point and compare with a direct count"""
    try:
        config = resolve_config(preset_name, vectors)
        coordinates = validate_input("point", point)["point"]
        await ctx.debug(f"Evaluating {config.name} at {coordinates}")
        solution = await asyncio.to_thread(solver.solve, config)
        outcome = await asyncio.to_thread(compare_point, config, coordinates, solution)
        if outcome.match is False:
            await ctx.warning(f"Solved value {outcome.value} differs from count {outcome.brute}")
        return json.dumps(outcome.document().model_dump(), indent=2)
    except Exception as e:
        return await handle_errors(ctx, e, "evaluate_point")


async def count_tool(
    ctx: Context,
    point: str,
    preset_name: Optional[str] = None,
    vectors: Optional[List[List[int]]] = None,
) -> str:
    """Count the partitions of a point directly"""
    try:
        config = resolve_config(preset_name, vectors)
        coordinates = validate_input("point", point)["point"]
        await ctx.debug(f"Counting {config.name} at {coordinates}")
        outcome = await asyncio.to_thread(compare_point, config, coordinates)
        return json.dumps(outcome.document().model_dump(), indent=2)
    except Exception as e:
        return await handle_errors(ctx, e, "count_point")


async def health_check(request: Request) -> PlainTextResponse:
    return PlainTextResponse("OK")


def build_server(solver: Optional[Solver] = None) -> FastMCP:
    """The tool server; every request shares one solver and its cache"""
    mcp = FastMCP("chambercross", "1.0.0")
    solver = solver or Solver(check_all_jumps=True)

    @mcp.tool(title="Solve Configuration", description="Walls, chambers and chamber functions of a configuration")
    async def solve_config(
        ctx: Context,
        preset: PresetField = None,
        vectors: VectorsField = None,
        shift_form: Annotated[bool, Field(description="Render quasi-polynomials as shifts")] = False,
    ) -> str:
        """Solve every chamber of a configuration"""
        return await solve_tool(ctx, solver, preset, vectors, shift_form)

    @mcp.tool(title="Evaluate Point", description="Solved partition count and brute-force count at a point")
    async def evaluate_point(
        ctx: Context, point: PointField, preset: PresetField = None, vectors: VectorsField = None
    ) -> str:
        """Evaluate the chamber quasi-polynomial at a point and compare with a direct count"""
        return await evaluate_tool(ctx, solver, point, preset, vectors)

    @mcp.tool(title="Count Point", description="Brute-force vector partition count at a point")
    async def count_point(
        ctx: Context, point: PointField, preset: PresetField = None, vectors: VectorsField = None
    ) -> str:
        """Count the partitions of a point directly"""
        return await count_tool(ctx, point, preset, vectors)

    mcp.custom_route("/health", methods=["GET"])(health_check)
    return mcp


def run(cfg):
    debug = cfg.debug or os.environ.get(constants.DEBUG_ENV, False)
    if debug:
        sys.excepthook = debug_except_hook
        logger.setLevel(logging.DEBUG)

    mcp = build_server()
    asyncio.run(mcp.run_async(transport="http", host="0.0.0.0", port=8000))
    return "MCP is running"
