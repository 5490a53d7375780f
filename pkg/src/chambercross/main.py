# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

import argparse
import json
import logging
import os
import sys

from pydantic import ValidationError

from . import config, constants, errors
from .chambers import chamber_complex
from .common import dump_json, solution_document, solution_text
from .oracle import compare_point
from .schemas import validate_input
from .suites import FAMILIES, VerifyRunner, default_battery
from .wallcross import Solver

debug = os.environ.get(constants.DEBUG_ENV, False)
level = logging.INFO
if debug:
    sys.excepthook = errors.debug_except_hook
    level = logging.DEBUG
log_format = "%(asctime)s %(name)s:[%(levelname)s] %(message)s"
logging.basicConfig(stream=sys.stderr, level=level, format=log_format)
logger = logging.getLogger(__name__)


def _source_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--preset", dest="preset", action="store", default=None, help="Root system preset: A2, B3, ...")
    parser.add_argument("--input", dest="input_path", action="store", default=None, help="JSON or YAML config file")
    parser.add_argument(
        "--random", dest="random_shape", action="store", default=None, help="Random pointed config of shape RxN"
    )
    parser.add_argument(
        "--seed", dest="seed", action="store", type=int, default=None, help="Seed for random configs and suites"
    )
    parser.add_argument(
        "--format", dest="output_format", action="store", default="json", choices=("json", "text"), help="Output format"
    )
    parser.add_argument("--debug", dest="debug", action="store_true", default=False, help="Turn debug on")


def _solver_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--debug-truncation",
        dest="debug_truncation",
        action="store_true",
        default=False,
        help="Recompute every residue with higher truncation orders and compare",
    )
    parser.add_argument(
        "--check-all-jumps",
        dest="check_all_jumps",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Verify the jump formula on every wall crossing after the sweep",
    )


def _point_arguments(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--point",
        dest="points",
        action="append",
        default=[],
        help="Integer point a1,a2,...; repeat for several (use --point=-1,2 for negative entries)",
    )


class CmdLine(object):
    def __init__(self):
        parser = argparse.ArgumentParser(
            description="Chamber polynomials of vector partition functions",
            usage="""chambercross <command> [<args>]

            chambercross commands are:
                solve      volume and partition functions of every chamber
                chambers   walls and chambers only
                eval       solved value and brute-force count at points
                count      brute-force count at points
                verify     run the invariant suites
                serve      start the tool server
                version    print the version

            """,
        )

        parser.add_argument("command", help="Subcommand to run")
        # parse_args defaults to [1:] for args, but you need to
        # exclude the rest of the args too, or validation will fail
        args = parser.parse_args(sys.argv[1:2])
        if not hasattr(self, args.command) or args.command.startswith("_"):
            logger.error("Unrecognized command")
            parser.print_help()
            self.exit_code = constants.EXIT_VALIDATION
            return
        # use dispatch pattern to invoke method with same name
        self.exit_code = self._dispatch(getattr(self, args.command))

    def _dispatch(self, command) -> int:
        try:
            return command()
        except (errors.ConfigError, ValidationError) as e:
            logger.error("%s", e)
            return constants.EXIT_VALIDATION
        except errors.ConsistencyError as e:
            logger.error("%s", e)
            return constants.EXIT_CONSISTENCY
        except (errors.ArithmeticDomainError, errors.TruncationError) as e:
            logger.error("%s", e)
            return constants.EXIT_CONSISTENCY

    def _run_config(self, command: str, parser: argparse.ArgumentParser) -> config.RunConfig:
        args = vars(parser.parse_args(sys.argv[2:]))
        if args.get("debug"):
            logging.getLogger().setLevel(logging.DEBUG)
            sys.excepthook = errors.debug_except_hook
        points = [tuple(validate_input("point", p)["point"]) for p in args.get("points", [])]
        seed = args.get("seed")
        return config.RunConfig(
            command=command,
            preset=args.get("preset"),
            input_path=args.get("input_path"),
            output_format=args.get("output_format", "json"),
            points=points,
            budget=args.get("budget"),
            seed=config.env_seed() if seed is None else seed,
            debug=args.get("debug", False),
            debug_truncation=args.get("debug_truncation", False),
            check_all_jumps=args.get("check_all_jumps", True),
            shift_form=args.get("shift_form", False),
            random_shape=config.parse_shape(args["random_shape"]) if args.get("random_shape") else None,
        )

    def solve(self) -> int:
        """
        Solve every chamber of a configuration
        """
        parser = argparse.ArgumentParser(description="volume and partition functions of every chamber\n")
        _source_arguments(parser)
        _solver_arguments(parser)
        parser.add_argument(
            "--shift-form",
            dest="shift_form",
            action="store_true",
            default=False,
            help="Print quasi-polynomials as shifts instead of cosets",
        )
        cfg = self._run_config("solve", parser)
        vectors = config.load_config(cfg)
        solution = Solver(check_all_jumps=cfg.check_all_jumps, check_truncation=cfg.debug_truncation).solve(vectors)
        document = solution_document(solution.complex, solution, shift_form=cfg.shift_form)
        print(dump_json(document) if cfg.output_format == "json" else solution_text(document))
        return constants.EXIT_OK

    def chambers(self) -> int:
        """
        Print the walls and chambers of a configuration
        """
        parser = argparse.ArgumentParser(description="walls and chambers of a configuration\n")
        _source_arguments(parser)
        cfg = self._run_config("chambers", parser)
        document = solution_document(chamber_complex(config.load_config(cfg)))
        print(dump_json(document) if cfg.output_format == "json" else solution_text(document))
        return constants.EXIT_OK

    def _points(self, command: str, solve: bool) -> int:
        parser = argparse.ArgumentParser(description=f"{command} at integer points\n")
        _source_arguments(parser)
        _point_arguments(parser)
        if solve:
            _solver_arguments(parser)
        cfg = self._run_config(command, parser)
        vectors = config.load_config(cfg)
        cfg.check_points(vectors.ambient_rank)
        solution = None
        if solve:
            solution = Solver(check_all_jumps=cfg.check_all_jumps, check_truncation=cfg.debug_truncation).solve(vectors)
        outcomes = [compare_point(vectors, point, solution) for point in cfg.points]
        if cfg.output_format == "json":
            print(json.dumps([o.document().model_dump() for o in outcomes], indent=2))
        else:
            for o in outcomes:
                if solve:
                    print(f"a = {o.point} in {o.chamber}: k = {o.value}, brute = {o.brute}")
                else:
                    print(f"a = {o.point}: brute = {o.brute}")
        if any(o.match is False for o in outcomes):
            logger.error("solved value and brute-force count disagree")
            return constants.EXIT_VERIFICATION
        return constants.EXIT_OK

    def eval(self) -> int:
        """
        Evaluate the solved quasi-polynomial and the brute-force count
        """
        return self._points("eval", solve=True)

    def count(self) -> int:
        """
        Brute-force partition count
        """
        return self._points("count", solve=False)

    def verify(self) -> int:
        """
        Run the invariant suites
        """
        parser = argparse.ArgumentParser(description="run the invariant suites\n")
        _source_arguments(parser)
        _solver_arguments(parser)
        parser.add_argument("--budget", dest="budget", action="store", type=int, default=None, help="Sample size")
        parser.add_argument(
            "--suite", dest="suites", action="append", default=None, choices=FAMILIES, help="Run only these suites"
        )
        cfg = self._run_config("verify", parser)
        families = vars(parser.parse_args(sys.argv[2:]))["suites"]
        solver = Solver(check_all_jumps=False, check_truncation=cfg.debug_truncation)
        if cfg.has_source:
            battery = [(config.load_config(cfg), families or FAMILIES)]
        else:
            battery = [(c, families or f) for c, f in default_battery(cfg.seed)]
        reports = [VerifyRunner(c, cfg.budget, cfg.seed, solver).run(f) for c, f in battery]
        if cfg.output_format == "json":
            print(json.dumps([r.model_dump() for r in reports], indent=2))
        else:
            for report in reports:
                for suite in report.suites:
                    status = "ok" if suite.passed else "FAILED"
                    print(f"{report.config} {suite.name}: {status} ({suite.checks} checks)")
                    for failure in suite.failures:
                        print(f"    {failure}")
        if not all(r.passed for r in reports):
            return constants.EXIT_VERIFICATION
        return constants.EXIT_OK

    def serve(self) -> int:
        """
        start the chambercross tool server
        """
        from . import server

        parser = argparse.ArgumentParser(description="start the chambercross tool server\n")
        parser.add_argument("--debug", dest="debug", action="store_true", default=False, help="Turn debug on")
        args = vars(parser.parse_args(sys.argv[2:]))
        cfg = config.RunConfig(command="serve", debug=args["debug"], seed=config.env_seed())
        server.run(cfg)
        return constants.EXIT_OK

    def version(self) -> int:
        """
        Prints version of chambercross
        """
        print(constants.info())
        return constants.EXIT_OK


def main():
    return CmdLine().exit_code


if __name__ == "__main__":
    sys.exit(main())
