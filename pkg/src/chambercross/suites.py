# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Invariant families run by ``chambercross verify``.

Each family is a ``check_<name>`` method of :class:`VerifyRunner` that
records one check per comparison into a :class:`SuiteOutcome`. A family
that raises one of the package errors is recorded as failed and the
remaining families still run.
"""

import itertools
import logging
import random
from fractions import Fraction
from math import ceil
from typing import Iterable, List, Optional, Sequence, Tuple

from . import constants
from .chambers import EXTERIOR, VectorConfig, unimodular_and_period, validate_config
from .errors import ArithmeticDomainError, ConfigError, ConsistencyError, JumpMismatchError, TruncationError
from .lattice import rank
from .models import SuiteOutcome
from .oracle import CountQuery, brute_count, closure_points, convolve_C, regular_points, volume_dilation
from .polyalg import QuasiPoly, pair
from .presets import preset, random_config
from .schemas import VerifyReport
from .wallcross import ChamberSolution, JumpContext, Solver, compute_G, para, pol, todd_apply

logger = logging.getLogger(__name__)

FAMILIES = (
    "census",
    "jumps",
    "oracle",
    "facets",
    "period",
    "top_degree",
    "todd",
    "todd_jumps",
    "dilation",
    "differences",
    "functionals",
    "convolution",
)

KNOWN_CHAMBERS = {"A1": 1, "A2": 2, "B2": 3, "A3": 7}

# Wall contexts exercised by the functional and convolution families.
CONTEXT_LIMIT = 3
# Chamber level difference equations re-solve one smaller configuration per vector.
DIFFERENCE_SOLVE_LIMIT = 7


class VerifyRunner:
    """Runs the invariant families against one configuration"""

    def __init__(
        self,
        config: VectorConfig,
        budget: Optional[int] = None,
        seed: int = constants.DEFAULT_SEED,
        solver: Optional[Solver] = None,
    ):
        self.config = config
        self.budget = budget
        self.seed = seed
        self.solver = solver or Solver(check_all_jumps=False)
        self._solution: Optional[ChamberSolution] = None
        self._shifts = None

    @property
    def solution(self) -> ChamberSolution:
        if self._solution is None:
            self._solution = self.solver.solve(self.config)
        return self._solution

    @property
    def shifts(self):
        if self._shifts is None:
            self._shifts = compute_G(self.config.vectors)
        return self._shifts

    def size(self, default: int) -> int:
        return self.budget or default

    def rng(self, family: str) -> random.Random:
        return random.Random(f"{self.seed}:{self.config.name}:{family}")

    def contexts(self) -> List[JumpContext]:
        items = sorted(self.solution.contexts.items())
        return [ctx for _, ctx in items[:CONTEXT_LIMIT]]

    def run(self, families: Optional[Iterable[str]] = None) -> VerifyReport:
        outcomes = []
        for name in families or FAMILIES:
            outcome = SuiteOutcome(name)
            try:
                getattr(self, f"check_{name}")(outcome)
            except (ConsistencyError, ArithmeticDomainError, TruncationError, ConfigError) as e:
                outcome.fail(f"{type(e).__name__}: {e}")
            logger.info(
                "%s %s: %d checks, %d failures", self.config.name, name, outcome.checks, len(outcome.failures)
            )
            outcomes.append(outcome)
        return VerifyReport(
            config=self.config.name,
            seed=self.seed,
            passed=all(o.passed for o in outcomes),
            suites=[o.report() for o in outcomes],
        )

    def check_census(self, outcome: SuiteOutcome):
        complex_ = self.solution.complex
        known = KNOWN_CHAMBERS.get(self.config.name)
        if known is not None:
            outcome.record(len(complex_.interior) == known, f"{len(complex_.interior)} chambers, expected {known}")
        for chamber in complex_.interior:
            found = complex_.locate(chamber.witness)
            outcome.record(found is not None and found.id == chamber.id, f"witness of {chamber.label} not located")
        for wall in complex_.walls:
            outcome.record(bool(wall.pos or wall.neg), f"every vector lies on wall {wall.normal}")
        for crossing in complex_.crossings:
            if crossing.target_cell is None:
                continue
            a = complex_.cells[crossing.source_cell].signs
            b = complex_.cells[crossing.target_cell].signs
            differ = sum(1 for x, y in zip(a, b, strict=True) if x != y)
            outcome.record(differ == 1, f"crossing over wall {crossing.wall} flips {differ} signs")

    def check_jumps(self, outcome: SuiteOutcome):
        try:
            outcome.checks += self.solver.verify_jumps(self.solution)
        except JumpMismatchError as e:
            outcome.fail(str(e))

    def check_oracle(self, outcome: SuiteOutcome):
        complex_ = self.solution.complex
        query = CountQuery(self.config.vectors, self.config.certificate)
        rng = self.rng("oracle")
        wanted = self.size(constants.CLOSURE_POINTS)
        for chamber in complex_.interior:
            k = self.solution.partitions[chamber.id]
            points = closure_points(complex_, chamber, wanted, rng)
            outcome.record(len(points) >= wanted, f"{chamber.label}: {len(points)} closure points, expected {wanted}")
            for point in points:
                value = k.evaluate(point)
                brute = query.count(point)
                outcome.record(
                    value == brute and value >= 0 and value.denominator == 1,
                    f"{chamber.label} at {point}: {value} != {brute}",
                )

    def check_facets(self, outcome: SuiteOutcome):
        """On a facet of the cone, k agrees with the count of the vectors on the facet"""
        complex_ = self.solution.complex
        if self.config.rank < 2:
            return
        rng = self.rng("facets")
        for crossing in complex_.crossings:
            if crossing.target != EXTERIOR:
                continue
            wall = complex_.walls[crossing.wall]
            chamber = complex_.chamber(crossing.source)
            on_rays = [ray for ray in chamber.rays if pair(ray, wall.normal) == 0]
            on_vectors = [self.config.vectors[i] for i in wall.on]
            k = self.solution.partitions[chamber.id]
            for _ in range(self.size(constants.CLOSURE_POINTS) // 5 + 1):
                point = tuple(
                    sum(rng.randint(0, 3) * ray[i] for ray in on_rays) for i in range(self.config.rank)
                )
                if not complex_.closure_contains(chamber, point):
                    continue
                expected = brute_count(on_vectors, point, certificate=self.config.certificate)
                outcome.record(k.evaluate(point) == expected, f"{chamber.label} facet {wall.normal} at {point}")

    def check_period(self, outcome: SuiteOutcome):
        unimodular, period = unimodular_and_period(self.config)
        zero = tuple(Fraction(0) for _ in range(self.config.rank))
        outcome.record(unimodular == (self.shifts == [zero]), f"G = {self.shifts} but unimodular is {unimodular}")
        for chamber in self.solution.complex.interior:
            k = self.solution.partitions[chamber.id]
            outcome.record(period % k.period == 0, f"{chamber.label} period {k.period} does not divide {period}")
            if unimodular:
                outcome.record(k.is_polynomial(), f"{chamber.label} is not polynomial on a unimodular configuration")

    def check_top_degree(self, outcome: SuiteOutcome):
        degree = self.solution.degree
        for chamber in self.solution.complex.interior:
            v = self.solution.volumes[chamber.id]
            k = self.solution.partitions[chamber.id]
            outcome.record(v.is_homogeneous() and v.degree() == degree, f"{chamber.label} volume {v} of wrong degree")
            outcome.record(k.top_part(degree) == QuasiPoly.from_poly(v), f"{chamber.label} top part of k is not v")

    def check_todd(self, outcome: SuiteOutcome):
        for chamber in self.solution.complex.interior:
            v = self.solution.volumes[chamber.id]
            k = self.solution.partitions[chamber.id]
            outcome.record(todd_apply(self.config.vectors, self.shifts, v) == k, f"Todd operator on {chamber.label}")

    def check_todd_jumps(self, outcome: SuiteOutcome):
        for (wid, wall_chamber), ctx in sorted(self.solution.contexts.items()):
            outcome.record(
                todd_apply(self.config.vectors, self.shifts, ctx.volume) == ctx.partition,
                f"Todd operator on the jump across wall {ctx.wall.normal} at wall chamber {wall_chamber}",
            )

    def check_dilation(self, outcome: SuiteOutcome):
        complex_ = self.solution.complex
        _, period = unimodular_and_period(self.config)
        rng = self.rng("dilation")
        per_chamber = ceil(self.size(constants.DILATION_POINTS) / max(1, len(complex_.interior)))
        for chamber in complex_.interior:
            v = self.solution.volumes[chamber.id]
            for point in regular_points(complex_, chamber, per_chamber, rng):
                fitted = volume_dilation(self.config, point, period)
                outcome.record(fitted == v.evaluate(point), f"{chamber.label} at {point}: {fitted} != {v.evaluate(point)}")

    def check_differences(self, outcome: SuiteOutcome):
        self._brute_differences(outcome)
        if self.config.size <= DIFFERENCE_SOLVE_LIMIT and self.config.is_standard:
            self._chamber_differences(outcome)

    def _brute_differences(self, outcome: SuiteOutcome):
        vectors = self.config.vectors
        query = CountQuery(vectors, self.config.certificate)
        rng = self.rng("differences")
        for _ in range(self.size(constants.DIFFERENCE_TRIPLES)):
            index = rng.randrange(len(vectors))
            phi = vectors[index]
            rest = vectors[:index] + vectors[index + 1 :]
            weights = [rng.randint(0, 2) for _ in vectors]
            point = tuple(sum(w * v[i] for w, v in zip(weights, vectors, strict=True)) for i in range(self.config.rank))
            shifted = tuple(a - b for a, b in zip(point, phi, strict=True))
            if rest:
                expected = brute_count(rest, point, certificate=self.config.certificate)
            else:
                expected = 0 if any(point) else 1
            outcome.record(
                query.count(point) - query.count(shifted) == expected, f"D({phi}) k at {point} != k without {phi}"
            )

    def _chamber_differences(self, outcome: SuiteOutcome):
        vectors = self.config.vectors
        for index in sorted({vectors.index(v) for v in vectors}):
            phi = vectors[index]
            rest = vectors[:index] + vectors[index + 1 :]
            if len(rest) < self.config.rank or rank(rest) != self.config.rank:
                continue
            smaller = validate_config(rest, name=f"{self.config.name}-{index}")
            if not smaller.is_standard:
                continue
            sub = self.solver.solve(smaller)
            for chamber in self.solution.complex.interior:
                target = sub.complex.locate(chamber.witness)
                if target is None:
                    continue
                v = self.solution.volumes[chamber.id]
                k = self.solution.partitions[chamber.id]
                outcome.record(
                    v.derivative(phi) == sub.volumes[target.id],
                    f"d({phi}) v on {chamber.label} != v without {phi}",
                )
                outcome.record(
                    k.difference(phi) == sub.partitions[target.id],
                    f"D({phi}) k on {chamber.label} != k without {phi}",
                )

    def check_functionals(self, outcome: SuiteOutcome):
        for ctx in self.contexts():
            self._functional_properties(ctx, outcome)

    def _wall_points(self, ctx: JumpContext, count: int) -> List[Tuple[int, ...]]:
        basis = ctx.frame.basis
        r = len(ctx.form)
        points = []
        for coeffs in itertools.product(range(-2, 3), repeat=len(basis)):
            points.append(tuple(sum(c * b[i] for c, b in zip(coeffs, basis, strict=True)) for i in range(r)))
            if len(points) >= count:
                break
        return points

    def _functional_properties(self, ctx: JumpContext, outcome: SuiteOutcome):
        big_p = ctx.lifted_volume()
        big_q = ctx.lifted_partition()
        psis, form = ctx.psis, ctx.form
        label = f"wall {ctx.wall.normal} at wall chamber {ctx.wall_chamber}"

        if len(psis) > 1:
            for i, psi in enumerate(psis):
                rest = psis[:i] + psis[i + 1 :]
                outcome.record(ctx.volume.derivative(psi) == pol(big_p, rest, form), f"d({psi}) Pol on {label}")
                outcome.record(ctx.partition.difference(psi) == para(big_q, rest, form), f"D({psi}) Para on {label}")

        for b in ctx.frame.basis:
            outcome.record(pol(big_p.derivative(b), psis, form) == ctx.volume.derivative(b), f"d({b}) Pol on {label}")
            outcome.record(para(big_q.shift(b), psis, form) == ctx.partition.shift(b), f"shift {b} Para on {label}")

        for w in self._wall_points(ctx, 10):
            if len(psis) > 1:
                outcome.record(ctx.volume.evaluate(w) == 0, f"Pol on {label} does not vanish at {w}")
            else:
                restricted = big_p.evaluate(w) / pair(psis[0], form)
                outcome.record(ctx.volume.evaluate(w) == restricted, f"Pol restriction on {label} at {w}")
            expected = big_q.evaluate_scalar(w) if not ctx.negative else Fraction(0)
            outcome.record(ctx.partition.evaluate_scalar(w) == expected, f"Para restriction on {label} at {w}")

        scaled = [tuple(2 * x for x in psis[0])] + psis[1:]
        outcome.record(pol(big_p, scaled, form) == ctx.volume.scale(Fraction(1, 2)), f"scaling Pol on {label}")

        for b in ctx.frame.basis[:1]:
            r = len(form)
            shear = [[int(i == j) + b[i] * form[j] for j in range(r)] for i in range(r)]
            outcome.record(pol(big_p.substitute(shear), psis, form) == ctx.volume, f"extension of Pol on {label}")
            outcome.record(para(big_q.substitute(shear), psis, form) == ctx.partition, f"extension of Para on {label}")

        try:
            pol(big_p, psis, form, check_truncation=True)
            para(big_q, psis, form, check_truncation=True)
            outcome.record(True)
        except TruncationError as e:
            outcome.fail(f"truncation on {label}: {e}")

    def check_convolution(self, outcome: SuiteOutcome):
        count = self.size(constants.DIFFERENCE_TRIPLES)
        for ctx in self.contexts():
            big_q = ctx.lifted_partition()
            direction = int(pair(ctx.frame.complement, ctx.form))
            walls = self._wall_points(ctx, max(1, count // 5))
            for height in range(5):
                for w in walls:
                    point = tuple(x + height * direction * f for x, f in zip(w, ctx.frame.complement, strict=True))
                    expected = ctx.partition.evaluate_scalar(point)
                    outcome.record(
                        convolve_C(big_q, ctx.psis, ctx.form, point) == expected,
                        f"convolution on wall {ctx.wall.normal} at {point}",
                    )


def default_battery(seed: int) -> List[Tuple[VectorConfig, Sequence[str]]]:
    """Presets with every family, random configurations with the oracle families"""
    battery = [(preset(name), FAMILIES) for name in ("A2", "B2", "A3")]
    rng = random.Random(seed)
    for i in range(10):
        rank_ = 2 if i < 5 else 3
        size = rng.randint(rank_ + 1, 6)
        battery.append((random_config(rank_, size, rng), ("census", "jumps", "oracle", "top_degree")))
    return battery
