# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Ground truth that does not go through the residue formulas.

Everything here counts or sums over lattice points directly: brute-force
partition counts, the signed shifted counts K+ and their convolution with
a wall function, and volumes read off dilations of a point.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chambers import Chamber, ChamberComplex, VectorConfig
from .errors import DilationMismatchError, NotPointedError, WallVectorError
from .exactnum import Scalar, normalize
from .lattice import fm_feasible, split_lattice
from .models import EvalOutcome
from .polyalg import MultiPoly, QuasiPoly, pair

logger = logging.getLogger(__name__)

Vectors = Sequence[Sequence[int]]

# Rounds of closure point draws, doubling the ray weight range each round.
CLOSURE_ROUNDS = 6


def pointed_certificate(vectors: Vectors) -> Tuple[Fraction, ...]:
    """A rational x0 with <phi, x0> >= 1 for every vector"""
    n = len(vectors[0])
    point = fm_feasible([(tuple(v), 1) for v in vectors], n)
    if point is None:
        raise NotPointedError(f"vectors {[tuple(v) for v in vectors]} do not lie in an open half space")
    return tuple(point)


class CountQuery:
    """Counts non-negative integer solutions of sum t_i phi_i = a.

    Vectors are eliminated in decreasing order of <phi, x0>, so every loop
    runs over n <= <residual, x0> / <phi, x0>. The memo is keyed by
    (position, residual) and belongs to this query.
    """

    def __init__(self, vectors: Vectors, certificate: Optional[Sequence] = None):
        if not vectors:
            raise ValueError("counting needs at least one vector")
        cert = tuple(Fraction(x) for x in certificate) if certificate is not None else pointed_certificate(vectors)
        weighted = [(pair(v, cert), tuple(int(x) for x in v)) for v in vectors]
        if any(w <= 0 for w, _ in weighted):
            raise NotPointedError(f"certificate {cert} does not bound the vectors")
        weighted.sort(key=lambda item: (-item[0], item[1]))
        self.certificate = cert
        self.vectors = [v for _, v in weighted]
        self.weights = [w for w, _ in weighted]
        self._memo: Dict[Tuple[int, Tuple[int, ...]], int] = {}

    def count(self, point: Sequence[int]) -> int:
        values = tuple(Fraction(x) for x in point)
        if any(v.denominator != 1 for v in values):
            raise ValueError(f"partition counts are taken at integer points, got {tuple(point)}")
        return self._count(0, tuple(int(v) for v in values))

    def _count(self, position: int, residual: Tuple[int, ...]) -> int:
        if position == len(self.vectors):
            return 0 if any(residual) else 1
        key = (position, residual)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        budget = pair(residual, self.certificate)
        total = 0
        if budget >= 0:
            phi = self.vectors[position]
            n = 0
            current = residual
            while n * self.weights[position] <= budget:
                total += self._count(position + 1, current)
                current = tuple(x - y for x, y in zip(current, phi, strict=True))
                n += 1
        self._memo[key] = total
        return total


def brute_count(vectors: Union[VectorConfig, Vectors], point: Sequence[int], certificate=None) -> int:
    """k(Phi)(a) by direct enumeration"""
    if isinstance(vectors, VectorConfig):
        certificate = vectors.certificate if certificate is None else certificate
        vectors = vectors.vectors
    return CountQuery(vectors, certificate).count(point)


def _split_signs(psis: Vectors, form: Sequence[int]) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    positive, negative = [], []
    for psi in psis:
        value = pair(psi, form)
        if value == 0:
            raise WallVectorError(f"vector {tuple(psi)} lies in the wall of {tuple(form)}")
        (positive if value > 0 else negative).append(tuple(psi))
    return positive, negative


def kplus(psis: Vectors, form: Sequence[int], point: Sequence[int]) -> int:
    """(-1)^|Psi-| k(R+)(a + kappa-), with R+ = Psi+ and -Psi- and kappa- the sum of Psi-"""
    positive, negative = _split_signs(psis, form)
    r = len(form)
    kappa = tuple(sum(v[i] for v in negative) for i in range(r))
    reflected = positive + [tuple(-x for x in v) for v in negative]
    target = tuple(int(a) + k for a, k in zip(point, kappa, strict=True))
    sign = -1 if len(negative) % 2 else 1
    return sign * brute_count(reflected, target, certificate=form)


def _frame_value(q: Union[QuasiPoly, MultiPoly], coordinates: List[List[int]], point: Tuple[int, ...]) -> Scalar:
    if q.rank != len(point):
        point = tuple(sum(row[j] * point[j] for j in range(len(point))) for row in coordinates)
    if isinstance(q, MultiPoly):
        return q.evaluate(point)
    return q.evaluate_scalar(point)


def convolve_C(q: Union[QuasiPoly, MultiPoly], psis: Vectors, form: Sequence[int], point: Sequence[int]) -> Scalar:
    """sum over w in the wall lattice of q(w) K+(Psi)(a - w)

    Only w = a + kappa- - sum n_j rho_j with sum n_j <rho_j, E> = <a + kappa-, E>
    contribute, one term per tuple n. ``q`` lives on the wall frame of
    ``form`` or on the ambient space.
    """
    positive, negative = _split_signs(psis, form)
    r = len(form)
    reflected = positive + [tuple(-x for x in v) for v in negative]
    base = tuple(int(a) + sum(v[i] for v in negative) for i, a in enumerate(point))
    height = int(pair(base, form))
    if height < 0:
        return Fraction(0)
    coordinates = split_lattice(form).coordinates if q.rank == r - 1 else []
    weights = [int(pair(rho, form)) for rho in reflected]
    total: Scalar = Fraction(0)

    def walk(position: int, remaining: int, current: Tuple[int, ...]):
        nonlocal total
        if position == len(reflected):
            if remaining == 0:
                total = total + _frame_value(q, coordinates, current)
            return
        rho, weight = reflected[position], weights[position]
        n = 0
        while n * weight <= remaining:
            walk(position + 1, remaining - n * weight, tuple(c - n * x for c, x in zip(current, rho, strict=True)))
            n += 1

    walk(0, height, base)
    if len(negative) % 2:
        total = -total
    return normalize(total)


def _leading_coefficient(xs: Sequence[int], ys: Sequence[int]) -> Fraction:
    """Top coefficient of the Lagrange interpolant through (xs, ys)"""
    total = Fraction(0)
    for j, (xj, yj) in enumerate(zip(xs, ys, strict=True)):
        denominator = 1
        for i, xi in enumerate(xs):
            if i != j:
                denominator *= xj - xi
        total += Fraction(yj, denominator)
    return total


def volume_dilation(config: VectorConfig, point: Sequence[int], period: int) -> Fraction:
    """v(Phi, c)(a) as the top coefficient of m -> k(Phi)(m a) on each class m mod period"""
    degree = config.size - config.rank
    query = CountQuery(config.vectors, config.certificate)
    leading = None
    for c in range(1, period + 1):
        multiples = [c + period * j for j in range(degree + 1)]
        counts = [query.count(tuple(m * int(x) for x in point)) for m in multiples]
        value = _leading_coefficient(multiples, counts)
        if leading is None:
            leading = value
        elif value != leading:
            raise DilationMismatchError(f"classes 1 and {c} mod {period} disagree at {tuple(point)}: {leading} != {value}")
    logger.debug("dilation volume at %s: %s", tuple(point), leading)
    return leading


def closure_points(
    complex_: ChamberComplex, chamber: Chamber, count: int, rng: random.Random, spread: int = 3
) -> List[Tuple[int, ...]]:
    """Distinct integer points in the closure of an interior chamber.

    The ray weights range over 0..spread; spread doubles whenever a round of
    draws stalls, so fewer than count points come back only after
    CLOSURE_ROUNDS rounds.
    """
    r = complex_.config.rank
    points = {tuple([0] * r)}
    for _ in range(CLOSURE_ROUNDS):
        attempts = 0
        while len(points) < count and attempts < 40 * count:
            attempts += 1
            point = [0] * r
            for ray in chamber.rays:
                weight = rng.randint(0, spread)
                point = [p + weight * x for p, x in zip(point, ray, strict=True)]
            if rng.random() < 0.5:
                k = rng.randrange(r)
                point[k] += rng.choice((-1, 1))
            point = tuple(point)
            if complex_.closure_contains(chamber, point):
                points.add(point)
        if len(points) >= count:
            break
        spread *= 2
        logger.debug("%s: %d of %d closure points, spread %d", chamber.label, len(points), count, spread)
    return sorted(points)


def regular_points(
    complex_: ChamberComplex, chamber: Chamber, count: int, rng: random.Random, spread: int = 2
) -> List[Tuple[int, ...]]:
    """Distinct integer points strictly inside an interior chamber"""
    r = complex_.config.rank
    points = set()
    attempts = 0
    while len(points) < count and attempts < 40 * count:
        attempts += 1
        point = [0] * r
        for ray in chamber.rays:
            weight = rng.randint(1, spread)
            point = [p + weight * x for p, x in zip(point, ray, strict=True)]
        point = tuple(point)
        found = complex_.locate(point)
        if found is not None and found.id == chamber.id:
            points.add(point)
    return sorted(points)


def compare_point(config: VectorConfig, point: Sequence[int], solution=None) -> EvalOutcome:
    """The brute-force count at an ambient integer point, next to the solved k(Phi)(a) when a solution is given"""
    working = config.to_working(point)
    outcome = EvalOutcome(point=tuple(int(x) for x in point), chamber="outside lattice" if working is None else "")
    if solution is not None:
        chamber, value = solution.evaluate(point)
        if chamber is not None:
            outcome.chamber = chamber.label
        outcome.value = value
    outcome.brute = brute_count(config, working) if working is not None else 0
    return outcome
