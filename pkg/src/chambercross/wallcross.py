# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Residue functionals, jumps across walls and the chamber sweep.

``pol``, ``par`` and ``para`` take their first argument either on the wall
frame (rank r-1, extended with no dependence on the complement coordinate)
or already on the ambient space (rank r).

The sweep starts at the exterior chamber with v = k = 0 and crosses one
wall at a time. The data on a wall comes from a recursive sweep of the
on-wall configuration in its own lattice coordinates, pulled back to the
wall frame. Rank zero is the base case with v = k = 1.
"""

import itertools
import logging
import threading
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chambers import (
    EXTERIOR,
    Chamber,
    ChamberComplex,
    Crossing,
    VectorConfig,
    Wall,
    WallFrame,
    chamber_complex,
    wall_frame,
)
from .errors import (
    ConsistencyError,
    JumpMismatchError,
    RankMismatchError,
    TruncationError,
    WallVectorError,
)
from .exactnum import exp2pi
from .jets import (
    jet_exp_linear,
    jet_geometric_factor,
    jet_inverse_linear,
    residue_apply,
    todd_coefficients,
    truncation_orders,
)
from .lattice import mat_vec, rank, smith_normal_form, split_lattice
from .polyalg import MultiPoly, QuasiPoly, diff_apply, pair

logger = logging.getLogger(__name__)

Form = Sequence[int]


def _form(form: Form) -> Tuple[int, ...]:
    values = tuple(Fraction(x) for x in form)
    if any(v.denominator != 1 for v in values):
        raise ValueError(f"wall forms are integral, got {tuple(form)}")
    return tuple(int(v) for v in values)


def _check_psis(psis: Sequence[Sequence[int]], form: Tuple[int, ...]):
    for psi in psis:
        if len(psi) != len(form):
            raise RankMismatchError(f"vector {tuple(psi)} and form {form} have different ranks")
        if pair(psi, form) == 0:
            raise WallVectorError(f"vector {tuple(psi)} lies in the wall of {form}")


def extend_poly(p: MultiPoly, form: Form) -> MultiPoly:
    """Lift a polynomial on the wall frame to the ambient space"""
    form = _form(form)
    if p.rank == len(form):
        return p
    if p.rank != len(form) - 1:
        raise RankMismatchError(f"polynomial of rank {p.rank} for a wall in rank {len(form)}")
    return p.substitute(split_lattice(form).coordinates, columns=len(form))


def extend_quasi(q: Union[QuasiPoly, MultiPoly], form: Form) -> QuasiPoly:
    """Lift a quasi-polynomial on the wall frame, shifts lifted with zero complement component"""
    form = _form(form)
    if isinstance(q, MultiPoly):
        q = QuasiPoly.from_poly(q)
    if q.rank == len(form):
        return q
    if q.rank != len(form) - 1:
        raise RankMismatchError(f"quasi-polynomial of rank {q.rank} for a wall in rank {len(form)}")
    return q.substitute(split_lattice(form).coordinates, columns=len(form))


def _residue(poly: MultiPoly, form, make_factors, check_truncation: bool) -> MultiPoly:
    order, high = truncation_orders(poly.degree(), len(make_factors))
    result = residue_apply(poly, [f(order, high) for f in make_factors], jet_exp_linear(form, order, high))
    if check_truncation:
        again = residue_apply(poly, [f(order + 1, high + 1) for f in make_factors], jet_exp_linear(form, order + 1, high + 1))
        if again != result:
            raise TruncationError(f"residue changed when truncation was raised to D={order + 1}, H={high + 1}")
    return result


def pol(p: MultiPoly, psis: Sequence[Sequence[int]], form: Form, check_truncation: bool = False) -> MultiPoly:
    """Res_z P(d/dx) e^<a, x + zE> / prod <psi, x + zE> at x = 0"""
    form = _form(form)
    _check_psis(psis, form)
    poly = extend_poly(p, form)
    factors = [lambda order, high, psi=psi: jet_inverse_linear(psi, form, order) for psi in psis]
    return _residue(poly, form, factors, check_truncation)


def par(p: MultiPoly, psis: Sequence[Sequence[int]], form: Form, check_truncation: bool = False) -> MultiPoly:
    """Res_z P(d/dx) e^<a, x + zE> / prod (1 - e^-<psi, x + zE>) at x = 0"""
    form = _form(form)
    _check_psis(psis, form)
    poly = extend_poly(p, form)
    factors = [
        lambda order, high, psi=psi: jet_geometric_factor(Fraction(1), psi, form, order, high) for psi in psis
    ]
    return _residue(poly, form, factors, check_truncation)


def feasible_shifts(shift: Sequence[Fraction], psis: Sequence[Sequence[int]], form: Tuple[int, ...]) -> List[Tuple]:
    """Shifts g = y + G E that make at least one factor of Para singular at z = 0"""
    multiples = set()
    for psi in psis:
        d = int(pair(psi, form))
        c = pair(psi, shift)
        for n in range(abs(d)):
            multiples.add(((n - c) / d) % 1)
    shifts = set()
    for m in multiples:
        shifts.add(tuple((Fraction(y) + m * e) % 1 for y, e in zip(shift, form, strict=True)))
    return sorted(shifts)


def para(
    q: Union[QuasiPoly, MultiPoly],
    psis: Sequence[Sequence[int]],
    form: Form,
    check_truncation: bool = False,
) -> QuasiPoly:
    """Sum over feasible g of e_g(a) Res_z Q_y(d/dx) e^<a, x + zE> / prod (1 - zeta_psi e^-<psi, x + zE>)"""
    form = _form(form)
    _check_psis(psis, form)
    quasi = extend_quasi(q, form)
    r = len(form)
    result = QuasiPoly.zero(r)
    for y, poly in quasi.sorted_shifts():
        for g in feasible_shifts(y, psis, form):
            factors = [
                lambda order, high, psi=psi, zeta=exp2pi(-pair(psi, g)): jet_geometric_factor(
                    zeta, psi, form, order, high
                )
                for psi in psis
            ]
            value = _residue(poly, form, factors, check_truncation)
            if value:
                result = result + QuasiPoly.character(g, value)
    return result


@dataclass
class JumpContext:
    """Everything needed to cross one wall at one wall chamber.

    ``form`` is the wall normal oriented so that some vector off the wall
    pairs positively with it; ``volume`` and ``partition`` are the jumps
    v(c+) - v(c-) and k(c+) - k(c-) between the chambers on the positive
    and negative side of ``form``.
    """

    wall: Wall
    form: Tuple[int, ...]
    psis: List[Tuple[int, ...]]
    frame: WallFrame
    wall_chamber: int
    v12: MultiPoly
    k12: QuasiPoly
    volume: Optional[MultiPoly] = None
    partition: Optional[QuasiPoly] = None

    @property
    def positive(self) -> List[Tuple[int, ...]]:
        return [psi for psi in self.psis if pair(psi, self.form) > 0]

    @property
    def negative(self) -> List[Tuple[int, ...]]:
        return [psi for psi in self.psis if pair(psi, self.form) < 0]

    def lifted_volume(self) -> MultiPoly:
        """v12 on the ambient space, constant along the complement F"""
        return self.v12.substitute(self.frame.coordinates, columns=len(self.form))

    def lifted_partition(self) -> QuasiPoly:
        return self.k12.substitute(self.frame.coordinates, columns=len(self.form))


def jump_volume(ctx: JumpContext, check_truncation: bool = False) -> MultiPoly:
    """v(c+) - v(c-) across the wall of ctx"""
    if ctx.volume is None:
        ctx.volume = pol(ctx.lifted_volume(), ctx.psis, ctx.form, check_truncation)
    return ctx.volume


def jump_partition(ctx: JumpContext, check_truncation: bool = False) -> QuasiPoly:
    """k(c+) - k(c-) across the wall of ctx"""
    if ctx.partition is None:
        ctx.partition = para(ctx.lifted_partition(), ctx.psis, ctx.form, check_truncation)
    return ctx.partition


@dataclass
class ChamberSolution:
    """Volume polynomial and partition quasi-polynomial of every chamber"""

    complex: ChamberComplex
    volumes: Dict[int, MultiPoly]
    partitions: Dict[int, QuasiPoly]
    provenance: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    contexts: Dict[Tuple[int, int], JumpContext] = field(default_factory=dict)

    @property
    def config(self) -> VectorConfig:
        return self.complex.config

    @property
    def degree(self) -> int:
        return self.config.size - self.config.rank

    def volume(self, cid: int) -> MultiPoly:
        return self.volumes[cid]

    def partition(self, cid: int) -> QuasiPoly:
        return self.partitions[cid]

    def evaluate(self, point: Sequence[int]) -> Tuple[Optional[Chamber], Fraction]:
        """Closure chamber and k(Phi)(point) for an ambient integer point"""
        working = self.config.to_working(point)
        if working is None:
            return None, Fraction(0)
        chamber = self.complex.closure_chamber(working)
        if chamber.is_exterior:
            return chamber, Fraction(0)
        return chamber, self.partitions[chamber.id].evaluate(working)


class Solver:
    """Sweeps configurations, memoizing solutions by working vectors.

    A cached solution is shared by every configuration with the same working
    vectors; it is handed back bound to the caller's configuration, since
    ``evaluate`` maps ambient points through that configuration's lattice.
    Each key has its own lock so one configuration is swept at most once.
    """

    def __init__(self, check_all_jumps: bool = True, check_truncation: bool = False):
        self.check_all_jumps = check_all_jumps
        self.check_truncation = check_truncation
        self._lock = threading.Lock()
        self._key_locks: Dict[Tuple[Tuple[int, ...], ...], threading.Lock] = {}
        self._solutions: Dict[Tuple[Tuple[int, ...], ...], ChamberSolution] = {}

    def solve(self, config: VectorConfig) -> ChamberSolution:
        key = tuple(tuple(v) for v in config.vectors)
        with self._lock:
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        # wall configurations have lower rank, so nested solves never wait on a held key
        with key_lock:
            cached = self._solutions.get(key)
            if cached is None:
                cached = self._solutions[key] = self._sweep(config)
        if cached.config == config:
            return cached
        return replace(cached, complex=replace(cached.complex, config=config))

    def context(self, solution: ChamberSolution, crossing: Crossing, frames: Dict[int, WallFrame]) -> JumpContext:
        """Wall data for a crossing, shared by every crossing through the same wall chamber"""
        complex_ = solution.complex
        config = complex_.config
        wall = complex_.walls[crossing.wall]
        frame = frames.get(wall.id)
        if frame is None:
            frame = frames[wall.id] = wall_frame(config, wall)
        r = config.rank
        if frame.sub is None:
            if (wall.id, 0) in solution.contexts:
                return solution.contexts[(wall.id, 0)]
            wall_chamber = 0
            v12 = MultiPoly.constant(0, 1)
            k12 = QuasiPoly.constant(0, 1)
        else:
            sub_solution = self.solve(frame.sub)
            matrix = frame.sub_matrix()
            local = mat_vec(matrix, mat_vec(frame.coordinates, crossing.witness))
            found = sub_solution.complex.locate(local)
            if found is None or found.is_exterior:
                raise ConsistencyError(f"facet witness {crossing.witness} of wall {wall.normal} is not in a wall chamber")
            wall_chamber = found.id
            if (wall.id, wall_chamber) in solution.contexts:
                return solution.contexts[(wall.id, wall_chamber)]
            v12 = sub_solution.volumes[wall_chamber].substitute(matrix, columns=r - 1).scale(Fraction(1, frame.index))
            k12 = sub_solution.partitions[wall_chamber].substitute(matrix, columns=r - 1)
            if frame.index > 1:
                weight = MultiPoly.constant(r - 1, Fraction(1, frame.index))
                k12 = k12 * QuasiPoly(r - 1, {chi: weight for chi in frame.characters})
        orientation = 1 if wall.pos else -1
        ctx = JumpContext(
            wall=wall,
            form=tuple(orientation * e for e in wall.normal),
            psis=[config.vectors[i] for i in wall.off],
            frame=frame,
            wall_chamber=wall_chamber,
            v12=v12,
            k12=k12,
        )
        jump_volume(ctx, self.check_truncation)
        jump_partition(ctx, self.check_truncation)
        logger.debug("wall %s at wall chamber %d: volume jump %s", wall.normal, wall_chamber, ctx.volume)
        solution.contexts[(wall.id, wall_chamber)] = ctx
        return ctx

    def _side(self, complex_: ChamberComplex, ctx: JumpContext, crossing: Crossing, chamber: int) -> int:
        """Sign of chamber relative to the oriented form of ctx"""
        source_sign = complex_.cells[crossing.source_cell].signs[crossing.wall]
        orientation = 1 if tuple(ctx.form) == tuple(ctx.wall.normal) else -1
        side = source_sign * orientation
        return side if chamber == crossing.source else -side

    def _sweep(self, config: VectorConfig) -> ChamberSolution:
        complex_ = chamber_complex(config)
        r = config.rank
        solution = ChamberSolution(
            complex=complex_,
            volumes={EXTERIOR: MultiPoly.zero(r)},
            partitions={EXTERIOR: QuasiPoly.zero(r)},
        )
        frames: Dict[int, WallFrame] = {}
        incident: Dict[int, List[Crossing]] = {cid: [] for cid in complex_.chambers}
        for crossing in complex_.crossings:
            incident[crossing.source].append(crossing)
            incident[crossing.target].append(crossing)

        queue = deque([EXTERIOR])
        while queue:
            known = queue.popleft()
            for crossing in incident[known]:
                new = crossing.target if crossing.source == known else crossing.source
                if new in solution.volumes:
                    continue
                ctx = self.context(solution, crossing, frames)
                if self._side(complex_, ctx, crossing, new) > 0:
                    solution.volumes[new] = solution.volumes[known] + ctx.volume
                    solution.partitions[new] = solution.partitions[known] + ctx.partition
                else:
                    solution.volumes[new] = solution.volumes[known] - ctx.volume
                    solution.partitions[new] = solution.partitions[known] - ctx.partition
                solution.provenance[new] = (known, crossing.wall)
                queue.append(new)

        missing = [c.id for c in complex_.interior if c.id not in solution.volumes]
        if missing:
            raise ConsistencyError(f"chambers {missing} of {config.name} were not reached from the exterior")
        if self.check_all_jumps:
            self.verify_jumps(solution, frames)
        logger.info("solved %s: %d chambers", config.name, len(complex_.interior))
        return solution

    def verify_jumps(self, solution: ChamberSolution, frames: Optional[Dict[int, WallFrame]] = None) -> int:
        """Check the jump formula on every crossing; returns the number checked"""
        frames = frames if frames is not None else {}
        complex_ = solution.complex
        for crossing in complex_.crossings:
            ctx = self.context(solution, crossing, frames)
            if self._side(complex_, ctx, crossing, crossing.source) > 0:
                pos, neg = crossing.source, crossing.target
            else:
                pos, neg = crossing.target, crossing.source
            if solution.volumes[pos] - solution.volumes[neg] != ctx.volume:
                raise JumpMismatchError(f"volume jump across wall {ctx.wall.normal} between c{pos} and c{neg}")
            if solution.partitions[pos] - solution.partitions[neg] != ctx.partition:
                raise JumpMismatchError(f"partition jump across wall {ctx.wall.normal} between c{pos} and c{neg}")
        return len(complex_.crossings)


def sweep(config: VectorConfig, check_all_jumps: bool = True, check_truncation: bool = False) -> ChamberSolution:
    """Volume and partition functions of every chamber of config"""
    return Solver(check_all_jumps=check_all_jumps, check_truncation=check_truncation).solve(config)


def compute_G(vectors: Sequence[Sequence[int]]) -> List[Tuple[Fraction, ...]]:
    """Shifts g mod 1 whose integral vectors <phi, g> in Z span the space"""
    vectors = [tuple(v) for v in vectors]
    r = len(vectors[0])
    shifts = set()
    for sigma in itertools.combinations(vectors, r):
        if rank(sigma) != r:
            continue
        smith = smith_normal_form([list(v) for v in sigma])
        right, diagonal = smith.right, smith.diagonal
        for n in itertools.product(*(range(s) for s in diagonal)):
            g = tuple(sum((Fraction(right[j][i] * n[i], diagonal[i]) for i in range(r)), Fraction(0)) % 1 for j in range(r))
            shifts.add(g)
    result = []
    for g in sorted(shifts):
        integral = [v for v in vectors if pair(v, g).denominator == 1]
        if integral and rank(integral) == r:
            result.append(g)
    return result


def _truncate(poly: MultiPoly, degree: int) -> MultiPoly:
    return MultiPoly(poly.rank, {e: c for e, c in poly.terms.items() if sum(e) <= degree})


def todd_operator(vectors: Sequence[Sequence[int]], shift: Sequence[Fraction], degree: int) -> MultiPoly:
    """prod_phi Todd(e_g(phi), d(phi)) as a polynomial in d, truncated at degree"""
    r = len(shift)
    operator = MultiPoly.constant(r, 1)
    for phi in vectors:
        coeffs = todd_coefficients(exp2pi(pair(shift, phi)), degree)
        direction = MultiPoly.linear([Fraction(x) for x in phi])
        series = MultiPoly.zero(r)
        power = MultiPoly.constant(r, 1)
        for c in coeffs:
            if c:
                series = series + power.scale(c)
            power = power * direction
        operator = _truncate(operator * series, degree)
    return operator


def todd_apply(vectors: Sequence[Sequence[int]], shifts: Sequence[Sequence[Fraction]], v: MultiPoly) -> QuasiPoly:
    """sum_g e_g(a) Todd(g, Phi, d) v"""
    result = QuasiPoly.zero(v.rank)
    degree = v.degree()
    if degree < 0:
        return result
    for g in shifts:
        value = diff_apply(todd_operator(vectors, g, degree), v)
        if value:
            result = result + QuasiPoly.character(g, value)
    return result


def _nice(r: int, functional) -> MultiPoly:
    if r < 1:
        raise ValueError(f"A_r needs r >= 1, got {r}")
    poly = MultiPoly.constant(1, 1)
    for n in range(2, r + 1):
        first = tuple(int(k == 0) for k in range(n))
        psis = [tuple(int(k == 0) - int(k == j) for k in range(n)) for j in range(1, n)] + [first]
        lift = [[int(k == i + 1) for k in range(n)] for i in range(n - 1)]
        poly = functional(poly.substitute(lift), psis, first)
        logger.debug("A_%d nice chamber: degree %d, %d terms", n, poly.degree(), len(poly.terms))
    return poly


def nice_chamber_partition(r: int) -> MultiPoly:
    """k(A_r) on the chamber a_i > 0, by repeated jumps from the exterior"""
    return _nice(r, par)


def nice_chamber_volume(r: int) -> MultiPoly:
    """v(A_r) on the chamber a_i > 0, by repeated jumps from the exterior"""
    return _nice(r, pol)

