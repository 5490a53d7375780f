# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Configurations, walls, chambers and wall frames.

Everything here works in the working coordinates of a configuration, the
coordinates of a basis of the lattice Z Phi. When Z Phi is already Z^n the
working coordinates are the input coordinates.

Chambers are found in two steps. A breadth first walk over sign vectors
finds the cells of the wall arrangement inside the cone. Two cells that
share a facet lying outside the cone of the vectors on that wall are in
the same chamber and get merged.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    ConsistencyError,
    InvalidConfigError,
    NotPointedError,
    RankMismatchError,
    ZeroVectorError,
)
from .lattice import (
    LatticeSplit,
    SmithForm,
    determinant,
    fm_feasible,
    hyperplane_normal,
    inverse,
    kernel_basis,
    mat_vec,
    primitive,
    smith_normal_form,
    split_lattice,
    to_ints,
    transpose,
)
from .polyalg import pair

logger = logging.getLogger(__name__)

EXTERIOR = 0

IntVector = Tuple[int, ...]
Point = Tuple[Fraction, ...]


def _sign(value) -> int:
    return (value > 0) - (value < 0)


@dataclass
class VectorConfig:
    """A validated, pointed configuration of integer vectors.

    ``vectors`` are the working coordinates of ``original`` in the lattice
    basis ``basis`` (ambient columns). ``certificate`` is a rational x0 with
    <phi, x0> >= 1 for every working vector.
    """

    name: str
    original: List[IntVector]
    vectors: List[IntVector]
    basis: List[IntVector]
    certificate: Point
    smith: SmithForm

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def ambient_rank(self) -> int:
        return len(self.original[0])

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def is_standard(self) -> bool:
        """True when the working coordinates are the input coordinates"""
        return self.vectors == self.original

    @property
    def index(self) -> int:
        """Index of Z Phi in the lattice of its span"""
        value = 1
        for s in self.smith.diagonal[: self.rank]:
            value *= s
        return value

    def to_working(self, point: Sequence, integral: bool = True) -> Optional[Tuple]:
        """Working coordinates of an ambient point, None when it is not in Z Phi (or its span)"""
        if len(point) != self.ambient_rank:
            raise RankMismatchError(f"point {tuple(point)} does not have {self.ambient_rank} coordinates")
        if self.is_standard:
            values = tuple(Fraction(x) for x in point)
        else:
            image = mat_vec(self.smith.left, point)
            if any(image[self.rank :]):
                return None
            values = tuple(image[i] / self.smith.diagonal[i] for i in range(self.rank))
        if integral:
            if any(v.denominator != 1 for v in values):
                return None
            return tuple(int(v) for v in values)
        return values

    def to_ambient(self, point: Sequence) -> Point:
        if self.is_standard:
            return tuple(Fraction(x) for x in point)
        columns = transpose([list(b) for b in self.basis])
        return tuple(mat_vec(columns, point))

    def basis_matrix(self) -> List[List[int]]:
        """Matrix whose columns are the lattice basis"""
        return transpose([list(b) for b in self.basis], self.ambient_rank)

    def as_dict(self):
        return {
            "name": self.name,
            "rank": self.rank,
            "vectors": [list(v) for v in self.original],
            "working_vectors": [list(v) for v in self.vectors],
            "basis": [list(b) for b in self.basis],
        }


def validate_config(rows: Sequence[Sequence[int]], name: str = "") -> VectorConfig:
    """Check a list of integer vectors and rewrite it in a basis of Z Phi"""
    if not rows:
        raise InvalidConfigError("a configuration needs at least one vector")
    try:
        vectors = [tuple(to_ints(row)) for row in rows]
    except (TypeError, ValueError) as e:
        raise InvalidConfigError(f"configuration entries must be integers: {e}") from e
    n = len(vectors[0])
    if n == 0:
        raise InvalidConfigError("configuration vectors need at least one coordinate")
    for v in vectors:
        if len(v) != n:
            raise RankMismatchError(f"vector {v} does not have {n} coordinates")
        if not any(v):
            raise ZeroVectorError(f"configuration {name or vectors} contains the zero vector")

    certificate = fm_feasible([(v, 1) for v in vectors], n)
    if certificate is None:
        raise NotPointedError(f"configuration {name or vectors} does not lie in an open half space")

    columns = transpose([list(v) for v in vectors])
    smith = smith_normal_form(columns)
    rank = smith.rank
    if rank == n and all(s == 1 for s in smith.diagonal[:rank]):
        logger.debug("configuration %s is saturated in Z^%d", name, n)
        return VectorConfig(
            name=name,
            original=vectors,
            vectors=list(vectors),
            basis=[tuple(int(i == j) for j in range(n)) for i in range(n)],
            certificate=tuple(certificate),
            smith=smith,
        )

    left_inv = [to_ints(row) for row in inverse(smith.left)]
    basis = [tuple(smith.diagonal[i] * left_inv[k][i] for k in range(n)) for i in range(rank)]
    image = [[sum(smith.left[i][k] * columns[k][j] for k in range(n)) for j in range(len(vectors))] for i in range(rank)]
    working = [tuple(image[i][j] // smith.diagonal[i] for i in range(rank)) for j in range(len(vectors))]
    cert = tuple(pair(b, certificate) for b in basis)
    logger.info("configuration %s rewritten in a basis of Z Phi: rank %d, index %s", name, rank, smith.diagonal[:rank])
    return VectorConfig(
        name=name,
        original=vectors,
        vectors=working,
        basis=basis,
        certificate=cert,
        smith=smith,
    )


@dataclass
class Wall:
    """A hyperplane spanned by vectors of the configuration"""

    id: int
    normal: IntVector
    on: List[int]
    pos: List[int]
    neg: List[int]

    @property
    def is_facet(self) -> bool:
        """All vectors lie weakly on one side, so the wall bounds the cone"""
        return not self.pos or not self.neg

    @property
    def side(self) -> int:
        """Sign of the vectors off the wall for a facet wall"""
        return 1 if self.pos else -1

    @property
    def off(self) -> List[int]:
        return sorted(self.pos + self.neg)

    def as_dict(self):
        return {"id": self.id, "normal": list(self.normal), "on_wall": list(self.on)}


def _partition(config: VectorConfig, normal: IntVector) -> Tuple[List[int], List[int], List[int]]:
    on, pos, neg = [], [], []
    for i, v in enumerate(config.vectors):
        value = pair(normal, v)
        (on if value == 0 else pos if value > 0 else neg).append(i)
    return on, pos, neg


def enumerate_walls(config: VectorConfig) -> List[Wall]:
    """Every hyperplane spanned by r-1 independent vectors, deduplicated up to sign"""
    r = config.rank
    if r == 1:
        normal = (1,)
        on, pos, neg = _partition(config, normal)
        return [Wall(0, normal, on, pos, neg)]
    normals: List[IntVector] = []
    seen = set()
    for subset in itertools.combinations(config.vectors, r - 1):
        normal = hyperplane_normal(subset, r)
        if normal is None or normal in seen:
            continue
        seen.add(normal)
        normals.append(normal)
    walls = []
    for i, normal in enumerate(normals):
        on, pos, neg = _partition(config, normal)
        walls.append(Wall(i, normal, on, pos, neg))
    logger.debug("configuration %s has %d walls", config.name, len(walls))
    return walls


@dataclass
class Cell:
    """A region of the wall arrangement inside the cone"""

    index: int
    signs: Tuple[int, ...]
    witness: Point
    chamber: int = 0


@dataclass
class Crossing:
    """A facet between two cells of different chambers"""

    wall: int
    source: int
    target: int
    source_cell: int
    target_cell: Optional[int]
    witness: Point


@dataclass
class Chamber:
    """A chamber: one or more cells with a shared witness and adjacency"""

    id: int
    cells: List[int] = field(default_factory=list)
    signs: List[Tuple[int, ...]] = field(default_factory=list)
    witness: Optional[Point] = None
    rays: List[IntVector] = field(default_factory=list)
    adjacency: List[Tuple[int, int]] = field(default_factory=list)
    is_exterior: bool = False

    @property
    def label(self) -> str:
        return "exterior" if self.is_exterior else f"c{self.id}"


@dataclass
class ChamberComplex:
    """Walls, cells, chambers and the crossings between chambers"""

    config: VectorConfig
    walls: List[Wall]
    cells: List[Cell]
    chambers: Dict[int, Chamber]
    crossings: List[Crossing]

    @property
    def interior(self) -> List[Chamber]:
        return [c for cid, c in sorted(self.chambers.items()) if cid != EXTERIOR]

    @property
    def exterior(self) -> Chamber:
        return self.chambers[EXTERIOR]

    def chamber(self, cid: int) -> Chamber:
        return self.chambers[cid]

    def pairings(self, point: Sequence) -> List[Fraction]:
        return [pair(w.normal, point) for w in self.walls]

    def in_open_cone(self, point: Sequence) -> bool:
        return all(_sign(pair(w.normal, point)) == w.side for w in self.walls if w.is_facet)

    def closure_contains(self, chamber: Chamber, point: Sequence) -> bool:
        """Whether point lies in the closure of an interior chamber"""
        values = self.pairings(point)
        for signs in chamber.signs:
            if all(s * v >= 0 for s, v in zip(signs, values, strict=True)):
                return True
        return False

    def locate(self, point: Sequence) -> Optional[Chamber]:
        """The chamber containing point, the exterior, or None on a boundary"""
        if len(point) != self.config.rank:
            raise RankMismatchError(f"point {tuple(point)} does not have rank {self.config.rank}")
        values = self.pairings(point)
        if all(values):
            signs = tuple(_sign(v) for v in values)
            for cell in self.cells:
                if cell.signs == signs:
                    return self.chambers[cell.chamber]
            return self.exterior
        owners = {c.id for c in self.interior if self.closure_contains(c, point)}
        if len(owners) == 1 and self.in_open_cone(point):
            return self.chambers[owners.pop()]
        return None

    def closure_chamber(self, point: Sequence) -> Chamber:
        """Lowest id interior chamber whose closure contains point, else the exterior"""
        for chamber in self.interior:
            if self.closure_contains(chamber, point):
                return chamber
        return self.exterior

    def as_dict(self):
        return {
            "walls": [w.as_dict() for w in self.walls],
            "chambers": [
                {
                    "id": c.id,
                    "rays": [list(r) for r in c.rays],
                    "witness": [str(x) for x in c.witness],
                    "adjacency": [list(a) for a in c.adjacency],
                }
                for c in self.interior
            ],
        }


def _regular_start(config: VectorConfig, walls: List[Wall]) -> Point:
    r = config.rank
    base = [sum((Fraction(v[i]) for v in config.vectors), Fraction(0)) for i in range(r)]
    eps = Fraction(1, 2)
    for _ in range(128):
        point = tuple(base[i] + eps ** (i + 1) for i in range(r))
        values = [pair(w.normal, point) for w in walls]
        if all(values) and all(_sign(v) == w.side for v, w in zip(values, walls, strict=True) if w.is_facet):
            return point
        eps /= 2
    raise ConsistencyError(f"no regular starting point found for {config.name}")


def _facet_witness(walls: List[Wall], signs: Tuple[int, ...], index: int, r: int) -> Optional[Point]:
    inequalities = [(tuple(s * x for x in w.normal), 1) for w, s in zip(walls, signs, strict=True) if w.id != index]
    point = fm_feasible(inequalities, r, equalities=[(walls[index].normal, 0)])
    return tuple(point) if point is not None else None


def _step_across(walls: List[Wall], signs: Tuple[int, ...], index: int, witness: Point) -> Point:
    normal = walls[index].normal
    eps = Fraction(1)
    while True:
        point = tuple(x - signs[index] * eps * e for x, e in zip(witness, normal, strict=True))
        if all(_sign(pair(w.normal, point)) == s for w, s in zip(walls, signs, strict=True) if w.id != index):
            return point
        eps /= 2


def _in_cone(vectors: List[IntVector], point: Sequence) -> bool:
    if not vectors:
        return not any(point)
    rows = [[v[k] for v in vectors] for k in range(len(point))]
    n = len(vectors)
    nonneg = [(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    return fm_feasible(nonneg, n, equalities=[(row, x) for row, x in zip(rows, point, strict=True)]) is not None


def _find(parent: List[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _chamber_rays(walls: List[Wall], bounds: Dict[int, int], r: int) -> List[IntVector]:
    """Extreme rays of the cone {x : s_j <x, E_j> >= 0 for the bounding walls j}"""
    rays = set()
    items = sorted(bounds.items())
    for subset in itertools.combinations(items, r - 1):
        kernel = kernel_basis([walls[j].normal for j, _ in subset], r)
        if len(kernel) != 1:
            continue
        direction = primitive(kernel[0])
        for candidate in (direction, tuple(-x for x in direction)):
            if all(s * pair(walls[j].normal, candidate) >= 0 for j, s in items):
                rays.add(candidate)
    return sorted(rays, reverse=True)


def chamber_complex(config: VectorConfig) -> ChamberComplex:
    """Cells by sign-vector walk, merged into chambers, with crossings and rays"""
    walls = enumerate_walls(config)
    r = config.rank
    start = _regular_start(config, walls)
    first = tuple(_sign(pair(w.normal, start)) for w in walls)
    cells = [Cell(0, first, start)]
    index = {first: 0}
    facets: List[Tuple[int, int, Optional[int], Point]] = []
    queue = deque([0])
    while queue:
        cell = cells[queue.popleft()]
        for wall in walls:
            witness = _facet_witness(walls, cell.signs, wall.id, r)
            if witness is None:
                continue
            if wall.is_facet:
                facets.append((cell.index, wall.id, None, witness))
                continue
            flipped = tuple(-s if i == wall.id else s for i, s in enumerate(cell.signs))
            if flipped not in index:
                neighbor = Cell(len(cells), flipped, _step_across(walls, cell.signs, wall.id, witness))
                index[flipped] = neighbor.index
                cells.append(neighbor)
                queue.append(neighbor.index)
            other = index[flipped]
            if other > cell.index:
                facets.append((cell.index, wall.id, other, witness))

    parent = list(range(len(cells)))
    genuine = []
    for facet in facets:
        a, wid, b, witness = facet
        if b is not None and not _in_cone([config.vectors[i] for i in walls[wid].on], witness):
            parent[_find(parent, a)] = _find(parent, b)
        else:
            genuine.append(facet)

    chambers: Dict[int, Chamber] = {EXTERIOR: Chamber(EXTERIOR, is_exterior=True)}
    root_to_id: Dict[int, int] = {}
    for cell in cells:
        root = _find(parent, cell.index)
        if root not in root_to_id:
            cid = len(root_to_id) + 1
            root_to_id[root] = cid
            chambers[cid] = Chamber(cid, witness=cell.witness)
        cell.chamber = root_to_id[root]
        chambers[cell.chamber].cells.append(cell.index)
        chambers[cell.chamber].signs.append(cell.signs)

    crossings = []
    bounds: Dict[int, Dict[int, int]] = {cid: {} for cid in chambers}
    adjacency: Dict[int, set] = {cid: set() for cid in chambers}
    for a, wid, b, witness in genuine:
        source = cells[a].chamber
        target = cells[b].chamber if b is not None else EXTERIOR
        if source == target:
            continue
        crossings.append(Crossing(wid, source, target, a, b, witness))
        adjacency[source].add((wid, target))
        adjacency[target].add((wid, source))
        bounds[source][wid] = cells[a].signs[wid]
        if b is not None:
            bounds[target][wid] = cells[b].signs[wid]
    for cid, chamber in chambers.items():
        chamber.adjacency = sorted(adjacency[cid])
        if cid != EXTERIOR:
            chamber.rays = _chamber_rays(walls, bounds[cid], r)

    logger.info(
        "configuration %s: %d walls, %d cells, %d chambers",
        config.name,
        len(walls),
        len(cells),
        len(chambers) - 1,
    )
    return ChamberComplex(config=config, walls=walls, cells=cells, chambers=chambers, crossings=crossings)


@dataclass
class WallFrame:
    """Integral splitting Z^r = Gamma_0 + Z F adapted to a wall.

    ``coordinates`` maps ambient points to Gamma_0 coordinates, ``sub`` is
    the on-wall configuration validated in those coordinates (None in rank
    one), ``index`` the index of Z Phi_0 in Gamma_0 and ``characters`` the
    shifts whose average is the indicator of Z Phi_0.
    """

    wall: Wall
    split: LatticeSplit
    phi0: List[IntVector]
    sub: Optional[VectorConfig]
    index: int
    characters: List[Point]

    @property
    def basis(self) -> List[IntVector]:
        return self.split.basis

    @property
    def complement(self) -> IntVector:
        return self.split.complement

    @property
    def coordinates(self) -> List[List[int]]:
        return self.split.coordinates

    def sub_matrix(self) -> List[List[Fraction]]:
        """Rows giving sub-configuration working coordinates from frame coordinates"""
        if self.sub is None:
            return []
        return inverse(self.sub.basis_matrix())


def wall_frame(config: VectorConfig, wall: Wall) -> WallFrame:
    split = split_lattice(wall.normal)
    phi0 = [tuple(to_ints(mat_vec(split.coordinates, config.vectors[i]))) for i in wall.on]
    if config.rank == 1:
        return WallFrame(wall=wall, split=split, phi0=phi0, sub=None, index=1, characters=[()])
    sub = validate_config(phi0, name=f"{config.name}/w{wall.id}")
    k = sub.rank
    diagonal = sub.smith.diagonal[:k]
    characters = []
    for n in itertools.product(*(range(s) for s in diagonal)):
        chi = tuple(
            sum((Fraction(sub.smith.left[i][j] * n[i], diagonal[i]) for i in range(k)), Fraction(0)) % 1
            for j in range(k)
        )
        characters.append(chi)
    characters = sorted(set(characters))
    return WallFrame(wall=wall, split=split, phi0=phi0, sub=sub, index=sub.index, characters=characters)


def unimodular_and_period(config: VectorConfig) -> Tuple[bool, int]:
    """Whether every basis in Phi is unimodular, and the lcm of basis determinants"""
    period = 1
    unimodular = True
    for subset in itertools.combinations(config.vectors, config.rank):
        det = abs(determinant(transpose([list(v) for v in subset])))
        if det == 0:
            continue
        value = int(det)
        if value != 1:
            unimodular = False
        period = lcm(period, value)
    return unimodular, period
