# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Sparse polynomials and quasi-polynomials over exact scalars.

A :class:`MultiPoly` maps exponent tuples to scalars. A :class:`QuasiPoly`
maps rational shift vectors y, each entry in [0, 1), to polynomials P_y and
stands for the function a -> sum_y e^(2 i pi <y, a>) P_y(a) on the integer
lattice. Both are treated as immutable once built.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NonRationalValueError, RankMismatchError
from .exactnum import Cyclotomic, Scalar, exp2pi, normalize

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Shift = Tuple[Fraction, ...]
Vector = Sequence

_SCALARS = (int, Fraction, Cyclotomic)


def pair(u: Vector, v: Vector):
    """Standard pairing of two coordinate vectors"""
    if len(u) != len(v):
        raise RankMismatchError(f"cannot pair vectors of length {len(u)} and {len(v)}")
    total = Fraction(0)
    for x, y in zip(u, v, strict=True):
        if x and y:
            total += Fraction(x) * Fraction(y)
    return total


def grlex_key(exponent: Exponent):
    """Sort key putting higher total degree first, then lexicographically larger exponents"""
    return (-sum(exponent), tuple(-e for e in exponent))


@dataclass(frozen=True)
class LinearForm:
    """A rational linear form, also used as a direction vector"""

    coeffs: Tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable) -> "LinearForm":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def unit(cls, rank: int, index: int) -> "LinearForm":
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def pair(self, vector: Vector) -> Fraction:
        return pair(self.coeffs, vector)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, index):
        return self.coeffs[index]


class MultiPoly:
    """Sparse polynomial in rank variables a1..a_rank"""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Optional[Dict[Exponent, Scalar]] = None):
        self.rank = rank
        clean = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != rank:
                raise RankMismatchError(f"exponent {exponent} does not have rank {rank}")
            coeff = normalize(coeff)
            if coeff:
                clean[exponent] = coeff
        self.terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: Dict[Exponent, Scalar]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.rank = rank
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, rank: int) -> "MultiPoly":
        return cls._raw(rank, {})

    @classmethod
    def constant(cls, rank: int, value) -> "MultiPoly":
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def variable(cls, rank: int, index: int) -> "MultiPoly":
        exponent = [0] * rank
        exponent[index] = 1
        return cls._raw(rank, {tuple(exponent): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Vector, constant=0) -> "MultiPoly":
        """The polynomial constant + sum_i coeffs[i] a_i"""
        rank = len(coeffs)
        terms = {(0,) * rank: constant}
        for i, c in enumerate(coeffs):
            exponent = [0] * rank
            exponent[i] = 1
            terms[tuple(exponent)] = c
        return cls(rank, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial"""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._raw(self.rank, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def coefficient(self, exponent: Exponent) -> Scalar:
        return self.terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.rank)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def sorted_terms(self) -> List[Tuple[Exponent, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    def _check(self, other: "MultiPoly"):
        if other.rank != self.rank:
            raise RankMismatchError(f"cannot combine polynomials of rank {self.rank} and {other.rank}")

    def _lift(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, _SCALARS):
            return MultiPoly.constant(self.rank, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            value = normalize(terms[exponent] + coeff) if exponent in terms else coeff
            if value:
                terms[exponent] = value
            else:
                terms.pop(exponent, None)
        return MultiPoly._raw(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.rank, {e: normalize(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor) -> "MultiPoly":
        factor = normalize(factor)
        if not factor:
            return MultiPoly.zero(self.rank)
        terms = {}
        for exponent, coeff in self.terms.items():
            value = normalize(coeff * factor)
            if value:
                terms[exponent] = value
        return MultiPoly._raw(self.rank, terms)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            terms: Dict[Exponent, Scalar] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exponent = tuple(x + y for x, y in zip(e1, e2, strict=True))
                    value = c1 * c2
                    terms[exponent] = terms[exponent] + value if exponent in terms else value
            return MultiPoly(self.rank, terms)
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return NotImplemented
        return self.scale(1 / normalize(other))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPoly.constant(self.rank, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self == MultiPoly.constant(self.rank, other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"MultiPoly({self.rank}, {self})"

    def __str__(self):
        from .common import format_poly

        return format_poly(self)

    def evaluate(self, point: Vector) -> Scalar:
        """Exact substitution of a rational point"""
        if len(point) != self.rank:
            raise RankMismatchError(f"point of length {len(point)} for polynomial of rank {self.rank}")
        values = [Fraction(x) for x in point]
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            monomial = Fraction(1)
            for x, e in zip(values, exponent, strict=True):
                if e:
                    monomial *= x**e
            total = total + coeff * monomial
        return normalize(total)

    def partial(self, index: int, times: int = 1) -> "MultiPoly":
        terms: Dict[Exponent, Scalar] = {}
        for exponent, coeff in self.terms.items():
            e = exponent[index]
            if e < times:
                continue
            lowered = list(exponent)
            lowered[index] = e - times
            terms[tuple(lowered)] = coeff * (factorial(e) // factorial(e - times))
        return MultiPoly(self.rank, terms)

    def derivative(self, direction: Vector) -> "MultiPoly":
        """Directional derivative along direction"""
        result = MultiPoly.zero(self.rank)
        for i, c in enumerate(direction):
            if c:
                result = result + self.partial(i).scale(c)
        return result

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute images[i] for the variable a_i"""
        if len(images) != self.rank:
            raise RankMismatchError(f"{len(images)} images for a polynomial of rank {self.rank}")
        if not images:
            rank = 0
        else:
            rank = images[0].rank
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in powers:
                powers[key] = MultiPoly.constant(rank, 1) if e == 0 else power(i, e - 1) * images[i]
            return powers[key]

        result = MultiPoly.zero(rank)
        for exponent, coeff in self.terms.items():
            monomial = MultiPoly.constant(rank, coeff)
            for i, e in enumerate(exponent):
                if e:
                    monomial = monomial * power(i, e)
            result = result + monomial
        return result

    def substitute(
        self, matrix: Sequence[Sequence], offset: Optional[Vector] = None, columns: Optional[int] = None
    ) -> "MultiPoly":
        """Pull back along b -> matrix b + offset, matrix having one row per variable"""
        if len(matrix) != self.rank:
            raise RankMismatchError(f"matrix with {len(matrix)} rows for a polynomial of rank {self.rank}")
        if not matrix:
            return MultiPoly.constant(columns or 0, self.constant_term())
        offset = offset or [0] * self.rank
        images = [MultiPoly.linear([Fraction(x) for x in row], offset[i]) for i, row in enumerate(matrix)]
        return self.compose(images)

    def shift(self, vector: Vector) -> "MultiPoly":
        """The polynomial a -> p(a + vector)"""
        identity = [[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
        return self.substitute(identity, vector)

    def difference(self, gamma: Vector) -> "MultiPoly":
        """D(gamma) p = p - p(. - gamma)"""
        return self - self.shift([-Fraction(g) for g in gamma])


def diff_apply(operator: MultiPoly, target: MultiPoly) -> MultiPoly:
    """Apply the constant coefficient operator operator(d/da) to target"""
    if operator.rank != target.rank:
        raise RankMismatchError(f"operator of rank {operator.rank} on polynomial of rank {target.rank}")
    terms: Dict[Exponent, Scalar] = {}
    for m, op_coeff in operator.terms.items():
        for e, coeff in target.terms.items():
            if any(mi > ei for mi, ei in zip(m, e, strict=True)):
                continue
            falling = 1
            for mi, ei in zip(m, e, strict=True):
                falling *= factorial(ei) // factorial(ei - mi)
            exponent = tuple(ei - mi for mi, ei in zip(m, e, strict=True))
            value = op_coeff * coeff * falling
            terms[exponent] = terms[exponent] + value if exponent in terms else value
    return MultiPoly(target.rank, terms)


def difference_apply(gamma: Vector, f):
    """D(gamma) f = f - tau(gamma) f for a MultiPoly or QuasiPoly"""
    return f.difference(gamma)


def _mod1(y: Iterable) -> Shift:
    return tuple(Fraction(v) % 1 for v in y)


class QuasiPoly:
    """Finite sum of characters e_y times polynomials P_y"""

    __slots__ = ("rank", "shifts")

    def __init__(self, rank: int, shifts: Optional[Dict[Shift, MultiPoly]] = None):
        self.rank = rank
        merged: Dict[Shift, MultiPoly] = {}
        for y, poly in (shifts or {}).items():
            y = _mod1(y)
            if len(y) != rank or poly.rank != rank:
                raise RankMismatchError(f"shift {y} or polynomial rank {poly.rank} does not match rank {rank}")
            merged[y] = merged[y] + poly if y in merged else poly
        self.shifts = {y: p for y, p in merged.items() if p}

    @classmethod
    def zero(cls, rank: int) -> "QuasiPoly":
        return cls(rank)

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "QuasiPoly":
        return cls(poly.rank, {(Fraction(0),) * poly.rank: poly})

    @classmethod
    def constant(cls, rank: int, value) -> "QuasiPoly":
        return cls.from_poly(MultiPoly.constant(rank, value))

    @classmethod
    def character(cls, y: Vector, poly: Optional[MultiPoly] = None) -> "QuasiPoly":
        rank = len(y)
        return cls(rank, {_mod1(y): poly if poly is not None else MultiPoly.constant(rank, 1)})

    @property
    def period(self) -> int:
        return lcm(1, *(v.denominator for y in self.shifts for v in y))

    def is_zero(self) -> bool:
        return not self.shifts

    def __bool__(self):
        return bool(self.shifts)

    def is_polynomial(self) -> bool:
        return all(not any(y) for y in self.shifts)

    def polynomial_part(self) -> MultiPoly:
        return self.shifts.get((Fraction(0),) * self.rank, MultiPoly.zero(self.rank))

    def degree(self) -> int:
        return max((p.degree() for p in self.shifts.values()), default=-1)

    def sorted_shifts(self) -> List[Tuple[Shift, MultiPoly]]:
        return sorted(self.shifts.items())

    def _lift(self, other) -> Optional["QuasiPoly"]:
        if isinstance(other, QuasiPoly):
            if other.rank != self.rank:
                raise RankMismatchError(f"cannot combine quasi-polynomials of rank {self.rank} and {other.rank}")
            return other
        if isinstance(other, MultiPoly):
            return QuasiPoly.from_poly(other)
        if isinstance(other, _SCALARS):
            return QuasiPoly.constant(self.rank, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        shifts = dict(self.shifts)
        for y, poly in other.shifts.items():
            shifts[y] = shifts[y] + poly if y in shifts else poly
        return QuasiPoly(self.rank, shifts)

    __radd__ = __add__

    def __neg__(self):
        return QuasiPoly(self.rank, {y: -p for y, p in self.shifts.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return QuasiPoly(self.rank, {y: p.scale(other) for y, p in self.shifts.items()})
        other = self._lift(other)
        if other is None:
            return NotImplemented
        shifts: Dict[Shift, MultiPoly] = {}
        for y1, p1 in self.shifts.items():
            for y2, p2 in other.shifts.items():
                y = _mod1(a + b for a, b in zip(y1, y2, strict=True))
                product = p1 * p2
                shifts[y] = shifts[y] + product if y in shifts else product
        return QuasiPoly(self.rank, shifts)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (QuasiPoly, MultiPoly)) or isinstance(other, (int, Fraction)):
            other = self._lift(other)
            return self.rank == other.rank and self.shifts == other.shifts
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"QuasiPoly({self.rank}, {self})"

    def __str__(self):
        from .common import format_quasi_shifts

        return format_quasi_shifts(self)

    def evaluate_scalar(self, point: Vector) -> Scalar:
        """Value at an integer point as a field element"""
        if len(point) != self.rank:
            raise RankMismatchError(f"point of length {len(point)} for quasi-polynomial of rank {self.rank}")
        total = Fraction(0)
        for y, poly in self.shifts.items():
            total = total + exp2pi(pair(y, point)) * poly.evaluate(point)
        return normalize(total)

    def evaluate(self, point: Vector) -> Fraction:
        """Value at an integer point; a non-rational value is an internal error"""
        if any(Fraction(x).denominator != 1 for x in point):
            raise ValueError(f"quasi-polynomials are evaluated at integer points, got {tuple(point)}")
        value = self.evaluate_scalar(point)
        if not isinstance(value, Fraction):
            raise NonRationalValueError(f"value {value} at {tuple(point)}")
        return value

    def shift(self, vector: Vector) -> "QuasiPoly":
        """The function a -> K(a + vector) for an integer vector"""
        return QuasiPoly(
            self.rank, {y: poly.shift(vector).scale(exp2pi(pair(y, vector))) for y, poly in self.shifts.items()}
        )

    def difference(self, gamma: Vector) -> "QuasiPoly":
        """D(gamma) K = K - K(. - gamma); gamma must be integral"""
        if any(Fraction(g).denominator != 1 for g in gamma):
            raise ValueError(f"difference of a quasi-polynomial needs an integral vector, got {tuple(gamma)}")
        return self - self.shift([-Fraction(g) for g in gamma])

    def substitute(self, matrix: Sequence[Sequence], columns: Optional[int] = None) -> "QuasiPoly":
        """Pull back along the linear map b -> matrix b"""
        if len(matrix) != self.rank:
            raise RankMismatchError(f"matrix with {len(matrix)} rows for a quasi-polynomial of rank {self.rank}")
        width = len(matrix[0]) if matrix else (columns or 0)
        shifts: Dict[Shift, MultiPoly] = {}
        for y, poly in self.shifts.items():
            image = tuple(sum((Fraction(matrix[i][j]) * y[i] for i in range(self.rank)), Fraction(0)) for j in range(width))
            image = _mod1(image)
            pulled = poly.substitute(matrix, columns=width)
            shifts[image] = shifts[image] + pulled if image in shifts else pulled
        return QuasiPoly(width, shifts)

    def diff_apply(self, operator: MultiPoly) -> "QuasiPoly":
        return QuasiPoly(self.rank, {y: diff_apply(operator, p) for y, p in self.shifts.items()})

    def top_part(self, degree: int) -> "QuasiPoly":
        return QuasiPoly(self.rank, {y: p.homogeneous_part(degree) for y, p in self.shifts.items()})

    def to_cosets(self) -> List[Tuple[Tuple[int, ...], MultiPoly]]:
        return qp_to_cosets(self)


def poly_eval(poly: MultiPoly, point: Vector) -> Scalar:
    return poly.evaluate(point)


def qp_eval(quasi: QuasiPoly, point: Vector) -> Fraction:
    return quasi.evaluate(point)


def qp_to_cosets(quasi: QuasiPoly) -> List[Tuple[Tuple[int, ...], MultiPoly]]:
    """Polynomials agreeing with quasi on each coset h + M Z^r, M the period"""
    modulus = quasi.period
    table = []
    for h in itertools.product(range(modulus), repeat=quasi.rank):
        poly = MultiPoly.zero(quasi.rank)
        for y, p in quasi.shifts.items():
            poly = poly + p.scale(exp2pi(pair(y, h)))
        if not poly.is_rational():
            raise NonRationalValueError(f"coset {h} polynomial {poly} has irrational coefficients")
        table.append((h, poly))
    return table


def qp_from_cosets(rank: int, modulus: int, table: Iterable[Tuple[Sequence[int], MultiPoly]]) -> QuasiPoly:
    """Inverse of qp_to_cosets through the character average of coset indicators"""
    table = list(table)
    weight = Fraction(1, modulus**rank)
    shifts: Dict[Shift, MultiPoly] = {}
    for n in itertools.product(range(modulus), repeat=rank):
        y = tuple(Fraction(k, modulus) for k in n)
        poly = MultiPoly.zero(rank)
        for h, q in table:
            poly = poly + q.scale(exp2pi(-pair(y, h)))
        shifts[y] = poly.scale(weight)
    return QuasiPoly(rank, shifts)
