# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Exact integer and rational linear algebra.

Smith normal form with both transforms, the splitting of Z^r along a
primitive linear form, primitive kernel vectors and Fourier-Motzkin
feasibility. Matrices are lists of rows.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]
Inequality = Tuple[Tuple[Fraction, ...], Fraction]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(matrix: Sequence[Sequence], columns: int = 0) -> list:
    if not matrix:
        return [[] for _ in range(columns)]
    return [list(col) for col in zip(*matrix, strict=True)]


def mat_vec(matrix: Sequence[Sequence], vector: Sequence) -> list:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, vector, strict=True)), Fraction(0)) for row in matrix]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    cols = transpose(b)
    return [[sum((Fraction(x) * Fraction(y) for x, y in zip(row, col, strict=True)), Fraction(0)) for col in cols] for row in a]


def to_ints(values: Sequence) -> List[int]:
    out = []
    for v in values:
        v = Fraction(v)
        if v.denominator != 1:
            raise ValueError(f"expected an integer, got {v}")
        out.append(int(v))
    return out


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return Matrix([[Fraction(x) for x in row] for row in rows]).rank()


def determinant(rows: Sequence[Sequence]) -> Fraction:
    value = Matrix([[Fraction(x) for x in row] for row in rows]).det()
    return Fraction(int(value.p), int(value.q))


def inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact inverse of a square rational matrix"""
    if not rows:
        return []
    inv = Matrix([[Fraction(x) for x in row] for row in rows]).inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(inv.cols)] for i in range(inv.rows)]


def primitive(vector: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with the same direction"""
    fractions = [Fraction(v) for v in vector]
    denominator = 1
    for f in fractions:
        denominator = denominator * f.denominator // gcd(denominator, f.denominator)
    ints = [int(f * denominator) for f in fractions]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def canonical_sign(vector: Sequence) -> Tuple:
    """Flip the vector so its first nonzero coordinate is positive"""
    for v in vector:
        if v:
            return tuple(vector) if v > 0 else tuple(-x for x in vector)
    return tuple(vector)


def kernel_basis(rows: Sequence[Sequence], n: int) -> List[Tuple[Fraction, ...]]:
    """Rational basis of {x : row . x = 0 for all rows}"""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    basis = Matrix([[Fraction(x) for x in row] for row in rows]).nullspace()
    return [tuple(Fraction(int(v.p), int(v.q)) for v in vec) for vec in basis]


def hyperplane_normal(vectors: Sequence[Sequence], n: int) -> Optional[Tuple[int, ...]]:
    """Primitive sign-canonical normal of the span of vectors, None unless it is a hyperplane"""
    basis = kernel_basis(vectors, n)
    if len(basis) != 1:
        return None
    return canonical_sign(primitive(basis[0]))


@dataclass
class SmithForm:
    """U * A * V = diag(diagonal), U and V unimodular"""

    left: IntMatrix
    diagonal: List[int]
    right: IntMatrix
    rank: int


def smith_normal_form(matrix: Sequence[Sequence[int]], columns: Optional[int] = None) -> SmithForm:
    """Diagonalize an integer matrix by unimodular row and column operations"""
    a = [to_ints(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if a else (columns or 0)
    left, right = identity(m), identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(target, source, q):
        a[target] = [x - q * y for x, y in zip(a[target], a[source], strict=True)]
        left[target] = [x - q * y for x, y in zip(left[target], left[source], strict=True)]

    def add_col(target, source, q):
        for row in a:
            row[target] -= q * row[source]
        for row in right:
            row[target] -= q * row[source]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, q)
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, q)
            rest = [(abs(a[i][t]), i, -1) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), -1, j) for j in range(t + 1, n) if a[t][j]]
            if not rest:
                break
            _, i, j = min(rest)
            if i >= 0:
                swap_rows(t, i)
            else:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diagonal = [a[i][i] for i in range(min(m, n))]
    return SmithForm(left=left, diagonal=diagonal, right=right, rank=t)


@dataclass
class LatticeSplit:
    """Z^r = span(basis) + Z complement for a primitive form E.

    basis columns pair to zero with E, the complement pairs to one, and
    coordinates[i] . a is the i-th basis coordinate of a.
    """

    basis: List[Tuple[int, ...]]
    complement: Tuple[int, ...]
    coordinates: List[List[int]]


def split_lattice(form: Sequence[int]) -> LatticeSplit:
    """Unimodular column reduction of the row vector E to (0, ..., 0, 1)"""
    e = to_ints(form)
    r = len(e)
    v = identity(r)
    while sum(1 for x in e if x) > 1:
        _, j = min((abs(x), j) for j, x in enumerate(e) if x)
        for k in range(r):
            if k != j and e[k]:
                q = e[k] // e[j]
                e[k] -= q * e[j]
                for row in v:
                    row[k] -= q * row[j]
    pivots = [j for j, x in enumerate(e) if x]
    if not pivots or abs(e[pivots[0]]) != 1:
        raise ValueError(f"form {tuple(form)} is not primitive")
    j = pivots[0]
    last = r - 1
    if j != last:
        e[j], e[last] = e[last], e[j]
        for row in v:
            row[j], row[last] = row[last], row[j]
    if e[last] < 0:
        for row in v:
            row[last] = -row[last]
    columns = transpose(v)
    basis = [canonical_sign(col) for col in columns[:last]]
    complement = tuple(columns[last])
    full = transpose([list(b) for b in basis] + [list(complement)])
    inv = inverse(full)
    coordinates = [to_ints(row) for row in inv[:last]]
    return LatticeSplit(basis=basis, complement=complement, coordinates=coordinates)


def _normalize_row(coeffs: Tuple[Fraction, ...], rhs: Fraction) -> Inequality:
    scale = max((abs(c) for c in coeffs), default=Fraction(0))
    if scale == 0:
        return coeffs, rhs
    return tuple(c / scale for c in coeffs), rhs / scale


def _prune(rows: List[Inequality]) -> Optional[List[Inequality]]:
    best = {}
    for coeffs, rhs in rows:
        coeffs, rhs = _normalize_row(coeffs, rhs)
        if not any(coeffs):
            if rhs > 0:
                return None
            continue
        if coeffs not in best or rhs > best[coeffs]:
            best[coeffs] = rhs
    return [(c, best[c]) for c in sorted(best)]


def fm_feasible(
    inequalities: Sequence[Tuple[Sequence, object]],
    n: int,
    equalities: Sequence[Tuple[Sequence, object]] = (),
) -> Optional[List[Fraction]]:
    """A point x with a . x >= b for every (a, b) and a . x = b for every equality, or None"""
    rows: List[Inequality] = []
    for coeffs, rhs in inequalities:
        rows.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs)))
    for coeffs, rhs in equalities:
        rows.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs)))
        rows.append((tuple(-Fraction(c) for c in coeffs), -Fraction(rhs)))
    current = _prune(rows)
    if current is None:
        return None
    stages = []
    for k in reversed(range(n)):
        upper = [row for row in current if row[0][k] < 0]
        lower = [row for row in current if row[0][k] > 0]
        combined = [row for row in current if row[0][k] == 0]
        stages.append((k, lower, upper))
        for a_lo, b_lo in lower:
            for a_up, b_up in upper:
                w_lo, w_up = -a_up[k], a_lo[k]
                coeffs = tuple(w_lo * x + w_up * y for x, y in zip(a_lo, a_up, strict=True))
                combined.append((coeffs, w_lo * b_lo + w_up * b_up))
        current = _prune(combined)
        if current is None:
            return None
    x = [Fraction(0)] * n
    for k, lower, upper in reversed(stages):

        def bound(row):
            coeffs, rhs = row
            rest = sum((coeffs[j] * x[j] for j in range(n) if j != k and coeffs[j]), Fraction(0))
            return (rhs - rest) / coeffs[k]

        lo = max((bound(row) for row in lower), default=None)
        hi = min((bound(row) for row in upper), default=None)
        if lo is not None and hi is not None:
            x[k] = (lo + hi) / 2
        elif lo is not None:
            x[k] = lo
        elif hi is not None:
            x[k] = hi
    return x
