# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Truncated x-jets, Laurent series in z and one-variable residues.

A :class:`JetSeries` is a polynomial in x = (x1..xr) truncated above total
degree ``order``. A :class:`LaurentJet` maps z exponents to jet series and
drops z exponents above ``high`` (``high`` is None for an exact finite
series). Coefficients are scalars or :class:`MultiPoly` values in a.

Every factor built here has weight (z exponent plus x degree) at least -1,
so with |Psi| factors and deg P <= D the z^-1 coefficient only needs
factor exponents up to |Psi| + D - 2 and numerator exponents up to
|Psi| + D - 1.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import RankMismatchError, TruncationError, WallVectorError
from .exactnum import Scalar, normalize
from .polyalg import Exponent, MultiPoly, pair

logger = logging.getLogger(__name__)


def _clean(value):
    if isinstance(value, MultiPoly):
        return value
    return normalize(value)


def exponents_upto(rank: int, degree: int) -> List[Exponent]:
    """All exponent vectors of total degree at most degree"""
    out = []
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(rank), total):
            exponent = [0] * rank
            for i in combo:
                exponent[i] += 1
            out.append(tuple(exponent))
    return sorted(set(out))


def exponent_factorial(exponent: Exponent) -> int:
    value = 1
    for e in exponent:
        value *= factorial(e)
    return value


class JetSeries:
    """Polynomial in x truncated above total degree order"""

    __slots__ = ("order", "rank", "terms")

    def __init__(self, rank: int, order: int, terms: Optional[Dict[Exponent, object]] = None):
        self.rank = rank
        self.order = order
        clean = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != rank:
                raise RankMismatchError(f"x exponent {exponent} does not have rank {rank}")
            if sum(exponent) > order:
                continue
            coeff = _clean(coeff)
            if coeff:
                clean[tuple(exponent)] = coeff
        self.terms = clean

    @classmethod
    def one(cls, rank: int, order: int) -> "JetSeries":
        return cls(rank, order, {(0,) * rank: Fraction(1)})

    @classmethod
    def linear(cls, vector: Sequence, order: int) -> "JetSeries":
        """The jet of <vector, x>"""
        rank = len(vector)
        terms = {}
        for i, c in enumerate(vector):
            exponent = [0] * rank
            exponent[i] = 1
            terms[tuple(exponent)] = Fraction(c)
        return cls(rank, order, terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exponent: Exponent):
        return self.terms.get(tuple(exponent), Fraction(0))

    def scale(self, factor) -> "JetSeries":
        return JetSeries(self.rank, self.order, {e: c * factor for e, c in self.terms.items()})

    def __add__(self, other: "JetSeries") -> "JetSeries":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return JetSeries(self.rank, min(self.order, other.order), terms)

    def __mul__(self, other: "JetSeries") -> "JetSeries":
        order = min(self.order, other.order)
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                exponent = tuple(x + y for x, y in zip(e1, e2, strict=True))
                value = c1 * c2
                terms[exponent] = terms[exponent] + value if exponent in terms else value
        return JetSeries(self.rank, order, terms)

    def power(self, n: int) -> "JetSeries":
        result = JetSeries.one(self.rank, self.order)
        for _ in range(n):
            result = result * self
        return result


class LaurentJet:
    """Laurent series in z with jet coefficients, truncated above z^high"""

    __slots__ = ("high", "order", "rank", "terms")

    def __init__(self, rank: int, order: int, high: Optional[int], terms: Optional[Dict[int, JetSeries]] = None):
        self.rank = rank
        self.order = order
        self.high = high
        self.terms = {z: j for z, j in (terms or {}).items() if j and (high is None or z <= high)}

    @classmethod
    def one(cls, rank: int, order: int) -> "LaurentJet":
        return cls(rank, order, None, {0: JetSeries.one(rank, order)})

    @property
    def low(self) -> int:
        return min(self.terms, default=0)

    @property
    def min_weight(self) -> int:
        return min((z + min(sum(e) for e in j.terms) for z, j in self.terms.items()), default=0)

    def coefficient(self, z: int, exponent: Exponent):
        jet = self.terms.get(z)
        return jet.coefficient(exponent) if jet is not None else Fraction(0)

    def multiply(self, other: "LaurentJet", cap: Optional[int] = None) -> "LaurentJet":
        """Product, dropping z exponents above both truncations and above cap"""
        if other.rank != self.rank:
            raise RankMismatchError(f"cannot multiply jets of rank {self.rank} and {other.rank}")
        highs = [h for h in (self.high, other.high, cap) if h is not None]
        high = min(highs) if highs else None
        terms: Dict[int, JetSeries] = {}
        for z1, j1 in self.terms.items():
            for z2, j2 in other.terms.items():
                z = z1 + z2
                if high is not None and z > high:
                    continue
                product = j1 * j2
                terms[z] = terms[z] + product if z in terms else product
        return LaurentJet(self.rank, min(self.order, other.order), high, terms)

    def __mul__(self, other: "LaurentJet") -> "LaurentJet":
        return self.multiply(other)


@lru_cache(maxsize=None)
def _todd_series(n: int) -> Tuple[Fraction, ...]:
    # (1 - e^-z)/z = sum_k (-1)^k z^k / (k+1)!
    f = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(1)]
    for m in range(1, n + 1):
        inv.append(-sum((f[k] * inv[m - k] for k in range(1, m + 1)), Fraction(0)))
    return tuple(inv)


def todd_series(n: int) -> List[Fraction]:
    """Coefficients t_0..t_n of z / (1 - e^-z)"""
    if n < 0:
        raise ValueError(f"series order must be non-negative, got {n}")
    return list(_todd_series(n))


def geometric_coefficients(zeta, n: int) -> List[Scalar]:
    """Coefficients b_0..b_n of 1 / (1 - zeta e^-t) for zeta != 1"""
    a = [normalize(1 - zeta)] + [normalize(-zeta * Fraction((-1) ** k, factorial(k))) for k in range(1, n + 1)]
    head = 1 / a[0]
    b = [normalize(head)]
    for m in range(1, n + 1):
        total = Fraction(0)
        for k in range(1, m + 1):
            total = total + a[k] * b[m - k]
        b.append(normalize(-total * head))
    return b


def todd_coefficients(zeta, n: int) -> List[Scalar]:
    """Coefficients of Todd(zeta, z) = z / (1 - zeta^-1 e^-z) up to z^n"""
    if zeta == 1:
        return todd_series(n)
    if n == 0:
        return [Fraction(0)]
    return [Fraction(0), *geometric_coefficients(normalize(1 / zeta), n - 1)]


def _direction_pairing(psi: Sequence, form: Sequence) -> Fraction:
    d = pair(psi, form)
    if d == 0:
        raise WallVectorError(f"vector {tuple(psi)} lies in the wall of {tuple(form)}")
    return d


def jet_exp_linear(form: Sequence, order: int, high: int) -> LaurentJet:
    """e^(<a, x>) e^(<a, E> z) with coefficients polynomial in a"""
    if high < 0:
        raise ValueError(f"z truncation must be non-negative, got {high}")
    rank = len(form)
    a_e = MultiPoly.linear([Fraction(c) for c in form])
    x_part = {}
    for exponent in exponents_upto(rank, order):
        monomial = MultiPoly(rank, {exponent: Fraction(1, exponent_factorial(exponent))})
        x_part[exponent] = monomial
    terms = {}
    power = MultiPoly.constant(rank, 1)
    for j in range(high + 1):
        coeff = power.scale(Fraction(1, factorial(j)))
        if coeff:
            terms[j] = JetSeries(rank, order, {e: coeff * m for e, m in x_part.items()})
        power = power * a_e
    return LaurentJet(rank, order, high, terms)


def jet_inverse_linear(psi: Sequence, form: Sequence, order: int) -> LaurentJet:
    """1 / (d z + <psi, x>) = sum_k (-<psi, x>)^k / (d z)^(k+1), exact after x truncation"""
    d = _direction_pairing(psi, form)
    rank = len(psi)
    minus_s = JetSeries.linear([-Fraction(c) for c in psi], order)
    terms = {}
    power = JetSeries.one(rank, order)
    for k in range(order + 1):
        terms[-(k + 1)] = power.scale(1 / d ** (k + 1))
        power = power * minus_s
    return LaurentJet(rank, order, None, terms)


def _t_powers(psi: Sequence, d: Fraction, order: int, high: int, coeffs: Sequence, offset: int) -> LaurentJet:
    """sum_n coeffs[n] t^(n + offset) for t = d z + <psi, x>, nonnegative powers only"""
    rank = len(psi)
    s = JetSeries.linear(psi, order)
    s_powers = [JetSeries.one(rank, order)]
    for _ in range(order):
        s_powers.append(s_powers[-1] * s)
    terms: Dict[int, JetSeries] = {}
    for n, c in enumerate(coeffs):
        p = n + offset
        if p < 0 or not c:
            continue
        for j in range(max(0, p - order), min(p, high) + 1):
            jet = s_powers[p - j].scale(c * comb(p, j) * d**j)
            terms[j] = terms[j] + jet if j in terms else jet
    return LaurentJet(rank, order, high, terms)


def jet_geometric_factor(zeta, psi: Sequence, form: Sequence, order: int, high: int) -> LaurentJet:
    """1 / (1 - zeta e^-t) for t = <psi, E> z + <psi, x>"""
    d = _direction_pairing(psi, form)
    count = high + order + 2
    if zeta == 1:
        todd = todd_series(count)
        pole = jet_inverse_linear(psi, form, order)
        pole = LaurentJet(pole.rank, order, high, {z: j.scale(todd[0]) for z, j in pole.terms.items()})
        analytic = _t_powers(psi, d, order, high, todd, -1)
        terms = dict(pole.terms)
        for z, j in analytic.terms.items():
            terms[z] = terms[z] + j if z in terms else j
        return LaurentJet(len(psi), order, high, terms)
    coeffs = geometric_coefficients(zeta, count)
    return _t_powers(psi, d, order, high, coeffs, 0)


def truncation_orders(polynomial_degree: int, factor_count: int) -> Tuple[int, int]:
    """x order D and z order H that make residue_apply exact"""
    order = max(polynomial_degree, 0)
    return order, factor_count + order


def residue_apply(poly: MultiPoly, factors: Iterable[LaurentJet], numerator: LaurentJet) -> MultiPoly:
    """sum_m P_m m! [x^m z^-1](numerator * prod(factors)) as a polynomial in a"""
    factors = list(factors)
    order = min([numerator.order] + [f.order for f in factors])
    degree = poly.degree()
    if degree > order:
        raise TruncationError(f"jet order {order} is below the operator degree {degree}")
    factor_need = order + len(factors) - 2
    for f in factors:
        if f.high is not None and f.high < factor_need:
            raise TruncationError(f"factor truncated at z^{f.high}, need z^{factor_need}")

    product = LaurentJet.one(numerator.rank, order)
    for i, f in enumerate(factors):
        remaining = len(factors) - i - 1
        product = product.multiply(f, cap=-1 + remaining * (order + 1))

    needed = -1 - product.low
    if numerator.high is not None and numerator.high < needed:
        raise TruncationError(f"numerator truncated at z^{numerator.high}, need z^{needed}")

    result = MultiPoly.zero(numerator.rank)
    for m, p_m in poly.terms.items():
        acc = MultiPoly.zero(numerator.rank)
        for j, jet in numerator.terms.items():
            pole = product.terms.get(-1 - j)
            if pole is None:
                continue
            for m1, n_coeff in jet.terms.items():
                if any(x > y for x, y in zip(m1, m, strict=True)):
                    continue
                m2 = tuple(y - x for x, y in zip(m1, m, strict=True))
                f_coeff = pole.coefficient(m2)
                if f_coeff:
                    acc = acc + n_coeff * f_coeff
        if acc:
            result = result + acc.scale(p_m * exponent_factorial(m))
    return result
