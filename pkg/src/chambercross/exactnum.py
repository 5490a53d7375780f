# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Exact scalars.

Rationals are :class:`fractions.Fraction`. Elements of the cyclotomic field
Q(zeta_M) are :class:`Cyclotomic` values held in the power basis
1, zeta, ..., zeta^(phi(M)-1) and always reduced modulo the M-th cyclotomic
polynomial. Operands of different orders are promoted to the lcm of their
orders, and a value that turns out to be rational is demoted to order 1.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly, cyclotomic_poly

from .errors import ZeroDivisionInFieldError

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")

Rational = Fraction


@lru_cache(maxsize=None)
def cyclotomic_coeffs(order: int) -> Tuple[int, ...]:
    """Coefficients of the order-th cyclotomic polynomial, constant term first"""
    if order < 1:
        raise ValueError(f"cyclotomic order must be positive, got {order}")
    poly = Poly(cyclotomic_poly(order, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _reduce(order: int, values: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Remainder of sum(values[i] x^i) modulo the order-th cyclotomic polynomial"""
    phi = cyclotomic_coeffs(order)
    degree = len(phi) - 1
    vals = [Fraction(v) for v in values]
    if len(vals) < degree:
        vals.extend([Fraction(0)] * (degree - len(vals)))
    for i in range(len(vals) - 1, degree - 1, -1):
        lead = vals[i]
        if lead:
            shift = i - degree
            for j, c in enumerate(phi):
                if c:
                    vals[shift + j] -= lead * c
    return tuple(vals[:degree])


class Cyclotomic:
    """An element of Q(zeta_order) in reduced power-basis form"""

    __slots__ = ("coeffs", "order")

    def __init__(self, order: int, coeffs: Tuple[Fraction, ...]):
        # callers pass reduced coefficients; use from_coefficients otherwise
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_coefficients(cls, order: int, values: Sequence) -> "Cyclotomic":
        reduced = _reduce(order, values)
        if all(c == 0 for c in reduced[1:]):
            return cls(1, (reduced[0] if reduced else Fraction(0),))
        return cls(order, reduced)

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        return cls(1, (Fraction(value),))

    def promote(self, order: int) -> Tuple[Fraction, ...]:
        """Coefficients of this value in the power basis of Q(zeta_order)"""
        if order == self.order:
            return self.coeffs
        if order % self.order:
            raise ValueError(f"cannot promote order {self.order} to {order}")
        step = order // self.order
        values = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            values[i * step] = c
        return _reduce(order, values)

    def is_rational(self) -> bool:
        return self.order == 1

    def to_rational(self) -> Optional[Fraction]:
        return self.coeffs[0] if self.order == 1 else None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _aligned(self, other: "Cyclotomic"):
        order = lcm(self.order, other.order)
        return order, self.promote(order), other.promote(order)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic(1, (self.coeffs[0] + other.coeffs[0],))
        order, a, b = self._aligned(other)
        return Cyclotomic.from_coefficients(order, [x + y for x, y in zip(a, b, strict=True)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic(1, (self.coeffs[0] * other.coeffs[0],))
        if other.order == 1:
            return self._scaled(other.coeffs[0])
        if self.order == 1:
            return other._scaled(self.coeffs[0])
        order, a, b = self._aligned(other)
        product = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        product[i + j] += x * y
        return Cyclotomic.from_coefficients(order, product)

    __rmul__ = __mul__

    def _scaled(self, factor: Fraction) -> "Cyclotomic":
        if factor == 0:
            return Cyclotomic(1, (Fraction(0),))
        return Cyclotomic(self.order, tuple(c * factor for c in self.coeffs))

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse by extended Euclid against the cyclotomic polynomial"""
        if self.is_zero():
            raise ZeroDivisionInFieldError(f"division by zero in Q(zeta_{self.order})")
        if self.order == 1:
            return Cyclotomic(1, (1 / self.coeffs[0],))
        f = Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=QQ)
        g = Poly(list(reversed(cyclotomic_coeffs(self.order))), _X, domain=QQ)
        h = f.invert(g)
        values = [Fraction(int(c.p), int(c.q)) for c in (sympy.Rational(c) for c in reversed(h.all_coeffs()))]
        return Cyclotomic.from_coefficients(self.order, values)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = Cyclotomic(1, (Fraction(1),))
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        _, a, b = self._aligned(other)
        return a == b

    __hash__ = None

    def __repr__(self):
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        from .common import format_scalar

        return format_scalar(self)


Scalar = Union[Fraction, Cyclotomic]


def _coerce(value) -> Optional[Cyclotomic]:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic(1, (Fraction(value),))
    return None


def normalize(value) -> Scalar:
    """Rational values become Fraction, everything else stays Cyclotomic"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Cyclotomic):
        return value.coeffs[0] if value.order == 1 else value
    return Fraction(value)


def cyclo_root_of_unity(k: int, order: int) -> Cyclotomic:
    """zeta_order^k in canonical form, order reduced to that of the root"""
    if order < 1:
        raise ValueError(f"root of unity order must be positive, got {order}")
    k %= order
    g = gcd(k, order)
    k, order = k // g, order // g
    if order == 1:
        return Cyclotomic(1, (Fraction(1),))
    values = [Fraction(0)] * (k + 1)
    values[k] = Fraction(1)
    return Cyclotomic.from_coefficients(order, values)


def exp2pi(q) -> Scalar:
    """e^(2 i pi q) for a rational q, normalized"""
    q = Fraction(q)
    return normalize(cyclo_root_of_unity(q.numerator, q.denominator))


def cyclo_arith(a, b, op: str) -> Cyclotomic:
    """Field arithmetic by operator name: add, sub, mul or div"""
    a, b = _coerce(a), _coerce(b)
    if a is None or b is None:
        raise TypeError("cyclo_arith takes Cyclotomic, Fraction or int operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_to_rational(value) -> Optional[Fraction]:
    """The rational value of a field element, or None when it is not rational"""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return value.to_rational()
