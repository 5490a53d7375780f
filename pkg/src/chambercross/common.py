# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

"""Text rendering, parsing and output documents.

Polynomials render in graded lex order over a1..ar, e.g.
``1/4*a1^2 + 1/2*a1*a2 - a2 + 7/8``. A cyclotomic constant renders as a
sum of powers ``E(M)^k`` of the primitive root e^(2 i pi / M), and a
character e^(2 i pi <y, a>) as ``E(M)^(k1*a1 + ... + kr*ar)`` with
y = k / M. Every string rendered here parses back with ``parse_quasi``.
"""

import json
import logging
import re
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

from .chambers import ChamberComplex, unimodular_and_period
from .errors import InputFormatError, RankMismatchError
from .exactnum import Cyclotomic, exp2pi
from .polyalg import MultiPoly, QuasiPoly
from .schemas import (
    ChamberDocument,
    ConfigDocument,
    CosetDocument,
    PolynomialDocument,
    QuasiPolynomialDocument,
    ShiftDocument,
    SolutionDocument,
    WallDocument,
)

logger = logging.getLogger(__name__)


def _signed_join(pieces: List[str]) -> str:
    if not pieces:
        return "0"
    text = pieces[0]
    for piece in pieces[1:]:
        text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return text


def _is_compound(text: str) -> bool:
    return " + " in text or " - " in text


def format_scalar(value) -> str:
    if isinstance(value, Cyclotomic):
        if value.order == 1:
            return str(value.coeffs[0])
        pieces = []
        for k, c in enumerate(value.coeffs):
            if c == 0:
                continue
            if k == 0:
                pieces.append(str(c))
                continue
            root = f"E({value.order})^{k}"
            if c == 1:
                pieces.append(root)
            elif c == -1:
                pieces.append(f"-{root}")
            else:
                pieces.append(f"{c}*{root}")
        return _signed_join(pieces)
    return str(Fraction(value))


def _monomial(exponent: Tuple[int, ...]) -> str:
    factors = []
    for i, e in enumerate(exponent):
        if e == 1:
            factors.append(f"a{i + 1}")
        elif e > 1:
            factors.append(f"a{i + 1}^{e}")
    return "*".join(factors)


def format_poly(poly: MultiPoly) -> str:
    pieces = []
    for exponent, coeff in poly.sorted_terms():
        mono = _monomial(exponent)
        scalar = format_scalar(coeff)
        if _is_compound(scalar) or (scalar.startswith("-") and "E(" in scalar):
            pieces.append(f"({scalar})*{mono}" if mono else f"({scalar})")
        elif not mono:
            pieces.append(scalar)
        elif scalar == "1":
            pieces.append(mono)
        elif scalar == "-1":
            pieces.append(f"-{mono}")
        else:
            pieces.append(f"{scalar}*{mono}")
    return _signed_join(pieces)


def format_character(shift) -> str:
    """E(M)^(k1*a1 + ...) for the character of a nonzero shift"""
    order = lcm(1, *(Fraction(y).denominator for y in shift))
    linear = MultiPoly.linear([Fraction(y) * order for y in shift])
    return f"E({order})^({format_poly(linear)})"


def format_quasi_shifts(quasi: QuasiPoly) -> str:
    pieces = []
    for y, poly in quasi.sorted_shifts():
        if not any(y):
            pieces.append(f"({format_poly(poly)})")
        else:
            pieces.append(f"({format_poly(poly)})*{format_character(y)}")
    return " + ".join(pieces) if pieces else "0"


TOKEN = re.compile(r"\s*(?:(\d+)|(a\d+)|(E)|(\^|\*|/|\+|-|\(|\)))")


def _tokenize(text: str) -> List[str]:
    tokens = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = TOKEN.match(text, position)
        if not match or match.end() == position:
            raise InputFormatError(f"cannot parse {text!r} at position {position}")
        tokens.append(next(g for g in match.groups() if g is not None))
        position = match.end()
    return tokens


class _Parser:
    """Recursive descent over + - * / ^ with E(M) roots and a1..ar variables"""

    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.tokens = _tokenize(text)
        self.position = 0

    def error(self, message: str):
        raise InputFormatError(f"{message} in {self.text!r}")

    def peek(self) -> Optional[str]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            self.error(f"expected {expected or 'a token'}, found {token!r}")
        self.position += 1
        return token

    def parse(self) -> QuasiPoly:
        value = self.expression()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expression(self) -> QuasiPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                value = value + self.term()
            else:
                value = value - self.term()
        return value

    def term(self) -> QuasiPoly:
        value = self.factor()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                value = value * self.factor()
            else:
                value = value * self._reciprocal(self.factor())
        return value

    def _reciprocal(self, value: QuasiPoly) -> Fraction:
        poly = value.polynomial_part()
        if not value.is_polynomial() or poly.degree() > 0 or not poly.is_rational() or not poly:
            self.error("division is only by nonzero rational constants")
        return 1 / Fraction(poly.constant_term())

    def factor(self) -> QuasiPoly:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> QuasiPoly:
        token = self.peek()
        if token == "E":
            return self.root()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exponent = int(self.take())
            result = QuasiPoly.constant(self.rank, 1)
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def root(self) -> QuasiPoly:
        self.take("E")
        self.take("(")
        order = int(self.take())
        self.take(")")
        if self.peek() != "^":
            return QuasiPoly.constant(self.rank, exp2pi(Fraction(1, order)))
        self.take("^")
        if self.peek() != "(":
            return QuasiPoly.constant(self.rank, exp2pi(Fraction(int(self.take()), order)))
        self.take("(")
        linear = self.expression()
        self.take(")")
        poly = linear.polynomial_part()
        if not linear.is_polynomial() or poly.degree() > 1 or poly.constant_term() != 0:
            self.error("character exponents are linear forms without constant term")
        shift = []
        for i in range(self.rank):
            exponent = tuple(int(k == i) for k in range(self.rank))
            coeff = Fraction(poly.coefficient(exponent))
            if coeff.denominator != 1:
                self.error("character exponents have integer coefficients")
            shift.append(coeff / order)
        return QuasiPoly.character(shift)

    def atom(self) -> QuasiPoly:
        token = self.take()
        if token == "(":
            value = self.expression()
            self.take(")")
            return value
        if token.isdigit():
            return QuasiPoly.constant(self.rank, int(token))
        if token.startswith("a"):
            index = int(token[1:])
            if not 1 <= index <= self.rank:
                raise RankMismatchError(f"variable {token} in rank {self.rank}")
            return QuasiPoly.from_poly(MultiPoly.variable(self.rank, index - 1))
        self.error(f"unexpected {token!r}")


def parse_quasi(text: str, rank: int) -> QuasiPoly:
    """Parse a rendered polynomial or quasi-polynomial"""
    return _Parser(text, rank).parse()


def parse_poly(text: str, rank: int) -> MultiPoly:
    value = parse_quasi(text, rank)
    if not value.is_polynomial():
        raise InputFormatError(f"{text!r} is not a polynomial")
    return value.polynomial_part()


def poly_document(poly: MultiPoly) -> PolynomialDocument:
    return PolynomialDocument(text=format_poly(poly), degree=poly.degree())


def quasi_document(quasi: QuasiPoly, shift_form: bool = False) -> QuasiPolynomialDocument:
    document = QuasiPolynomialDocument(period=quasi.period, text=format_quasi_shifts(quasi))
    if shift_form:
        document.shifts = [
            ShiftDocument(shift=[str(y) for y in shift], polynomial=format_poly(poly))
            for shift, poly in quasi.sorted_shifts()
        ]
    else:
        document.cosets = [CosetDocument(residue=list(h), polynomial=format_poly(p)) for h, p in quasi.to_cosets()]
    return document


def solution_document(complex_: ChamberComplex, solution=None, shift_form: bool = False) -> SolutionDocument:
    """Walls and chambers, with the chamber functions when a solution is given"""
    config = complex_.config
    unimodular, period = unimodular_and_period(config)
    chambers = []
    for chamber in complex_.interior:
        document = ChamberDocument(
            id=chamber.id,
            rays=[list(r) for r in chamber.rays],
            witness=[str(x) for x in chamber.witness],
            adjacency=[list(a) for a in chamber.adjacency],
        )
        if solution is not None:
            document.volume_poly = poly_document(solution.volumes[chamber.id])
            document.partition_qp = quasi_document(solution.partitions[chamber.id], shift_form)
        chambers.append(document)
    return SolutionDocument(
        config=ConfigDocument(
            name=config.name,
            rank=config.rank,
            vectors=[list(v) for v in config.original],
            working_vectors=[list(v) for v in config.vectors],
            basis=[list(b) for b in config.basis],
            unimodular=unimodular,
            period=period,
        ),
        walls=[
            WallDocument(id=w.id, normal=list(w.normal), on_wall=list(w.on), facet=w.is_facet) for w in complex_.walls
        ],
        chambers=chambers,
    )


def dump_json(model) -> str:
    return json.dumps(model.model_dump(), indent=2)


def solution_text(document: SolutionDocument) -> str:
    """Human readable rendering of a solution document"""
    config = document.config
    lines = [
        f"configuration {config.name}: rank {config.rank}, {len(config.vectors)} vectors",
        f"unimodular: {config.unimodular}, period: {config.period}",
        f"walls: {len(document.walls)}, chambers: {len(document.chambers)}",
    ]
    for chamber in document.chambers:
        lines.append("")
        lines.append(f"c{chamber.id}: rays {chamber.rays}")
        if chamber.volume_poly is not None:
            lines.append(f"  v = {chamber.volume_poly.text}")
        if chamber.partition_qp is not None:
            qp = chamber.partition_qp
            if qp.cosets is not None:
                for coset in qp.cosets:
                    lines.append(f"  k on {tuple(coset.residue)} mod {qp.period} = {coset.polynomial}")
            else:
                lines.append(f"  k = {qp.text}")
    return "\n".join(lines)
