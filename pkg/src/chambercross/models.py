# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: © 2025 Brett Smith <xbcsmith@gmail.com>
# SPDX-License-Identifier: Apache-2.0

from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .schemas import EvalDocument, SuiteReport

# Failures kept per suite report; the count is always exact.
MAX_REPORTED_FAILURES = 20


class OutputFormat(Enum):
    JSON = "json"
    TEXT = "text"

    @classmethod
    def parse(cls, value: str) -> "OutputFormat":
        return cls(value.lower())


@dataclass
class Model:
    """Base class for data objects. Provides as_dict"""

    def as_dict(self):
        """Get a dictionary contain object properties"""
        return asdict(self)


@dataclass
class SuiteOutcome(Model):
    """Running tally of one invariant family"""

    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, message: str = "") -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(message or f"{self.name} check {self.checks} failed")
        return ok

    def fail(self, message: str):
        self.checks += 1
        self.failures.append(message)

    def report(self) -> SuiteReport:
        failures = list(self.failures[:MAX_REPORTED_FAILURES])
        if len(self.failures) > MAX_REPORTED_FAILURES:
            failures.append(f"... {len(self.failures) - MAX_REPORTED_FAILURES} more")
        return SuiteReport(name=self.name, passed=self.passed, checks=self.checks, failures=failures)


@dataclass
class EvalOutcome(Model):
    """Solved value and brute-force count at one point"""

    point: Tuple[int, ...]
    chamber: str
    value: Optional[Fraction] = None
    brute: Optional[int] = None

    @property
    def match(self) -> Optional[bool]:
        if self.value is None or self.brute is None:
            return None
        return self.value == self.brute

    def document(self) -> EvalDocument:
        return EvalDocument(
            point=list(self.point),
            chamber=self.chamber,
            value=str(self.value) if self.value is not None else None,
            brute=self.brute,
            match=self.match,
        )
