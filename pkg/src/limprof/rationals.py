"""Deterministic enumeration of rationals via the Calkin-Wilf recurrence.

q_0 = 1 and q_{t+1} = 1 / (2*floor(q_t) - q_t + 1) visits every positive
rational exactly once; restricting to values below 1 enumerates the
rationals of the open unit interval without repetition.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator


def calkin_wilf() -> Iterator[Fraction]:
    q = Fraction(1)
    while True:
        yield q
        q = 1 / (2 * Fraction(math.floor(q)) - q + 1)


def unit_rationals() -> Iterator[Fraction]:
    """Rationals in (0, 1), each exactly once: 1/2, 1/3, 2/3, 1/4, 3/5, ..."""
    for q in calkin_wilf():
        if q < 1:
            yield q


def first_unit_rationals(count: int) -> tuple[Fraction, ...]:
    out = []
    it = unit_rationals()
    for _ in range(count):
        out.append(next(it))
    return tuple(out)
