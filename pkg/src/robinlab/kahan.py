"""Compensated (Kahan) summation.

Every long accumulation in the package runs through KahanSum in a fixed
ascending order, so results are bit-identical from run to run and do not
depend on thread counts or chunk sizes.
"""

from __future__ import annotations

from typing import Iterable


class KahanSum:
    """Running compensated sum; `value` is the total, `carry` the correction."""

    __slots__ = ("value", "carry")

    def __init__(self, value: float = 0.0) -> None:
        self.value = value
        self.carry = 0.0

    def add(self, x: float) -> None:
        # classic Kahan update, carry holds the low-order bits lost by value
        y = x - self.carry
        t = self.value + y
        self.carry = (t - self.value) - y
        self.value = t


def kahan_sum(values: Iterable[float]) -> float:
    acc = KahanSum()
    for v in values:
        acc.add(v)
    return acc.value
