"""Partial Euler products, the Mertens deviation, and rigorous zeta tails.

All products live on the log scale. log(1 - t) always goes through log1p so
tiny t keep full precision, and partial sums accumulate in ascending prime
order under compensation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .kahan import KahanSum
from .primes import PrimeTable, table_for_count
from .robin import EULER_GAMMA

# p**-(k+1) underflows float64 well before this cap for every prime, so
# larger exponents only saturate the products anyway
MAX_EXPONENT = 60


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_EXPONENT:
        raise ValueError(f"k must be in [1, {MAX_EXPONENT}], got {k}")


def _table_for(m: int, table: PrimeTable | None) -> PrimeTable:
    if table is not None and table.count >= m:
        return table
    return table_for_count(m)


def mertens_product_log(m: int, *, table: PrimeTable | None = None) -> float:
    """log of the product of (1 - 1/p)**-1 over the first m primes."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    table = _table_for(m, table)
    acc = KahanSum()
    for p in table.primes[:m].tolist():
        acc.add(-math.log1p(-1.0 / p))
    return acc.value


def mertens_deviation(m: int, *, table: PrimeTable | None = None) -> float:
    """Gap between the partial Mertens product and its asymptote.

    Equals mertens_product_log(m) - (log log p_m + gamma); tends to zero as
    m grows. Note log log p_1 = log log 2 is negative, which is fine here.
    """
    table = _table_for(m, table)
    p_m = table.nth(m)
    return mertens_product_log(m, table=table) - (math.log(math.log(p_m)) + EULER_GAMMA)


def _log_zeta_partial(m: int, k: int, table: PrimeTable) -> float:
    """log of the product of (1 - p**-(k+1))**-1 over the first m primes."""
    acc = KahanSum()
    s = -(k + 1)
    for p in table.primes[:m].tolist():
        acc.add(-math.log1p(-float(p) ** s))
    return acc.value


@dataclass(frozen=True)
class ConditionVerdict:
    """Product-form check: lhs_log <= rhs_log means the condition holds."""

    lhs_log: float
    rhs_log: float
    holds: bool


def product_condition(m: int, k: int, *, table: PrimeTable | None = None) -> ConditionVerdict:
    """Check the finite product condition at the first m primes.

    lhs is log of prod (1-1/p)**-1 * prod (1 - p**-(k+1)); rhs is
    log(exp(gamma) * log p_m). Both sides on the log scale.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _check_k(k)
    table = _table_for(m, table)
    acc = KahanSum()
    s = -(k + 1)
    for p in table.primes[:m].tolist():
        acc.add(math.log1p(-float(p) ** s))
    lhs = mertens_product_log(m, table=table) + acc.value
    rhs = EULER_GAMMA + math.log(math.log(table.nth(m)))
    return ConditionVerdict(lhs_log=lhs, rhs_log=rhs, holds=lhs <= rhs)


@dataclass(frozen=True)
class DeficitVerdict:
    """Rearranged check: deviation <= log_zeta_partial means it holds."""

    deviation: float
    log_zeta_partial: float
    holds: bool


def deficit_condition(m: int, k: int, *, table: PrimeTable | None = None) -> DeficitVerdict:
    """Same condition as product_condition, rearranged around the deviation.

    The Mertens deviation at p_m must not exceed the log of the partial zeta
    product at exponent k+1. Algebraically identical to product_condition;
    computed independently so the two can cross-check each other.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _check_k(k)
    table = _table_for(m, table)
    dev = mertens_deviation(m, table=table)
    tail = _log_zeta_partial(m, k, table)
    return DeficitVerdict(deviation=dev, log_zeta_partial=tail, holds=dev <= tail)


def tail_bound_log(s: float, x: float) -> float:
    """Closed-form bound s/(s-1) * x**(1-s) for the log of a zeta tail at x.

    Dominates the log of the missing Euler factors over primes > x for any
    s > 1, x > 0.
    """
    if s <= 1:
        raise ValueError(f"tail bound needs s > 1, got {s}")
    if x <= 0:
        raise ValueError(f"tail bound needs x > 0, got {x}")
    return s / (s - 1.0) * x ** (1.0 - s)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def zeta_enclosure(k: int, m: int, *, table: PrimeTable | None = None) -> Interval:
    """Two-sided enclosure of zeta(k+1) from the first m Euler factors.

    Lower end is the partial product, upper end multiplies in the closed-form
    tail bound anchored at p_m. The true value always lies inside.
    """
    _check_k(k)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    table = _table_for(m, table)
    log_partial = _log_zeta_partial(m, k, table)
    lo = math.exp(log_partial)
    hi = math.exp(log_partial + tail_bound_log(float(k + 1), float(table.nth(m))))
    return Interval(lo=lo, hi=hi)


@dataclass(frozen=True)
class ProductState:
    """Snapshot of the product accumulators after the first m primes."""

    m: int
    p_m: int
    log_mertens: float
    deviation: float
    k: int | None = None
    log_zeta_partial: float | None = None


def product_state(m: int, k: int | None = None, *, table: PrimeTable | None = None) -> ProductState:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    table = _table_for(m, table)
    lm = mertens_product_log(m, table=table)
    dev = mertens_deviation(m, table=table)
    lz = None
    if k is not None:
        _check_k(k)
        lz = _log_zeta_partial(m, k, table)
    return ProductState(m=m, p_m=table.nth(m), log_mertens=lm, deviation=dev, k=k,
                        log_zeta_partial=lz)


@dataclass(frozen=True)
class ConditionRow:
    """One sweep row; carries both forms of the check for cross-validation."""

    m: int
    p_m: int
    k: int
    lhs_log: float
    rhs_log: float
    holds: bool
    deviation: float
    log_zeta_partial: float
    deficit_holds: bool


@dataclass
class SweepSummary:
    m_max: int
    p_max: int
    first_hold: dict[int, int | None]
    final_deviation: float


def condition_sweep(
    m_max: int,
    ks: Sequence[int],
    *,
    checkpoint_every: int = 1,
    table: PrimeTable | None = None,
    on_row: Callable[[ConditionRow], None] | None = None,
) -> SweepSummary:
    """Incremental sweep of the condition over m = 1..m_max for each k.

    All accumulators advance one prime at a time in ascending order, so row
    values are bit-identical to the one-shot functions at the same m. Rows
    are delivered at the checkpoint cadence plus always at m_max; first-hold
    tracking inspects every m regardless of cadence.
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    if checkpoint_every < 1:
        raise ValueError(f"checkpoint_every must be >= 1, got {checkpoint_every}")
    ks = list(ks)
    if not ks:
        raise ValueError("need at least one k")
    for k in ks:
        _check_k(k)
    table = _table_for(m_max, table)
    mert = KahanSum()
    prod_acc = {k: KahanSum() for k in ks}  # sum of log1p(-p**-(k+1)), negative
    zeta_acc = {k: KahanSum() for k in ks}  # sum of -log1p(-p**-(k+1)), positive
    first_hold: dict[int, int | None] = {k: None for k in ks}
    dev = 0.0
    p = 2
    for m in range(1, m_max + 1):
        p = int(table.primes[m - 1])
        pf = float(p)
        mert.add(-math.log1p(-1.0 / pf))
        loglog = math.log(math.log(pf))
        rhs = EULER_GAMMA + loglog
        dev = mert.value - (loglog + EULER_GAMMA)
        emit = on_row is not None and (m % checkpoint_every == 0 or m == m_max)
        for k in ks:
            t = pf ** (-(k + 1))
            prod_acc[k].add(math.log1p(-t))
            zeta_acc[k].add(-math.log1p(-t))
            lhs = mert.value + prod_acc[k].value
            holds = lhs <= rhs
            if holds and first_hold[k] is None:
                first_hold[k] = m
            if emit:
                on_row(ConditionRow(
                    m=m, p_m=p, k=k, lhs_log=lhs, rhs_log=rhs, holds=holds,
                    deviation=dev, log_zeta_partial=zeta_acc[k].value,
                    deficit_holds=dev <= zeta_acc[k].value,
                ))
    return SweepSummary(m_max=m_max, p_max=p, first_hold=first_hold, final_deviation=dev)
