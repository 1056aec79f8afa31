"""The prime-gap series, its running supremum, and the theta inequality.

The series term for consecutive primes (p, p_next) is

    (log p - (p_next - p)) / (sqrt(p) * log(p)**2)

summed in ascending order under compensation. Its partial sums supply the
constants for the pointwise bound theta(p) <= p + c * sqrt(p) * log(p)**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .kahan import KahanSum
from .primes import PrimeTable, primes_up_to, table_for_count

DEFAULT_CHECKPOINT_EVERY = 100_000


def gap_term(p: int, p_next: int) -> float:
    """Series term for the consecutive prime pair (p, p_next)."""
    if p < 2 or p_next <= p:
        raise ValueError(f"need a consecutive prime pair, got ({p}, {p_next})")
    lp = math.log(p)
    return (lp - (p_next - p)) / (math.sqrt(p) * lp * lp)


@dataclass(frozen=True)
class GapSeriesState:
    """Final accumulator state after n terms ending at p_n."""

    n: int
    p_n: int
    partial_sum: float
    compensation: float
    running_sup: float
    sup_at: int


@dataclass(frozen=True)
class GapCheckpoint:
    n: int
    p_n: int
    gap: int
    term: float
    partial_sum: float
    running_sup: float


def series_scan(
    limit: int,
    *,
    checkpoint_every: int | None = None,
    on_checkpoint: Callable[[GapCheckpoint], None] | None = None,
    table: PrimeTable | None = None,
) -> GapSeriesState:
    """Sum the series over consecutive prime pairs drawn from primes <= limit.

    Term n uses the pair (p_n, p_{n+1}), so the last term is the one whose
    upper prime still fits under the limit. Accumulation is ascending with
    compensation; reruns are bit-identical. When a checkpoint callback is
    given it fires every `checkpoint_every` terms and always on the final
    term. Running_sup is the largest partial sum seen so far and sup_at the
    first index achieving it.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3 for at least one pair, got {limit}")
    if checkpoint_every is not None and checkpoint_every < 1:
        raise ValueError(f"checkpoint_every must be >= 1, got {checkpoint_every}")
    if table is None:
        table = primes_up_to(limit)
    if table.limit < limit:
        raise ValueError(f"prime table covers {table.limit}, scan needs {limit}")
    idx = table.pi(limit)
    primes = table.primes[:idx]
    if primes.size < 2:
        raise ValueError(f"no prime pair below {limit}")
    plist = primes.tolist()
    lps = np.log(primes).tolist()
    sqs = np.sqrt(primes).tolist()
    acc = KahanSum()
    sup = -math.inf
    sup_at = 0
    every = checkpoint_every or DEFAULT_CHECKPOINT_EVERY
    last = len(plist) - 1
    for i in range(last):
        gap = plist[i + 1] - plist[i]
        lp = lps[i]
        term = (lp - gap) / (sqs[i] * lp * lp)
        acc.add(term)
        n = i + 1
        if acc.value > sup:
            sup = acc.value
            sup_at = n
        if on_checkpoint is not None and (n % every == 0 or i == last - 1):
            on_checkpoint(GapCheckpoint(n=n, p_n=plist[i], gap=gap, term=term,
                                        partial_sum=acc.value, running_sup=sup))
    return GapSeriesState(n=last, p_n=plist[last - 1], partial_sum=acc.value,
                          compensation=acc.carry, running_sup=sup, sup_at=sup_at)


def equivalence_check(
    indices: Iterable[int],
    *,
    table: PrimeTable | None = None,
    rel_tol: float = 1e-12,
) -> bool:
    """Verify both algebraic forms of the term agree at the given indices.

    Form one is (1 - gap/log p) / (sqrt(p) log p), form two the production
    (log p - gap) / (sqrt(p) log(p)**2). Disagreement is measured against
    the term magnitude floored at 1/(sqrt(p) log(p)**2): when log p lands
    within float noise of the gap both forms cancel and a ratio against the
    tiny result itself would be meaningless.
    """
    idx = sorted(set(int(i) for i in indices))
    if not idx:
        return True
    if idx[0] < 1:
        raise ValueError(f"indices must be >= 1, got {idx[0]}")
    if table is None or table.count < idx[-1] + 1:
        table = table_for_count(idx[-1] + 1)
    for n in idx:
        p = table.nth(n)
        gap = table.gap(n)
        lp = math.log(p)
        sq = math.sqrt(p)
        a = (1.0 - gap / lp) / (sq * lp)
        b = (lp - gap) / (sq * lp * lp)
        scale = max(abs(a), abs(b), 1.0 / (sq * lp * lp))
        if abs(a - b) > rel_tol * scale:
            return False
    return True


def theta_bound_constants(limit: int, *, table: PrimeTable | None = None) -> list[tuple[int, float]]:
    """Constants c_n with c_{n+1} = c_n + term(n), as (index, value) pairs.

    The step recursion (plain accumulation) and the closed form (compensated
    partial sum of the series) are both computed; they must agree within
    1e-10 at every step, otherwise ArithmeticError. The returned values are
    the closed-form ones, starting at index 2 since c_2 equals the first
    term.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if table is None:
        table = primes_up_to(limit)
    idx = table.pi(limit)
    plist = table.primes[:idx].tolist()
    if len(plist) < 2:
        raise ValueError(f"no prime pair below {limit}")
    naive = 0.0
    acc = KahanSum()
    out: list[tuple[int, float]] = []
    for i in range(len(plist) - 1):
        gap = plist[i + 1] - plist[i]
        lp = math.log(plist[i])
        term = (lp - gap) / (math.sqrt(plist[i]) * lp * lp)
        naive += term
        acc.add(term)
        if abs(naive - acc.value) > 1e-10:
            raise ArithmeticError(
                f"step recursion drifted {naive - acc.value:.3e} from the closed form at n={i + 1}"
            )
        out.append((i + 2, acc.value))
    return out


@dataclass(frozen=True)
class ThetaCheckRecord:
    p_n: int
    theta: float
    c_needed: float
    satisfied: bool


@dataclass(frozen=True)
class ThetaCheckResult:
    limit: int
    c0: float
    records: list[ThetaCheckRecord]
    all_satisfied: bool
    max_c_needed: float
    max_c_needed_at: int
    first_failure: int | None
    checked: int


def theta_inequality_check(
    limit: int,
    c0: float,
    *,
    checkpoint_every: int | None = None,
    table: PrimeTable | None = None,
) -> ThetaCheckResult:
    """Check theta(p) <= p + c0 * sqrt(p) * log(p)**2 at every prime p <= limit.

    c_needed is the smallest constant that would make the bound tight at p;
    a prime satisfies the bound exactly when c_needed <= c0. Records are
    kept at the checkpoint cadence, always for the last prime, and always
    for the first failure if one occurs.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2 so there is a prime to check, got {limit}")
    if checkpoint_every is not None and checkpoint_every < 1:
        raise ValueError(f"checkpoint_every must be >= 1, got {checkpoint_every}")
    if table is None:
        table = primes_up_to(limit)
    if table.limit < limit:
        raise ValueError(f"prime table covers {table.limit}, check needs {limit}")
    idx = table.pi(limit)
    plist = table.primes[:idx].tolist()
    lps = np.log(table.primes[:idx]).tolist()
    sqs = np.sqrt(table.primes[:idx]).tolist()
    every = checkpoint_every or DEFAULT_CHECKPOINT_EVERY
    theta = KahanSum()
    records: list[ThetaCheckRecord] = []
    max_c = -math.inf
    max_at = plist[0]
    first_failure: int | None = None
    all_sat = True
    for i, p in enumerate(plist):
        lp = lps[i]
        theta.add(lp)
        c_needed = (theta.value - p) / (sqs[i] * lp * lp)
        sat = c_needed <= c0
        if c_needed > max_c:
            max_c = c_needed
            max_at = p
        n = i + 1
        keep = n % every == 0 or i == len(plist) - 1
        if not sat:
            all_sat = False
            if first_failure is None:
                first_failure = p
                keep = True
        if keep:
            records.append(ThetaCheckRecord(p_n=p, theta=theta.value, c_needed=c_needed, satisfied=sat))
    return ThetaCheckResult(
        limit=limit,
        c0=c0,
        records=records,
        all_satisfied=all_sat,
        max_c_needed=max_c,
        max_c_needed_at=max_at,
        first_failure=first_failure,
        checked=len(plist),
    )
