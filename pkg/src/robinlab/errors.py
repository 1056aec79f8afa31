"""Shared exception types and the memory budget guard."""

from __future__ import annotations

import os

ENV_MEM_BUDGET_MB = "ROBINLAB_MEM_BUDGET_MB"
DEFAULT_MEM_BUDGET_MB = 4096


class CapacityError(RuntimeError):
    """Raised when a computation would exceed a capacity limit.

    Covers both the configurable memory budget for table allocations and
    exact-integer results that would leave the 64-bit range the package
    promises to stay inside.
    """


def memory_budget_bytes() -> int:
    """Current allocation budget in bytes, from ROBINLAB_MEM_BUDGET_MB."""
    raw = os.environ.get(ENV_MEM_BUDGET_MB, "")
    try:
        mb = int(raw) if raw else DEFAULT_MEM_BUDGET_MB
    except ValueError as exc:
        raise CapacityError(f"{ENV_MEM_BUDGET_MB} must be an integer, got {raw!r}") from exc
    if mb < 1:
        raise CapacityError(f"{ENV_MEM_BUDGET_MB} must be positive, got {mb}")
    return mb * (1 << 20)


def require_capacity(nbytes: int, what: str) -> None:
    """Fail with CapacityError if an allocation would blow the budget."""
    budget = memory_budget_bytes()
    if nbytes > budget:
        raise CapacityError(
            f"{what} needs about {nbytes} bytes but the budget is {budget} "
            f"(raise {ENV_MEM_BUDGET_MB} to allow this)"
        )
