"""Closed-form lower bounds for sumset sizes, and instance checks.

Every bound is of the shape min{p(G), f(sizes)} with p(G) the least prime
divisor of the group order.  Bounds are returned unclamped: f can be
non-positive (tiny sets, large k), and the minimum is reported as-is so
callers can tell a vacuous bound from a sharp one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .group import GroupSpec, format_group, least_prime_divisor
from .sets import ElementSet, GroupMismatchError, format_set, restricted_sumset

__all__ = [
    "BoundReport",
    "CSV_COLUMNS",
    "check_instance",
    "csv_row",
    "eh_pair_bound",
    "iterated_bound",
    "pair_bound",
    "restricted_bound",
]


def pair_bound(g: GroupSpec, size_a: int, size_b: int) -> int:
    """min{p(G), |A| + |B| - 1} for non-empty A and B."""
    if size_a < 1 or size_b < 1:
        raise ValueError("set sizes must be >= 1")
    return min(least_prime_divisor(g), size_a + size_b - 1)


def iterated_bound(g: GroupSpec, sizes: Sequence[int]) -> int:
    """min{p(G), sum |A_i| - t + 1} over t non-empty parts."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("need at least one part size")
    if any(s < 1 for s in sizes):
        raise ValueError("set sizes must be >= 1")
    return min(least_prime_divisor(g), sum(sizes) - len(sizes) + 1)


def eh_pair_bound(g: GroupSpec, size_a: int) -> int:
    """min{p(G), 2|A| - 3}, the distinct-pair specialization."""
    if size_a < 1:
        raise ValueError("set size must be >= 1")
    return min(least_prime_divisor(g), 2 * size_a - 3)


def restricted_bound(g: GroupSpec, size_a: int, k: int) -> int:
    """min{p(G), k|A| - k^2 + 1}, the k-fold distinct-sum bound."""
    if size_a < 1:
        raise ValueError("set size must be >= 1")
    if k < 0:
        raise ValueError("k must be non-negative")
    return min(least_prime_divisor(g), k * size_a - k * k + 1)


@dataclass(frozen=True)
class BoundReport:
    group: GroupSpec
    set_indices: tuple[int, ...]
    set_size: int
    k: int
    p_of_g: int
    bound: int
    actual: int
    satisfied: bool
    equality: bool


CSV_COLUMNS = ("group", "set", "k", "p_of_G", "bound", "actual", "satisfied", "equality")


def csv_row(report: BoundReport) -> tuple[str, ...]:
    from .sets import from_indices

    rendered = format_set(from_indices(report.group, report.set_indices))
    return (
        format_group(report.group),
        rendered,
        str(report.k),
        str(report.p_of_g),
        str(report.bound),
        str(report.actual),
        str(report.satisfied).lower(),
        str(report.equality).lower(),
    )


def check_instance(g: GroupSpec, a: ElementSet, k: int) -> BoundReport:
    """Compute |k^(a)| and compare it against restricted_bound."""
    if a.group != g:
        raise GroupMismatchError("set does not live in the stated group")
    if a.is_empty():
        raise ValueError("set must be non-empty")
    actual = restricted_sumset(a, k).cardinality
    bound = restricted_bound(g, a.cardinality, k)
    return BoundReport(
        group=g,
        set_indices=tuple(a.indices()),
        set_size=a.cardinality,
        k=k,
        p_of_g=least_prime_divisor(g),
        bound=bound,
        actual=actual,
        satisfied=actual >= bound,
        equality=actual == bound,
    )
