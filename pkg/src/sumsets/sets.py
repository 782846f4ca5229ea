"""Subsets of a finite abelian group and their sumset algebra.

An ElementSet stores its members as a bit vector (Python int) keyed by
mixed-radix element index, which is what the kernels operate on.  All
public operations validate group membership and leave inputs untouched.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from . import kernels
from .group import (
    GroupElement,
    GroupSpec,
    SubgroupProjection,
    _check_element,
    element_of,
    index_of,
)

__all__ = [
    "BudgetError",
    "ElementSet",
    "GroupMismatchError",
    "empty_set",
    "format_set",
    "from_elements",
    "from_indices",
    "full_set",
    "graded_restricted_sum",
    "iterated_sumset",
    "oracle_restricted_sumset",
    "parse_set",
    "project",
    "restricted_sumset",
    "singleton",
    "sumset",
    "translate",
    "translate_index",
    "zero_singleton",
]

ORACLE_BUDGET = 2_000_000


class GroupMismatchError(ValueError):
    """Operands live in different groups."""


class BudgetError(RuntimeError):
    """A brute-force enumeration would exceed its combination budget."""


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class ElementSet:
    """An immutable subset of a fixed group."""

    group: GroupSpec
    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.bits < 1 << self.group.order:
            raise ValueError("bit vector does not fit the group order")

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def is_empty(self) -> bool:
        return self.bits == 0

    def indices(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def elements(self) -> Iterator[GroupElement]:
        for i in _iter_bits(self.bits):
            yield element_of(self.group, i)

    def has_index(self, i: int) -> bool:
        return 0 <= i < self.group.order and self.bits >> i & 1 == 1

    def union(self, other: "ElementSet") -> "ElementSet":
        _same_group(self, other)
        return ElementSet(self.group, self.bits | other.bits)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        _same_group(self, other)
        return ElementSet(self.group, self.bits & other.bits)

    def difference(self, other: "ElementSet") -> "ElementSet":
        _same_group(self, other)
        return ElementSet(self.group, self.bits & ~other.bits)

    def is_subset_of(self, other: "ElementSet") -> bool:
        _same_group(self, other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "ElementSet") -> bool:
        _same_group(self, other)
        return self.bits & other.bits == 0

    def __repr__(self) -> str:
        from .group import format_group

        return f"ElementSet({format_group(self.group)}, {{{format_set(self)}}})"


def _same_group(a: ElementSet, b: ElementSet) -> None:
    if a.group != b.group:
        raise GroupMismatchError(f"sets live in different groups: {a.group.moduli} vs {b.group.moduli}")


def empty_set(g: GroupSpec) -> ElementSet:
    return ElementSet(g, 0)


def full_set(g: GroupSpec) -> ElementSet:
    return ElementSet(g, (1 << g.order) - 1)


def singleton(g: GroupSpec, i: int) -> ElementSet:
    if not 0 <= i < g.order:
        raise ValueError(f"index {i} out of range for group of order {g.order}")
    return ElementSet(g, 1 << i)


def zero_singleton(g: GroupSpec) -> ElementSet:
    return ElementSet(g, 1)


def from_indices(g: GroupSpec, indices: Iterable[int]) -> ElementSet:
    bits = 0
    for i in indices:
        if not 0 <= i < g.order:
            raise ValueError(f"index {i} out of range for group of order {g.order}")
        bits |= 1 << i
    return ElementSet(g, bits)


def from_elements(g: GroupSpec, elements: Iterable[Sequence[int]]) -> ElementSet:
    bits = 0
    for x in elements:
        bits |= 1 << index_of(g, tuple(x))
    return ElementSet(g, bits)


_TUPLE_TOKEN = re.compile(r"\(([^()]*)\)")


def parse_set(g: GroupSpec, text: str) -> ElementSet:
    """Parse a set literal: bare indices ``0,5,7`` or tuples ``(0,1),(1,2)``."""
    s = text.strip()
    if not s:
        return empty_set(g)
    if "(" in s:
        covered = _TUPLE_TOKEN.sub("", s).replace(",", "").strip()
        if covered:
            raise ValueError(f"bad set literal {text!r}")
        elems = []
        for body in _TUPLE_TOKEN.findall(s):
            parts = [tok.strip() for tok in body.split(",")]
            if not all(re.fullmatch(r"-?\d+", tok) for tok in parts):
                raise ValueError(f"bad element tuple ({body}) in set literal")
            elems.append(tuple(int(tok) for tok in parts))
        return from_elements(g, elems)
    indices = []
    for tok in s.split(","):
        tok = tok.strip()
        if not re.fullmatch(r"-?\d+", tok):
            raise ValueError(f"bad index {tok!r} in set literal")
        indices.append(int(tok))
    return from_indices(g, indices)


def format_set(a: ElementSet) -> str:
    """Inverse of parse_set; members sorted by index."""
    if a.group.rank == 1:
        return ",".join(str(i) for i in a.indices())
    return ",".join("(" + ",".join(str(c) for c in x) + ")" for x in a.elements())


def translate(a: ElementSet, x: GroupElement) -> ElementSet:
    _check_element(a.group, x)
    return ElementSet(a.group, kernels.active.translate_bits(a.bits, tuple(x), a.group.moduli))


def translate_index(a: ElementSet, i: int) -> ElementSet:
    return translate(a, element_of(a.group, i))


def project(a: ElementSet, proj: SubgroupProjection) -> ElementSet:
    """Image of the set in the Z_p quotient."""
    if a.group != proj.parent:
        raise GroupMismatchError("set does not live in the projection's parent group")
    bits = 0
    for i in a.indices():
        bits |= 1 << proj.label_of_index(i)
    return ElementSet(proj.quotient, bits)


def sumset(a: ElementSet, b: ElementSet) -> ElementSet:
    """A + B; empty if either operand is empty."""
    _same_group(a, b)
    return ElementSet(a.group, kernels.active.sumset_bits(a.bits, b.bits, a.group.moduli))


def iterated_sumset(parts: Sequence[ElementSet], *, group: GroupSpec | None = None) -> ElementSet:
    """A_1 + ... + A_t, the empty list giving {0} (group then required)."""
    if not parts:
        if group is None:
            raise ValueError("an empty part list needs an explicit group")
        return zero_singleton(group)
    g = parts[0].group
    if group is not None and group != g:
        raise GroupMismatchError("parts do not live in the stated group")
    out = zero_singleton(g)
    for part in parts:
        out = sumset(out, part)
    return out


def restricted_sumset(a: ElementSet, k: int) -> ElementSet:
    """Sums of k pairwise-distinct members of a; empty when k > |a|, {0} when k = 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return zero_singleton(a.group)
    if k > a.cardinality:
        return empty_set(a.group)
    return ElementSet(a.group, kernels.active.restricted_sumset_bits(a.bits, k, a.group.moduli))


def graded_restricted_sum(parts: Sequence[tuple[ElementSet, int]], *, group: GroupSpec | None = None) -> ElementSet:
    """l_1^(A_1) + ... + l_m^(A_m) with pairwise-distinct picks inside each part.

    Empty as soon as one grade exceeds its part's size; all grades zero
    gives {0}.
    """
    if not parts:
        if group is None:
            raise ValueError("an empty part list needs an explicit group")
        return zero_singleton(group)
    g = parts[0][0].group
    if group is not None and group != g:
        raise GroupMismatchError("parts do not live in the stated group")
    out = zero_singleton(g)
    for part, grade in parts:
        out = sumset(out, restricted_sumset(part, grade))
        if not out:
            return out
    return out


@lru_cache(maxsize=128)
def _index_add_table(g: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Full index-addition table, built from coordinate arithmetic only."""
    elems = [element_of(g, i) for i in range(g.order)]
    table = []
    for x in elems:
        row = []
        for y in elems:
            row.append(index_of(g, tuple((a + b) % n for a, b, n in zip(x, y, g.moduli))))
        table.append(tuple(row))
    return tuple(table)


def oracle_restricted_sumset(a: ElementSet, k: int, budget: int = ORACLE_BUDGET) -> ElementSet:
    """Brute-force restricted sumset by enumerating all k-member combinations.

    Independent of the bit kernels; meant as ground truth at desk scale.
    Raises BudgetError when C(|a|, k) exceeds the budget.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = a.cardinality
    if k > n:
        return empty_set(a.group)
    if comb(n, k) > budget:
        raise BudgetError(f"C({n},{k}) = {comb(n, k)} exceeds the budget of {budget}")
    table = _index_add_table(a.group)
    members = list(a.indices())
    bits = 0
    for combo in itertools.combinations(members, k):
        total = 0
        for i in combo:
            total = table[total][i]
        bits |= 1 << total
    return ElementSet(a.group, bits)
