"""Finite abelian groups presented as ordered products of cyclic factors.

Elements are coordinate tuples.  Every element also has a canonical
mixed-radix index with the last coordinate varying fastest; that index
fixes the bit layout used by the set machinery, so all modules must agree
on it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "GroupElement",
    "GroupSpec",
    "InvalidElementError",
    "SubgroupProjection",
    "TrivialGroupError",
    "add",
    "add_indices",
    "canonicalize_spec",
    "element_of",
    "enumerate_abelian_groups",
    "format_group",
    "index_of",
    "least_prime_divisor",
    "neg",
    "neg_index",
    "parse_group",
    "prime_index_subgroup",
    "scale",
    "scale_index",
    "sub_indices",
    "zero",
]

GroupElement = tuple[int, ...]


class TrivialGroupError(ValueError):
    """The requested group has fewer than two elements."""


class InvalidElementError(ValueError):
    """Coordinates do not form a valid element of the group."""


@dataclass(frozen=True)
class GroupSpec:
    """An abelian group Z_{n_1} x ... x Z_{n_d} with every n_j >= 2."""

    moduli: tuple[int, ...]
    order: int = field(init=False)
    strides: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        if not moduli:
            raise TrivialGroupError("trivial group: no cyclic factors")
        if any(n < 2 for n in moduli):
            raise ValueError(f"every modulus must be >= 2, got {moduli}")
        strides = [1] * len(moduli)
        for j in range(len(moduli) - 2, -1, -1):
            strides[j] = strides[j + 1] * moduli[j + 1]
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "order", strides[0] * moduli[0])
        object.__setattr__(self, "strides", tuple(strides))

    @property
    def rank(self) -> int:
        return len(self.moduli)


def canonicalize_spec(moduli: Sequence[int]) -> GroupSpec:
    """Build a GroupSpec from a modulus list, dropping unit factors.

    >>> canonicalize_spec([1, 4, 1, 3]).moduli
    (4, 3)
    """
    entries = [int(n) for n in moduli]
    if any(n < 1 for n in entries):
        raise ValueError(f"every modulus must be >= 1, got {entries}")
    kept = tuple(n for n in entries if n > 1)
    if not kept:
        raise TrivialGroupError("trivial group: order 1")
    return GroupSpec(kept)


def parse_group(text: str) -> GroupSpec:
    """Parse a group string such as ``Z4xZ3`` (case-insensitive)."""
    tokens = re.split(r"[xX]", text.strip())
    moduli = []
    for token in tokens:
        m = re.fullmatch(r"[zZ](\d+)", token.strip())
        if m is None:
            raise ValueError(f"bad group token {token.strip()!r} in {text!r}")
        moduli.append(int(m.group(1)))
    return canonicalize_spec(moduli)


def format_group(g: GroupSpec) -> str:
    return "x".join(f"Z{n}" for n in g.moduli)


def _least_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def least_prime_divisor(g: GroupSpec) -> int:
    return _least_prime_factor(g.order)


def zero(g: GroupSpec) -> GroupElement:
    return (0,) * g.rank


def _check_element(g: GroupSpec, x: Sequence[int]) -> None:
    if len(x) != g.rank:
        raise InvalidElementError(f"element {tuple(x)} has {len(x)} coordinates, expected {g.rank}")
    for c, n in zip(x, g.moduli):
        if not 0 <= c < n:
            raise InvalidElementError(f"coordinate {c} out of range for modulus {n} in {tuple(x)}")


def add(g: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    _check_element(g, x)
    _check_element(g, y)
    return tuple((a + b) % n for a, b, n in zip(x, y, g.moduli))


def neg(g: GroupSpec, x: GroupElement) -> GroupElement:
    _check_element(g, x)
    return tuple((-a) % n for a, n in zip(x, g.moduli))


def scale(g: GroupSpec, c: int, x: GroupElement) -> GroupElement:
    """The multiple c*x for an arbitrary integer c."""
    _check_element(g, x)
    return tuple((c * a) % n for a, n in zip(x, g.moduli))


def index_of(g: GroupSpec, x: GroupElement) -> int:
    _check_element(g, x)
    return sum(c * s for c, s in zip(x, g.strides))


def element_of(g: GroupSpec, i: int) -> GroupElement:
    if not 0 <= i < g.order:
        raise ValueError(f"index {i} out of range for group of order {g.order}")
    return tuple((i // s) % n for s, n in zip(g.strides, g.moduli))


def add_indices(g: GroupSpec, i: int, j: int) -> int:
    """Index-level addition; assumes both indices are already in range."""
    out = 0
    for s, n in zip(g.strides, g.moduli):
        out += (((i // s) + (j // s)) % n) * s
    return out


def neg_index(g: GroupSpec, i: int) -> int:
    out = 0
    for s, n in zip(g.strides, g.moduli):
        out += (-(i // s) % n) * s
    return out


def sub_indices(g: GroupSpec, i: int, j: int) -> int:
    return add_indices(g, i, neg_index(g, j))


def scale_index(g: GroupSpec, c: int, i: int) -> int:
    out = 0
    for s, n in zip(g.strides, g.moduli):
        out += ((c * (i // s)) % n) * s
    return out


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Integer partitions of n, parts descending, reverse-lexicographic order."""

    def gen(remaining: int, max_part: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def enumerate_abelian_groups(min_order: int, max_order: int) -> list[GroupSpec]:
    """One spec per isomorphism class of each order in [min_order, max_order].

    Uses the primary decomposition: for order n = prod p_i^{e_i} there is one
    class per choice of a partition of each e_i.  Output order is by group
    order, then by the deterministic partition enumeration.
    """
    if not 2 <= min_order <= max_order:
        raise ValueError(f"need 2 <= min_order <= max_order, got {min_order}, {max_order}")
    out: list[GroupSpec] = []
    for n in range(min_order, max_order + 1):
        per_prime = []
        for p, e in _factorize(n):
            per_prime.append([tuple(p**part for part in parts) for parts in _partitions(e)])
        for choice in itertools.product(*per_prime):
            out.append(GroupSpec(tuple(itertools.chain.from_iterable(choice))))
    return out


@dataclass(frozen=True)
class SubgroupProjection:
    """Reduction of one coordinate mod p: a surjection onto Z_p whose kernel
    is a fixed subgroup of index p."""

    parent: GroupSpec
    p: int
    pivot: int
    quotient: GroupSpec = field(init=False)

    def __post_init__(self):
        if not 0 <= self.pivot < self.parent.rank:
            raise ValueError(f"pivot {self.pivot} out of range")
        if self.parent.moduli[self.pivot] % self.p != 0:
            raise ValueError(f"{self.p} does not divide modulus {self.parent.moduli[self.pivot]}")
        object.__setattr__(self, "quotient", GroupSpec((self.p,)))

    @property
    def kernel_order(self) -> int:
        return self.parent.order // self.p

    def label(self, x: GroupElement) -> int:
        _check_element(self.parent, x)
        return x[self.pivot] % self.p

    def label_of_index(self, i: int) -> int:
        g = self.parent
        return ((i // g.strides[self.pivot]) % g.moduli[self.pivot]) % self.p


def prime_index_subgroup(g: GroupSpec, p: int) -> SubgroupProjection:
    """The canonical index-p subgroup for p = least_prime_divisor(g).

    The kernel is cut out of the first coordinate whose modulus p divides;
    scanning left to right makes the choice deterministic.
    """
    if p != least_prime_divisor(g):
        raise ValueError(f"{p} is not the least prime divisor of a group of order {g.order}")
    pivot = next(j for j, n in enumerate(g.moduli) if n % p == 0)
    return SubgroupProjection(g, p, pivot)
