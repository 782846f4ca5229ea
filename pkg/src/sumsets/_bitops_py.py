"""Pure-Python bit-vector kernels.

A subset of a group of order N lives in the low N bits of a Python int,
bit i standing for the element with mixed-radix index i (last coordinate
fastest).  CPython's big integers give word-parallel AND/OR/shift for
free, so translation by a group element reduces to a handful of masked
shifts per coordinate axis:

For axis j with modulus n and stride s (the product of the moduli to its
right), the vector splits into superblocks of L = n*s bits, one per
setting of the coordinates left of j.  Adding t to coordinate j rotates
every superblock up by t*s bits.  With a mask ``lo`` selecting the low
(n-t)*s bits of each superblock, the whole rotation is

    ((bits & lo) << t*s) | ((bits & ~lo) >> (L - t*s))

applied to the full vector at once.  Masks depend only on (moduli, axis,
shift) and are cached.
"""

from __future__ import annotations

from functools import lru_cache

NAME = "python"
COMPILED = False


@lru_cache(maxsize=None)
def _order(moduli: tuple[int, ...]) -> int:
    n = 1
    for m in moduli:
        n *= m
    return n


@lru_cache(maxsize=None)
def _full_mask(moduli: tuple[int, ...]) -> int:
    return (1 << _order(moduli)) - 1


@lru_cache(maxsize=65536)
def _low_block_mask(moduli: tuple[int, ...], axis: int, shift: int) -> int:
    """Mask picking, in every superblock of the axis, the bits that move up."""
    stride = 1
    for m in moduli[axis + 1 :]:
        stride *= m
    period = moduli[axis] * stride
    count = _order(moduli) // period
    mask = (1 << (moduli[axis] - shift) * stride) - 1
    built = 1
    while built < count:
        take = min(built, count - built)
        mask |= (mask & ((1 << take * period) - 1)) << built * period
        built += take
    return mask


def translate_bits(bits: int, shifts: tuple[int, ...], moduli: tuple[int, ...]) -> int:
    """Translate a subset by the element with the given coordinates."""
    stride = 1
    for axis in range(len(moduli) - 1, -1, -1):
        n = moduli[axis]
        t = shifts[axis] % n
        if t and bits:
            period = n * stride
            move = t * stride
            lo = _low_block_mask(moduli, axis, t)
            hi = _full_mask(moduli) & ~lo
            bits = ((bits & lo) << move) | ((bits & hi) >> (period - move))
        stride *= n
    return bits


def _coords(idx: int, moduli: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(moduli)
    for j in range(len(moduli) - 1, -1, -1):
        out[j] = idx % moduli[j]
        idx //= moduli[j]
    return tuple(out)


def sumset_bits(a: int, b: int, moduli: tuple[int, ...]) -> int:
    """The sumset A + B of two subsets given as bit vectors."""
    if not a or not b:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        a ^= low
        out |= translate_bits(b, _coords(low.bit_length() - 1, moduli), moduli)
    return out


def restricted_sumset_bits(bits: int, k: int, moduli: tuple[int, ...]) -> int:
    """Sums of k pairwise-distinct members of the subset, as a bit vector.

    Layered subset-sum scan: after consuming a prefix of the members in
    ascending index order, layer j holds all sums of j distinct members of
    that prefix.  Updating layers in descending j order keeps each member
    from being used twice.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 1
    if bits.bit_count() < k:
        return 0
    layers = [0] * (k + 1)
    layers[0] = 1
    seen = 0
    rest = bits
    while rest:
        low = rest & -rest
        rest ^= low
        shifts = _coords(low.bit_length() - 1, moduli)
        seen += 1
        for j in range(min(k, seen), 0, -1):
            prev = layers[j - 1]
            if prev:
                layers[j] |= translate_bits(prev, shifts, moduli)
    return layers[k]
