"""Backend selection plus differential tests between the two kernel sets."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumsets import kernels
from sumsets import _bitops_py as pure


def order_of(moduli):
    n = 1
    for m in moduli:
        n *= m
    return n


moduli_strategy = st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=3).map(tuple)


def test_active_backend_is_registered():
    assert kernels.backend_name() in kernels.available_backends()
    assert kernels.get_backend("python") is pure
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_available_backends_shape():
    names = kernels.available_backends()
    assert "python" in names
    if kernels.has_compiled():
        assert "c" in names


def test_translate_identity_and_full_cycle():
    moduli = (4, 3)
    bits = 0b1011_0110_0001
    assert pure.translate_bits(bits, (0, 0), moduli) == bits
    out = bits
    for _ in range(3):
        out = pure.translate_bits(out, (0, 1), moduli)
    assert out == bits
    out = bits
    for _ in range(4):
        out = pure.translate_bits(out, (1, 0), moduli)
    assert out == bits


def test_translate_matches_index_arithmetic():
    rng = random.Random(7)
    for moduli in [(6,), (2, 4), (3, 3), (2, 2, 3)]:
        n = order_of(moduli)
        strides = []
        acc = 1
        for m in reversed(moduli):
            strides.append(acc)
            acc *= m
        strides.reverse()
        for _ in range(25):
            bits = rng.randrange(1, 1 << n)
            shifts = tuple(rng.randrange(m) for m in moduli)
            got = pure.translate_bits(bits, shifts, moduli)
            expect = 0
            for i in range(n):
                if bits >> i & 1:
                    j = 0
                    for axis, m in enumerate(moduli):
                        coord = (i // strides[axis] + shifts[axis]) % m
                        j += coord * strides[axis]
                    expect |= 1 << j
            assert got == expect


def test_restricted_kernel_edge_cases():
    moduli = (8,)
    assert pure.restricted_sumset_bits(0b10110, 0, moduli) == 1
    assert pure.restricted_sumset_bits(0b10110, 1, moduli) == 0b10110
    assert pure.restricted_sumset_bits(0b10110, 4, moduli) == 0  # only 3 members
    assert pure.restricted_sumset_bits(0, 0, moduli) == 1


def test_sumset_kernel_zero_is_neutral():
    moduli = (5,)
    for bits in range(1, 32):
        assert pure.sumset_bits(bits, 1, moduli) == bits


@pytest.mark.skipif(not kernels.has_compiled(), reason="compiled backend not built")
class TestCompiledAgainstPure:
    compiled = kernels.get_backend("c") if kernels.has_compiled() else None

    @settings(max_examples=200, deadline=None)
    @given(moduli_strategy, st.data())
    def test_translate(self, moduli, data):
        n = order_of(moduli)
        bits = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        shifts = tuple(data.draw(st.integers(min_value=0, max_value=m - 1)) for m in moduli)
        assert self.compiled.translate_bits(bits, shifts, moduli) == pure.translate_bits(
            bits, shifts, moduli
        )

    @settings(max_examples=200, deadline=None)
    @given(moduli_strategy, st.data())
    def test_sumset(self, moduli, data):
        n = order_of(moduli)
        a = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        b = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        assert self.compiled.sumset_bits(a, b, moduli) == pure.sumset_bits(a, b, moduli)

    @settings(max_examples=200, deadline=None)
    @given(moduli_strategy, st.data())
    def test_restricted(self, moduli, data):
        n = order_of(moduli)
        bits = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
        k = data.draw(st.integers(min_value=0, max_value=min(n, 6)))
        assert self.compiled.restricted_sumset_bits(bits, k, moduli) == pure.restricted_sumset_bits(
            bits, k, moduli
        )

    def test_wide_group_crosses_word_boundaries(self):
        # orders past 64 exercise the multi-word paths in the compiled code
        rng = random.Random(11)
        for moduli in [(70,), (67,), (128,), (2, 65), (8, 3, 5)]:
            n = order_of(moduli)
            for _ in range(10):
                bits = rng.randrange(1 << n)
                shifts = tuple(rng.randrange(m) for m in moduli)
                assert self.compiled.translate_bits(bits, shifts, moduli) == pure.translate_bits(
                    bits, shifts, moduli
                )
                other = rng.randrange(1 << n)
                assert self.compiled.sumset_bits(bits, other, moduli) == pure.sumset_bits(
                    bits, other, moduli
                )
                k = rng.randrange(0, 7)
                assert self.compiled.restricted_sumset_bits(
                    bits, k, moduli
                ) == pure.restricted_sumset_bits(bits, k, moduli)
