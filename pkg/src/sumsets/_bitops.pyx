# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit-vector kernels over uint64 word arrays.

Same contract as the pure-Python module: subsets are Python ints, bit i
standing for mixed-radix index i.  Internally each vector is unpacked
into little-endian uint64 words (one zero sentinel word at the end so
unaligned 64-bit reads never run past the buffer), translated with block
rotations, and packed back into an int at the boundary.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

NAME = "c"
COMPILED = True


cdef inline u64 _window(const u64 *src, size_t bitpos) nogil:
    """64 bits of src starting at an arbitrary bit offset."""
    cdef size_t w = bitpos >> 6
    cdef unsigned sh = <unsigned> (bitpos & 63)
    if sh == 0:
        return src[w]
    return (src[w] >> sh) | (src[w + 1] << (64 - sh))


cdef void _or_copy_bits(u64 *dst, size_t doff, const u64 *src, size_t soff, size_t nbits) nogil:
    """OR nbits of src starting at soff into dst starting at doff."""
    cdef size_t done = 0, w, chunk
    cdef unsigned lo
    cdef u64 window, mask
    while done < nbits:
        w = (doff + done) >> 6
        lo = <unsigned> ((doff + done) & 63)
        chunk = 64 - lo
        if chunk > nbits - done:
            chunk = nbits - done
        window = _window(src, soff + done)
        if chunk == 64:
            mask = <u64> 0xFFFFFFFFFFFFFFFFULL
        else:
            mask = ((<u64> 1) << chunk) - 1
        dst[w] |= (window & mask) << lo
        done += chunk


cdef void _rotate_axis_or(u64 *dst, const u64 *src, size_t order, size_t period, size_t move) nogil:
    """OR src into dst with every period-bit superblock cyclically shifted up by move."""
    cdef size_t base = 0
    while base < order:
        if move == 0:
            _or_copy_bits(dst, base, src, base, period)
        else:
            _or_copy_bits(dst, base + move, src, base, period - move)
            _or_copy_bits(dst, base, src, base + period - move, move)
        base += period


cdef void _translate_or(u64 *dst, const u64 *src, const size_t *mods, const size_t *strides,
                        const size_t *shifts, Py_ssize_t d, size_t order, size_t nwords,
                        u64 *scratch_a, u64 *scratch_b) nogil:
    """dst |= translate(src); src must alias neither dst nor the scratches.

    Axes rotate one at a time, ping-ponging between the scratch buffers;
    the final rotation ORs straight into dst so the caller's accumulator
    never needs clearing.
    """
    cdef Py_ssize_t axis, i, last = -1
    cdef int which = 0
    cdef const u64 *cur = src
    cdef u64 *target
    for axis in range(d):
        if shifts[axis] != 0:
            last = axis
    if last < 0:
        for i in range(<Py_ssize_t> nwords):
            dst[i] |= src[i]
        return
    for axis in range(d):
        if shifts[axis] == 0:
            continue
        if axis == last:
            _rotate_axis_or(dst, cur, order, mods[axis] * strides[axis], shifts[axis] * strides[axis])
        else:
            target = scratch_a if which == 0 else scratch_b
            memset(target, 0, (nwords + 1) * sizeof(u64))
            _rotate_axis_or(target, cur, order, mods[axis] * strides[axis], shifts[axis] * strides[axis])
            cur = target
            which ^= 1


cdef class _Ctx:
    """Per-call workspace: parsed moduli plus word buffers."""
    cdef size_t *mods
    cdef size_t *strides
    cdef size_t *shifts
    cdef u64 *words          # one block; layout managed by the entry points
    cdef Py_ssize_t d
    cdef size_t order, nwords

    def __cinit__(self, moduli, size_t word_rows):
        cdef Py_ssize_t j
        self.d = len(moduli)
        self.mods = <size_t *> calloc(3 * self.d, sizeof(size_t))
        if self.mods == NULL:
            raise MemoryError()
        self.strides = self.mods + self.d
        self.shifts = self.strides + self.d
        self.order = 1
        for j in range(self.d):
            self.mods[j] = <size_t> moduli[j]
            if self.mods[j] < 2:
                free(self.mods)
                self.mods = NULL
                raise ValueError("every modulus must be >= 2")
        for j in range(self.d - 1, -1, -1):
            self.strides[j] = 1 if j == self.d - 1 else self.strides[j + 1] * self.mods[j + 1]
        for j in range(self.d):
            self.order *= self.mods[j]
        self.nwords = (self.order + 63) >> 6
        self.words = <u64 *> calloc(word_rows * (self.nwords + 1), sizeof(u64))
        if self.words == NULL:
            free(self.mods)
            self.mods = NULL
            raise MemoryError()

    cdef u64 *row(self, size_t i) nogil:
        return self.words + i * (self.nwords + 1)

    cdef void load(self, size_t row, object bits):
        cdef bytes payload = bits.to_bytes(self.nwords * 8, "little")
        cdef const char *raw = payload
        memcpy(self.row(row), raw, self.nwords * 8)

    cdef object unload(self, size_t row):
        cdef bytes payload = PyBytes_FromStringAndSize(<char *> self.row(row), self.nwords * 8)
        return int.from_bytes(payload, "little")

    cdef void decode(self, size_t idx) nogil:
        """Fill self.shifts with the coordinates of a mixed-radix index."""
        cdef Py_ssize_t j
        for j in range(self.d - 1, -1, -1):
            self.shifts[j] = idx % self.mods[j]
            idx //= self.mods[j]

    def __dealloc__(self):
        if self.mods != NULL:
            free(self.mods)
        if self.words != NULL:
            free(self.words)


def translate_bits(bits, shifts, moduli):
    """Translate a subset by the element with the given coordinates."""
    if len(shifts) != len(moduli):
        raise ValueError("shift tuple length does not match the group rank")
    # rows: 0 input, 1 output, 2-3 scratch
    cdef _Ctx ctx = _Ctx(moduli, 4)
    cdef Py_ssize_t j
    for j in range(ctx.d):
        ctx.shifts[j] = <size_t> (shifts[j] % moduli[j])
    ctx.load(0, bits)
    _translate_or(ctx.row(1), ctx.row(0), ctx.mods, ctx.strides, ctx.shifts,
                  ctx.d, ctx.order, ctx.nwords, ctx.row(2), ctx.row(3))
    return ctx.unload(1)


def sumset_bits(a, b, moduli):
    """The sumset A + B of two subsets given as bit vectors."""
    if a == 0 or b == 0:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    # rows: 0 the translated operand, 1 accumulator, 2-3 scratch
    cdef _Ctx ctx = _Ctx(moduli, 4)
    ctx.load(0, b)
    cdef size_t w, idx
    # iterate members of a ascending
    cdef bytes payload = a.to_bytes(ctx.nwords * 8, "little")
    cdef const unsigned char *raw = payload
    cdef u64 word
    for w in range(ctx.nwords):
        memcpy(&word, raw + 8 * w, 8)
        while word:
            idx = (w << 6) + <size_t> __builtin_ctzll(word)
            word &= word - 1
            ctx.decode(idx)
            _translate_or(ctx.row(1), ctx.row(0), ctx.mods, ctx.strides, ctx.shifts,
                          ctx.d, ctx.order, ctx.nwords, ctx.row(2), ctx.row(3))
    return ctx.unload(1)


def restricted_sumset_bits(bits, k, moduli):
    """Sums of k pairwise-distinct members of the subset, as a bit vector.

    Same layered scan as the pure-Python kernel; layer j sits in word row
    j and is updated for j descending so no member is reused.
    """
    cdef Py_ssize_t kk = k
    if kk < 0:
        raise ValueError("k must be non-negative")
    if kk == 0:
        return 1
    if bits.bit_count() < kk:
        return 0
    # rows: 0..k layers, k+1 input, k+2 and k+3 scratch
    cdef _Ctx ctx = _Ctx(moduli, <size_t> kk + 4)
    ctx.row(0)[0] = 1
    ctx.load(<size_t> kk + 1, bits)
    cdef const u64 *inp = ctx.row(<size_t> kk + 1)
    cdef u64 *scratch_a = ctx.row(<size_t> kk + 2)
    cdef u64 *scratch_b = ctx.row(<size_t> kk + 3)
    cdef size_t w, idx
    cdef u64 word
    cdef Py_ssize_t seen = 0, j, top
    for w in range(ctx.nwords):
        word = inp[w]
        while word:
            idx = (w << 6) + <size_t> __builtin_ctzll(word)
            word &= word - 1
            ctx.decode(idx)
            seen += 1
            top = kk if kk < seen else seen
            for j in range(top, 0, -1):
                _translate_or(ctx.row(<size_t> j), ctx.row(<size_t> (j - 1)),
                              ctx.mods, ctx.strides, ctx.shifts,
                              ctx.d, ctx.order, ctx.nwords, scratch_a, scratch_b)
    return ctx.unload(<size_t> kk)
