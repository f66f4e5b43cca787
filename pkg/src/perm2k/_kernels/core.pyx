# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) polynomial kernels.

Same contract as ``perm2k._kernels.pure``: polynomials are nonnegative
Python ints (bit i = coefficient of x^i).  Internally values are
little-endian uint64 vectors; multiplication uses the hardware
carry-less multiply when the extension was built with PCLMUL support,
and a 4-bit windowed comb otherwise.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

cdef extern from "clmul_shim.h":
    const int GF2_HAVE_CLMUL
    void clmul64(uint64_t a, uint64_t b, uint64_t *lo, uint64_t *hi)
    int bitlen64(uint64_t x)

BACKEND = "compiled"


def has_clmul():
    """Whether hardware carry-less multiply is in use."""
    return bool(GF2_HAVE_CLMUL)


cdef uint64_t *_to_words(object a, Py_ssize_t *pn) except NULL:
    cdef Py_ssize_t n = (a.bit_length() + 63) >> 6
    if n == 0:
        n = 1
    cdef bytes raw = a.to_bytes(n << 3, "little")
    # Two words of zero padding absorb the word-overshoot of shifted xors.
    cdef uint64_t *w = <uint64_t *> calloc(n + 2, 8)
    if w == NULL:
        raise MemoryError()
    memcpy(w, PyBytes_AS_STRING(raw), n << 3)
    pn[0] = n
    return w


cdef object _from_words(uint64_t *w, Py_ssize_t n):
    cdef bytes raw = PyBytes_FromStringAndSize(<char *> w, n << 3)
    return int.from_bytes(raw, "little")


cdef Py_ssize_t _bitlen_words(const uint64_t *w, Py_ssize_t n):
    cdef Py_ssize_t i = n - 1
    while i >= 0 and w[i] == 0:
        i -= 1
    if i < 0:
        return 0
    return (i << 6) + bitlen64(w[i])


cdef void _mul_words_comb(const uint64_t *a, Py_ssize_t na,
                          const uint64_t *b, Py_ssize_t nb,
                          uint64_t *c, uint64_t *table):
    # table has 16*(na+1) words; c has na+nb words, zeroed.
    cdef Py_ssize_t stride = na + 1
    cdef Py_ssize_t nc = na + nb
    cdef Py_ssize_t i, j, v
    cdef int k
    cdef uint64_t d
    cdef uint64_t *tv
    cdef uint64_t *th
    memset(table, 0, 16 * stride * 8)
    memcpy(table + stride, a, na * 8)
    for v in range(2, 16):
        tv = table + v * stride
        th = table + (v >> 1) * stride
        for i in range(stride - 1, 0, -1):
            tv[i] = (th[i] << 1) | (th[i - 1] >> 63)
        tv[0] = th[0] << 1
        if v & 1:
            for i in range(na):
                tv[i] ^= a[i]
    for k in range(15, -1, -1):
        if k != 15:
            for i in range(nc - 1, 0, -1):
                c[i] = (c[i] << 4) | (c[i - 1] >> 60)
            c[0] <<= 4
        for j in range(nb):
            d = (b[j] >> (4 * k)) & 0xF
            if d:
                tv = table + d * stride
                for i in range(stride):
                    c[j + i] ^= tv[i]


cdef int _mul_words(const uint64_t *a, Py_ssize_t na,
                    const uint64_t *b, Py_ssize_t nb, uint64_t *c) except -1:
    # c has na+nb words, zeroed on entry.
    cdef Py_ssize_t i, j
    cdef uint64_t lo, hi
    cdef uint64_t *table
    if GF2_HAVE_CLMUL:
        for i in range(na):
            if a[i] == 0:
                continue
            for j in range(nb):
                if b[j]:
                    clmul64(a[i], b[j], &lo, &hi)
                    c[i + j] ^= lo
                    c[i + j + 1] ^= hi
    else:
        if na < nb:
            a, b = b, a
            na, nb = nb, na
        table = <uint64_t *> calloc(16 * (na + 1), 8)
        if table == NULL:
            raise MemoryError()
        _mul_words_comb(a, na, b, nb, c, table)
        free(table)
    return 0


cdef void _sqr_words(const uint64_t *a, Py_ssize_t na, uint64_t *c):
    cdef Py_ssize_t i
    cdef uint64_t lo, hi
    for i in range(na):
        clmul64(a[i], a[i], &lo, &hi)
        c[2 * i] = lo
        c[2 * i + 1] = hi


cdef void _xor_shifted(uint64_t *dst, const uint64_t *src, Py_ssize_t ns,
                       Py_ssize_t bitoff):
    cdef Py_ssize_t woff = bitoff >> 6
    cdef int boff = bitoff & 63
    cdef Py_ssize_t i
    if boff == 0:
        for i in range(ns):
            dst[woff + i] ^= src[i]
    else:
        for i in range(ns):
            dst[woff + i] ^= src[i] << boff
            dst[woff + i + 1] ^= src[i] >> (64 - boff)


cdef void _reduce_tri(uint64_t *c, Py_ssize_t nc, Py_ssize_t e2,
                      Py_ssize_t e1, uint64_t *h):
    # In-place reduction mod x^e2 + x^e1 + 1; h is scratch of nc+1 words.
    # Terminates in at most two passes since e1 < e2.
    cdef Py_ssize_t woff, nh, i
    cdef int boff
    while _bitlen_words(c, nc) > e2:
        woff = e2 >> 6
        boff = e2 & 63
        nh = nc - woff
        memset(h, 0, (nc + 1) * 8)
        if boff == 0:
            for i in range(nh):
                h[i] = c[woff + i]
        else:
            for i in range(nh):
                h[i] = c[woff + i] >> boff
                if woff + i + 1 < nc:
                    h[i] |= c[woff + i + 1] << (64 - boff)
        # clear bits >= e2
        if boff:
            c[woff] &= (<uint64_t> 1 << boff) - 1
            for i in range(woff + 1, nc):
                c[i] = 0
        else:
            for i in range(woff, nc):
                c[i] = 0
        _xor_shifted(c, h, nh, 0)
        _xor_shifted(c, h, nh, e1)


cdef void _rem_generic(uint64_t *a, Py_ssize_t na, const uint64_t *m,
                       Py_ssize_t nm, Py_ssize_t dm, uint64_t *q):
    # In-place remainder of a modulo m (deg m = dm); if q is not NULL the
    # quotient bits are recorded there.
    cdef Py_ssize_t da = _bitlen_words(a, na) - 1
    cdef Py_ssize_t d
    for d in range(da, dm - 1, -1):
        if (a[d >> 6] >> (d & 63)) & 1:
            _xor_shifted(a, m, nm, d - dm)
            if q != NULL:
                q[(d - dm) >> 6] |= <uint64_t> 1 << ((d - dm) & 63)


def clmul(a, b):
    """Carry-less product of a and b (no reduction)."""
    if a == 0 or b == 0:
        return 0
    cdef Py_ssize_t na, nb
    cdef uint64_t *wa = _to_words(a, &na)
    cdef uint64_t *wb = _to_words(b, &nb)
    cdef uint64_t *wc = <uint64_t *> calloc(na + nb, 8)
    if wc == NULL:
        free(wa); free(wb)
        raise MemoryError()
    try:
        _mul_words(wa, na, wb, nb, wc)
        return _from_words(wc, na + nb)
    finally:
        free(wa); free(wb); free(wc)


def clsqr(a):
    """Carry-less square of a."""
    if a == 0:
        return 0
    cdef Py_ssize_t na
    cdef uint64_t *wa = _to_words(a, &na)
    cdef uint64_t *wc = <uint64_t *> calloc(2 * na, 8)
    if wc == NULL:
        free(wa)
        raise MemoryError()
    try:
        _sqr_words(wa, na, wc)
        return _from_words(wc, 2 * na)
    finally:
        free(wa); free(wc)


def clrem(a, m):
    """Remainder of a modulo m over GF(2), for nonzero m."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    if a.bit_length() < m.bit_length():
        return a
    cdef Py_ssize_t na, nm
    cdef uint64_t *wa = _to_words(a, &na)
    cdef uint64_t *wm = _to_words(m, &nm)
    try:
        _rem_generic(wa, na, wm, nm, m.bit_length() - 1, NULL)
        return _from_words(wa, na)
    finally:
        free(wa); free(wm)


def cldivmod(a, m):
    """Quotient and remainder of a divided by m over GF(2), m nonzero."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    if a.bit_length() < m.bit_length():
        return 0, a
    cdef Py_ssize_t na, nm
    cdef uint64_t *wa = _to_words(a, &na)
    cdef uint64_t *wm = _to_words(m, &nm)
    cdef uint64_t *wq = <uint64_t *> calloc(na, 8)
    if wq == NULL:
        free(wa); free(wm)
        raise MemoryError()
    try:
        _rem_generic(wa, na, wm, nm, m.bit_length() - 1, wq)
        return _from_words(wq, na), _from_words(wa, na)
    finally:
        free(wa); free(wm); free(wq)


def clmulmod(a, b, m):
    """Product of a and b reduced modulo m."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    return clrem(clmul(a, b), m)


def clsqrmod(a, m):
    """Square of a reduced modulo m."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    return clrem(clsqr(a), m)


def clmulmod_tri(a, b, e2, e1):
    """Product of a and b modulo the trinomial x^e2 + x^e1 + 1."""
    if a == 0 or b == 0:
        return 0
    cdef Py_ssize_t na, nb
    cdef Py_ssize_t ce2 = e2, ce1 = e1
    cdef uint64_t *wa = _to_words(a, &na)
    cdef uint64_t *wb = _to_words(b, &nb)
    cdef Py_ssize_t nc = na + nb
    cdef uint64_t *wc = <uint64_t *> calloc(nc + 2, 8)
    cdef uint64_t *wh = <uint64_t *> calloc(nc + 2, 8)
    if wc == NULL or wh == NULL:
        free(wa); free(wb); free(wc); free(wh)
        raise MemoryError()
    try:
        _mul_words(wa, na, wb, nb, wc)
        _reduce_tri(wc, nc, ce2, ce1, wh)
        return _from_words(wc, nc)
    finally:
        free(wa); free(wb); free(wc); free(wh)


def clsqrmod_tri(a, e2, e1):
    """Square of a modulo the trinomial x^e2 + x^e1 + 1."""
    if a == 0:
        return 0
    cdef Py_ssize_t na
    cdef Py_ssize_t ce2 = e2, ce1 = e1
    cdef uint64_t *wa = _to_words(a, &na)
    cdef Py_ssize_t nc = 2 * na
    cdef uint64_t *wc = <uint64_t *> calloc(nc + 2, 8)
    cdef uint64_t *wh = <uint64_t *> calloc(nc + 2, 8)
    if wc == NULL or wh == NULL:
        free(wa); free(wc); free(wh)
        raise MemoryError()
    try:
        _sqr_words(wa, na, wc)
        _reduce_tri(wc, nc, ce2, ce1, wh)
        return _from_words(wc, nc)
    finally:
        free(wa); free(wc); free(wh)
