"""Pure-Python GF(2) polynomial kernels.

Polynomials over GF(2) are nonnegative Python ints: bit i holds the
coefficient of x^i.  Addition is ``^``.  This module is the reference
twin of the compiled core (``perm2k._kernels.core``); both expose the
same functions and must agree bit for bit.
"""

BACKEND = "pure"

# Spread table: byte b -> 16-bit word with the bits of b in even positions.
_SPREAD8 = [0] * 256
for _b in range(256):
    _w = 0
    for _i in range(8):
        if _b >> _i & 1:
            _w |= 1 << (2 * _i)
    _SPREAD8[_b] = _w
del _b, _w, _i


def has_clmul():
    """Whether hardware carry-less multiply is in use (never, here)."""
    return False


def clmul(a, b):
    """Carry-less product of a and b (no reduction)."""
    if a == 0 or b == 0:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    # 4-bit windowed comb over the shorter operand.
    table = [0] * 16
    table[1] = a
    for v in range(2, 16):
        table[v] = (table[v >> 1] << 1) ^ (a if v & 1 else 0)
    c = 0
    shift = (b.bit_length() - 1) // 4 * 4
    while shift >= 0:
        c = (c << 4) ^ table[(b >> shift) & 0xF]
        shift -= 4
    return c


def clsqr(a):
    """Carry-less square of a: spreads each bit to an even position."""
    if a == 0:
        return 0
    c = 0
    for i, byte in enumerate(a.to_bytes((a.bit_length() + 7) // 8, "little")):
        c |= _SPREAD8[byte] << (16 * i)
    return c


def clrem(a, m):
    """Remainder of a modulo m over GF(2), for nonzero m."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    if da < dm:
        return a
    m <<= da - dm
    for d in range(da, dm - 1, -1):
        if a >> d & 1:
            a ^= m
        m >>= 1
    return a


def cldivmod(a, m):
    """Quotient and remainder of a divided by m over GF(2), m nonzero."""
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    dm = m.bit_length() - 1
    da = a.bit_length() - 1
    if da < dm:
        return 0, a
    m <<= da - dm
    q = 0
    for d in range(da, dm - 1, -1):
        q <<= 1
        if a >> d & 1:
            a ^= m
            q ^= 1
        m >>= 1
    return q, a


def clmulmod(a, b, m):
    """Product of a and b reduced modulo m."""
    return clrem(clmul(a, b), m)


def clsqrmod(a, m):
    """Square of a reduced modulo m."""
    return clrem(clsqr(a), m)


def _rem_tri(a, e2, e1):
    # x^e2 = x^e1 + 1 and deg < e1 + e2 after one pass, so this loops twice.
    mask = (1 << e2) - 1
    while a.bit_length() > e2:
        h = a >> e2
        a = (a & mask) ^ h ^ (h << e1)
    return a


def clmulmod_tri(a, b, e2, e1):
    """Product of a and b modulo the trinomial x^e2 + x^e1 + 1."""
    return _rem_tri(clmul(a, b), e2, e1)


def clsqrmod_tri(a, e2, e1):
    """Square of a modulo the trinomial x^e2 + x^e1 + 1."""
    return _rem_tri(clsqr(a), e2, e1)
