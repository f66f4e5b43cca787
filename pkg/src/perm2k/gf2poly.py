"""Polynomials over GF(2).

A polynomial b_d x^d + ... + b_1 x + b_0 is stored as the nonnegative
int b_d 2^d + ... + b_1 2 + b_0, so addition is ``^`` and bit i is the
coefficient of x^i.  ``GfPoly`` is a thin immutable wrapper around that
int; the heavy operations go through the selected kernel backend.

The degree of the zero polynomial is the sentinel ``NEG_INF`` (it is
never a usable index, and degree arithmetic like deg(a*b) =
deg(a)+deg(b) stays truthful).
"""

from perm2k import _kernels

NEG_INF = float("-inf")


def format_bits(bits):
    """Render an int-packed GF(2) polynomial as 'x^6+x^3+1'."""
    if bits == 0:
        return "0"
    terms = []
    for e in range(bits.bit_length() - 1, -1, -1):
        if bits >> e & 1:
            if e == 0:
                terms.append("1")
            elif e == 1:
                terms.append("x")
            else:
                terms.append(f"x^{e}")
    return "+".join(terms)


def parse_bits(s):
    """Parse the textual polynomial format back into an int."""
    s = "".join(s.split())
    if s == "0":
        return 0
    bits = 0
    for term in s.split("+"):
        if term == "1":
            t = 1
        elif term == "x":
            t = 2
        elif term.startswith("x^"):
            t = 1 << int(term[2:])
        else:
            raise ValueError(f"bad polynomial term: {term!r}")
        if bits & t:
            raise ValueError(f"repeated term: {term!r}")
        bits |= t
    return bits


class GfPoly:
    """Immutable polynomial over GF(2)."""

    __slots__ = ("bits",)

    def __init__(self, bits=0):
        if isinstance(bits, GfPoly):
            bits = bits.bits
        elif isinstance(bits, str):
            bits = parse_bits(bits)
        if not isinstance(bits, int) or bits < 0:
            raise ValueError("polynomial bits must be a nonnegative int")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("GfPoly is immutable")

    @classmethod
    def from_coeffs(cls, coeffs):
        """Build from an iterable of 0/1 coefficients, constant term first."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError("coefficients must be 0 or 1")
            bits |= c << i
        return cls(bits)

    @property
    def degree(self):
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    @property
    def coeffs(self):
        """Coefficients as a tuple of bits, constant term first."""
        if self.bits == 0:
            return (0,)
        return tuple(self.bits >> i & 1 for i in range(self.bits.bit_length()))

    def __add__(self, other):
        return GfPoly(self.bits ^ GfPoly(other).bits)

    __sub__ = __add__

    def __mul__(self, other):
        return GfPoly(_kernels.clmul(self.bits, GfPoly(other).bits))

    def __divmod__(self, other):
        m = GfPoly(other).bits
        if m == 0:
            raise ValueError("zero modulus")
        q, r = _kernels.cldivmod(self.bits, m)
        return GfPoly(q), GfPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        return isinstance(other, GfPoly) and self.bits == other.bits

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((GfPoly, self.bits))

    def __bool__(self):
        return bool(self.bits)

    def __str__(self):
        return format_bits(self.bits)

    def __repr__(self):
        return f"GfPoly({format_bits(self.bits)!r})"


X = GfPoly(2)
ONE = GfPoly(1)


def gf2_mul_mod(a, b, m):
    """Product of a and b reduced modulo m, for nonzero m."""
    a, b, m = GfPoly(a), GfPoly(b), GfPoly(m)
    if m.bits == 0:
        raise ValueError("zero modulus")
    return GfPoly(_kernels.clmulmod(a.bits, b.bits, m.bits))


def _gcd_bits(a, b):
    while b:
        a, b = b, _kernels.clrem(a, b)
    return a


def _powmod_x_squarings(f_bits, count):
    # x^(2^j) mod f for j = 0..count, by repeated squaring.
    t = _kernels.clrem(2, f_bits)
    out = [t]
    for _ in range(count):
        t = _kernels.clsqrmod(t, f_bits)
        out.append(t)
    return out


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f):
    """Distinct-degree irreducibility test over GF(2).

    f of degree d is irreducible iff x^(2^d) = x (mod f) and, for every
    prime r dividing d, gcd(x^(2^(d/r)) - x mod f, f) = 1.
    """
    f = GfPoly(f)
    d = f.degree
    if d is NEG_INF or d < 1:
        raise ValueError("degree too small")
    pows = _powmod_x_squarings(f.bits, d)
    xm = pows[0]
    if pows[d] != xm:
        return False
    for r in _prime_factors(d):
        if _gcd_bits(pows[d // r] ^ xm, f.bits) != 1:
            return False
    return True


def select_trinomial(min_degree):
    """Smallest member of the x^(2*3^l) + x^(3^l) + 1 family with
    degree at least min_degree.

    Every member of the family is irreducible over GF(2), which is what
    makes it the default modulus choice everywhere a field of a given
    minimum size is needed.
    """
    if min_degree < 1:
        raise ValueError("min_degree must be positive")
    e1 = 1
    while 2 * e1 < min_degree:
        e1 *= 3
    return GfPoly(1 << (2 * e1) | 1 << e1 | 1)
