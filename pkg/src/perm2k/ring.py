"""Arithmetic in R_k = Z[x]/(2^k, p(x)) and in the field F = R_1.

A ``RingCtx`` fixes the modulus exponent k and an irreducible p(x) over
GF(2).  Elements carry a reference to their context; mixing contexts is
a hard error.  Field elements (k = 1) pack their coefficients into one
int exactly like :mod:`perm2k.gf2poly`, so the kernel backend applies
directly; k >= 2 elements hold a tuple of deg(p) residues in [0, 2^k).

Division by the monic p commutes with reduction mod 2^k, which is why
the same trinomial shortcut serves every k.
"""

from perm2k import _kernels
from perm2k.gf2poly import GfPoly, is_irreducible

_SPARSE_MAX = 4


def _trinomial_exponents(p):
    bits = p.bits
    if bits & 1 and bin(bits).count("1") == 3:
        e2 = bits.bit_length() - 1
        e1 = (bits ^ (1 << e2) ^ 1).bit_length() - 1
        if 0 < e1 < e2:
            return e2, e1
    return None


def _is_family_trinomial(p):
    tri = _trinomial_exponents(p)
    if tri is None:
        return False
    e2, e1 = tri
    if e2 != 2 * e1:
        return False
    while e1 % 3 == 0:
        e1 //= 3
    return e1 == 1


class RingCtx:
    """Context for R_k = Z[x]/(2^k, p(x))."""

    __slots__ = ("k", "p", "deg_p", "mask", "_tri", "_derived", "fmul", "fsqr")

    def __init__(self, k, p):
        if not isinstance(k, int) or not 1 <= k <= 63:
            raise ValueError("k must be an integer in [1, 63]")
        p = GfPoly(p)
        if p.degree == 1:
            pass  # x and x+1 are irreducible; GF(2) itself is allowed
        elif _is_family_trinomial(p):
            pass  # the x^(2*3^l)+x^(3^l)+1 family is irreducible by construction
        elif not is_irreducible(p):
            raise ValueError(f"modulus {p} is not irreducible")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "deg_p", p.degree)
        object.__setattr__(self, "mask", (1 << k) - 1)
        object.__setattr__(self, "_tri", _trinomial_exponents(p))
        object.__setattr__(self, "_derived", {})
        if self._tri is not None:
            e2, e1 = self._tri
            object.__setattr__(
                self, "fmul", lambda a, b: _kernels.clmulmod_tri(a, b, e2, e1))
            object.__setattr__(
                self, "fsqr", lambda a: _kernels.clsqrmod_tri(a, e2, e1))
        else:
            pbits = p.bits
            object.__setattr__(
                self, "fmul", lambda a, b: _kernels.clmulmod(a, b, pbits))
            object.__setattr__(
                self, "fsqr", lambda a: _kernels.clsqrmod(a, pbits))

    def __setattr__(self, name, value):
        raise AttributeError("RingCtx is immutable")

    def __eq__(self, other):
        return (isinstance(other, RingCtx)
                and self.k == other.k and self.p.bits == other.p.bits)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((RingCtx, self.k, self.p.bits))

    def __repr__(self):
        return f"RingCtx(k={self.k}, p={self.p})"

    def with_k(self, k):
        """The context over the same p with modulus exponent k (cached)."""
        if k == self.k:
            return self
        ctx = self._derived.get(k)
        if ctx is None:
            ctx = RingCtx(k, self.p)
            self._derived[k] = ctx
        return ctx

    def field(self):
        """The residue field F = R_1 over the same p."""
        return self.with_k(1)

    def lower(self):
        """The context one modulus step down (k-1)."""
        if self.k <= 1:
            raise ValueError("no context below k=1")
        return self.with_k(self.k - 1)

    # -- element constructors ------------------------------------------

    def _mk(self, data):
        e = RingElem.__new__(RingElem)
        object.__setattr__(e, "ctx", self)
        object.__setattr__(e, "data", data)
        object.__setattr__(e, "_sparse", None)
        return e

    def zero(self):
        return self._mk(0 if self.k == 1 else (0,) * self.deg_p)

    def one(self):
        return self.monomial(1, 0)

    def x(self):
        return self.monomial(1, 1)

    def monomial(self, c, e):
        """The element c * x^e (e reduced mod p if needed)."""
        c &= self.mask
        if e >= self.deg_p:
            return self.from_int_coeffs([0] * e + [c])
        if self.k == 1:
            return self._mk((c & 1) << e)
        vec = [0] * self.deg_p
        vec[e] = c
        return self._mk(tuple(vec))

    def from_residues(self, residues):
        """Element from exactly deg_p residues, each in [0, 2^k)."""
        vec = tuple(int(c) for c in residues)
        if len(vec) != self.deg_p:
            raise ValueError(f"expected {self.deg_p} residues, got {len(vec)}")
        if any(c < 0 or c > self.mask for c in vec):
            raise ValueError("residue out of range")
        if self.k == 1:
            bits = 0
            for i, c in enumerate(vec):
                bits |= c << i
            return self._mk(bits)
        return self._mk(vec)

    def from_int_coeffs(self, coeffs):
        """Element from arbitrary integer coefficients (constant first),
        reduced mod 2^k and mod p."""
        vec = [int(c) & self.mask for c in coeffs]
        if len(vec) < self.deg_p:
            vec += [0] * (self.deg_p - len(vec))
        elif len(vec) > self.deg_p:
            vec = self._reduce_mod_p(vec)
        if self.k == 1:
            bits = 0
            for i, c in enumerate(vec):
                bits |= c << i
            return self._mk(bits)
        return self._mk(tuple(vec))

    def from_gf2(self, poly):
        """Lift an int-packed GF(2) polynomial into this context."""
        bits = poly.bits if isinstance(poly, GfPoly) else int(poly)
        if bits.bit_length() > self.deg_p:
            bits = (_kernels.clmulmod_tri(bits, 1, *self._tri)
                    if self._tri else _kernels.clrem(bits, self.p.bits))
        if self.k == 1:
            return self._mk(bits)
        return self._mk(tuple(bits >> i & 1 for i in range(self.deg_p)))

    def units(self):
        """All nonzero field elements (k = 1 only; the field must be small)."""
        if self.k != 1:
            raise ValueError("units() enumerates the field; needs k=1")
        if self.deg_p > 24:
            raise ValueError("field too large to enumerate")
        return [self._mk(v) for v in range(1, 1 << self.deg_p)]

    # -- internals -----------------------------------------------------

    def _reduce_mod_p(self, vec):
        # In-place-style reduction of an over-long residue list modulo the
        # monic p, coefficients mod 2^k.  Descending single pass: cascaded
        # positions are revisited because updates always land strictly lower.
        mask = self.mask
        deg_p = self.deg_p
        if self._tri is not None:
            e2, e1 = self._tri
            for d in range(len(vec) - 1, deg_p - 1, -1):
                c = vec[d]
                if c:
                    vec[d] = 0
                    vec[d - e2 + e1] = (vec[d - e2 + e1] - c) & mask
                    vec[d - e2] = (vec[d - e2] - c) & mask
        else:
            lows = [e for e in range(deg_p) if self.p.bits >> e & 1]
            for d in range(len(vec) - 1, deg_p - 1, -1):
                c = vec[d]
                if c:
                    vec[d] = 0
                    for e in lows:
                        vec[d - deg_p + e] = (vec[d - deg_p + e] - c) & mask
        del vec[deg_p:]
        return vec


class RingElem:
    """Immutable element of R_k; see the module docstring for storage."""

    __slots__ = ("ctx", "data", "_sparse")

    def __init__(self, ctx, residues):
        e = ctx.from_residues(residues)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "data", e.data)
        object.__setattr__(self, "_sparse", None)

    def __setattr__(self, name, value):
        raise AttributeError("RingElem is immutable")

    @property
    def coeffs(self):
        if self.ctx.k == 1:
            return tuple(self.data >> i & 1 for i in range(self.ctx.deg_p))
        return self.data

    def sparse(self):
        """Nonzero terms as ((exponent, residue), ...), cached."""
        s = self._sparse
        if s is None:
            if self.ctx.k == 1:
                bits = self.data
                s = tuple((i, 1) for i in range(bits.bit_length()) if bits >> i & 1)
            else:
                s = tuple((i, c) for i, c in enumerate(self.data) if c)
            object.__setattr__(self, "_sparse", s)
        return s

    def is_zero(self):
        return not self.data if self.ctx.k == 1 else not any(self.data)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RingElem)
                and self.ctx == other.ctx and self.data == other.data)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.ctx.k, self.data))

    def __add__(self, other):
        return ring_add(self, other)

    def __sub__(self, other):
        return ring_add(self, ring_neg(other))

    def __neg__(self):
        return ring_neg(self)

    def __mul__(self, other):
        return ring_mul(self, other)

    def __pow__(self, e):
        return ring_pow(self, e)

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"<{self} in {self.ctx!r}>"


def _same_ctx(a, b):
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")


def ring_add(a, b):
    """Coefficient-wise sum mod 2^k."""
    _same_ctx(a, b)
    ctx = a.ctx
    if ctx.k == 1:
        return ctx._mk(a.data ^ b.data)
    mask = ctx.mask
    return ctx._mk(tuple((x + y) & mask for x, y in zip(a.data, b.data)))


def ring_neg(a):
    """Coefficient-wise negation mod 2^k."""
    ctx = a.ctx
    if ctx.k == 1:
        return a
    mask = ctx.mask
    return ctx._mk(tuple(-x & mask for x in a.data))


def ring_sub(a, b):
    _same_ctx(a, b)
    ctx = a.ctx
    if ctx.k == 1:
        return ctx._mk(a.data ^ b.data)
    mask = ctx.mask
    return ctx._mk(tuple((x - y) & mask for x, y in zip(a.data, b.data)))


def ring_sum(cs, ctx=None):
    """Sum of a sequence; the empty sum is zero (ctx then required)."""
    cs = list(cs)
    if not cs:
        if ctx is None:
            raise ValueError("empty sum needs an explicit context")
        return ctx.zero()
    if ctx is not None and cs[0].ctx != ctx:
        raise ValueError("context mismatch")
    first = cs[0].ctx
    if first.k == 1:
        bits = 0
        for c in cs:
            if c.ctx != first:
                raise ValueError("context mismatch")
            bits ^= c.data
        return first._mk(bits)
    mask = first.mask
    acc = list(cs[0].data)
    for c in cs[1:]:
        if c.ctx != first:
            raise ValueError("context mismatch")
        for i, y in enumerate(c.data):
            if y:
                acc[i] = (acc[i] + y) & mask
    return first._mk(tuple(acc))


def ring_scalar_mul(c, a):
    """Product of a by the integer scalar c mod 2^k."""
    ctx = a.ctx
    c &= ctx.mask
    if c == 0:
        return ctx.zero()
    if c == 1:
        return a
    mask = ctx.mask
    return ctx._mk(tuple(x * c & mask for x in a.data))


def ring_mul(a, b):
    """Product in R_k: convolution over Z, coefficients mod 2^k, then
    reduction by the monic p."""
    _same_ctx(a, b)
    ctx = a.ctx
    if ctx.k == 1:
        return ctx._mk(ctx.fmul(a.data, b.data))
    sa, sb = a.sparse(), b.sparse()
    if not sa or not sb:
        return ctx.zero()
    if min(len(sa), len(sb)) <= _SPARSE_MAX:
        if len(sb) < len(sa):
            a, b = b, a
            sa, sb = sb, sa
        return ctx._mk(tuple(_mul_sparse(ctx, sa, b.data)))
    return ctx._mk(tuple(_mul_dense(ctx, a.data, b.data)))


def _mul_sparse(ctx, sa, bvec):
    mask = ctx.mask
    acc = [0] * (2 * ctx.deg_p)
    for e, c in sa:
        if c == 1:
            for i, y in enumerate(bvec):
                if y:
                    acc[e + i] = (acc[e + i] + y) & mask
        else:
            for i, y in enumerate(bvec):
                if y:
                    acc[e + i] = (acc[e + i] + c * y) & mask
    return ctx._reduce_mod_p(acc)


def _mul_dense(ctx, avec, bvec):
    # Kronecker substitution: pack residues into byte-aligned slots wide
    # enough that integer multiplication performs the exact convolution.
    d = ctx.deg_p
    nbytes = (2 * ctx.k + (2 * d).bit_length() + 8) // 8
    rbytes = (ctx.k + 7) // 8  # a residue never needs more than this
    pa = bytearray(d * nbytes)
    pb = bytearray(d * nbytes)
    for i, c in enumerate(avec):
        if c:
            pa[i * nbytes:i * nbytes + rbytes] = c.to_bytes(rbytes, "little")
    for i, c in enumerate(bvec):
        if c:
            pb[i * nbytes:i * nbytes + rbytes] = c.to_bytes(rbytes, "little")
    prod = int.from_bytes(bytes(pa), "little") * int.from_bytes(bytes(pb), "little")
    raw = prod.to_bytes(2 * d * nbytes + 16, "little")
    mask = ctx.mask
    acc = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") & mask
           for i in range(2 * d)]
    return ctx._reduce_mod_p(acc)


def ring_pow(a, e):
    """a raised to the nonnegative integer e by square-and-multiply."""
    if e < 0:
        raise ValueError("negative exponent")
    result = a.ctx.one()
    base = a
    while e:
        if e & 1:
            result = ring_mul(result, base)
        e >>= 1
        if e:
            base = ring_mul(base, base)
    return result


# -- field inversion ---------------------------------------------------

def _finv_bits(ctx, a):
    # a^(q-2) with q = 2^N: the inverse, computed purely by squarings and
    # multiplications.  The plain binary ladder over q-2 needs ~N products,
    # which hurts at the degrees the graph solvers use, so large fields
    # take the addition-chain route (same power, fewer multiplies).
    if a == 0:
        raise ValueError("zero inverse")
    n = ctx.deg_p
    fmul, fsqr = ctx.fmul, ctx.fsqr
    if n <= 64:
        e = (1 << n) - 2
        result, base = 1, a
        while e:
            if e & 1:
                result = fmul(result, base)
            e >>= 1
            if e:
                base = fsqr(base)
        return result
    # Itoh-Tsujii: build a^(2^(n-1)-1) along the binary expansion of n-1,
    # then square once.
    m = n - 1
    t = a
    cur = 1
    for bit in bin(m)[3:]:
        s = t
        for _ in range(cur):
            s = fsqr(s)
        t = fmul(s, t)
        cur *= 2
        if bit == "1":
            t = fmul(fsqr(t), a)
            cur += 1
    return fsqr(t)


def _finv_batch_bits(ctx, values):
    # Montgomery's trick: one inversion plus 3(n-1) multiplications.
    if not values:
        return []
    fmul = ctx.fmul
    prefix = [values[0]]
    for v in values[1:]:
        prefix.append(fmul(prefix[-1], v))
    inv = _finv_bits(ctx, prefix[-1])
    out = [0] * len(values)
    for i in range(len(values) - 1, 0, -1):
        out[i] = fmul(inv, prefix[i - 1])
        inv = fmul(inv, values[i])
    out[0] = inv
    return out


def field_inverse(a):
    """Inverse of a nonzero field element, as a^(q-2)."""
    if a.ctx.k != 1:
        raise ValueError("not a field")
    return a.ctx._mk(_finv_bits(a.ctx, a.data))


# -- moving between R_k and F ------------------------------------------

def project_mod2(a):
    """Reduce every residue mod 2, landing in F = R_1."""
    ctx = a.ctx
    if ctx.k == 1:
        return a
    field = ctx.field()
    bits = 0
    for e, c in a.sparse():
        if c & 1:
            bits |= 1 << e
    return field._mk(bits)


def lift(a, k):
    """Reinterpret a field element's 0/1 residues in a mod-2^k context."""
    if a.ctx.k != 1:
        raise ValueError("lift expects a field element")
    if k < 1:
        raise ValueError("lift target must have k >= 1")
    if k == 1:
        return a
    ctx = a.ctx.with_k(k)
    bits = a.data
    return ctx._mk(tuple(bits >> i & 1 for i in range(ctx.deg_p)))


def restrict(a, k):
    """Reduce an element's residues into the mod-2^k context (k <= a.ctx.k)."""
    ctx = a.ctx
    if k == ctx.k:
        return a
    if k > ctx.k:
        raise ValueError("restrict cannot raise the modulus")
    if k == 1:
        return project_mod2(a)
    out = ctx.with_k(k)
    mask = out.mask
    return out._mk(tuple(c & mask for c in a.data))


def halve_even(a, ctx_out):
    """Divide an everywhere-even element by 2, landing in ctx_out (k-1)."""
    ctx = a.ctx
    if ctx.k < 2:
        raise ValueError("halve_even needs k >= 2")
    if ctx_out.k != ctx.k - 1 or ctx_out.p.bits != ctx.p.bits:
        raise ValueError("context mismatch")
    if any(c & 1 for c in a.data):
        raise ValueError("element not even")
    halved = tuple(c >> 1 for c in a.data)
    if ctx_out.k == 1:
        bits = 0
        for i, c in enumerate(halved):
            bits |= c << i
        return ctx_out._mk(bits)
    return ctx_out._mk(halved)


def double_into(a, ctx_out):
    """Multiply by 2, reinterpreting a mod-2^(k-1) value mod 2^k."""
    ctx = a.ctx
    if ctx_out.k != ctx.k + 1 or ctx_out.p.bits != ctx.p.bits:
        raise ValueError("context mismatch")
    if ctx.k == 1:
        bits = a.data
        return ctx_out._mk(tuple(2 * (bits >> i & 1) for i in range(ctx.deg_p)))
    return ctx_out._mk(tuple(2 * c for c in a.data))


# -- textual polynomial format ------------------------------------------

def format_poly(coeffs):
    """Render integer coefficients (constant first) as '2x^5+x^3+1'."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}x" if e == 1 else f"{head}x^{e}")
    return "+".join(terms) if terms else "0"


def parse_poly(s):
    """Parse the textual format back into a coefficient tuple."""
    s = "".join(s.split())
    if s == "0":
        return (0,)
    out = {}
    for term in s.split("+"):
        if not term:
            raise ValueError("empty polynomial term")
        head, sep, tail = term.partition("x")
        c = int(head) if head else 1
        if not sep:
            e = 0
        elif not tail:
            e = 1
        elif tail.startswith("^"):
            e = int(tail[1:])
        else:
            raise ValueError(f"bad polynomial term: {term!r}")
        if e in out:
            raise ValueError(f"repeated exponent in {term!r}")
        out[e] = c
    top = max(out)
    return tuple(out.get(e, 0) for e in range(top + 1))
