"""Hafnians mod 2^k of symmetric integer matrices, and perfect matching
counts.

hf(A) = pf(A) mod 2, and over GF(2) a symmetric zero-diagonal matrix is
skew-symmetric with pf^2 = det, so the mod-2 base case is a bit-matrix
determinant.  For k >= 2 the recursion mirrors the permanent one: when
hf is even, a GF(2) kernel vector rewrites hf(A) through size-(2n-2)
and size-(2n-4) minors taken mod 2^(k-1); when odd, bumping one entry
a_ij by 1 makes it even at the price of one smaller minor at full k.

All arithmetic is plain integer arithmetic on residues; no polynomial
machinery is involved.
"""

from perm2k.parallel import pmap


class SymMatZ:
    """Symmetric integer matrix; the diagonal is ignored (forced to 0)."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        d = len(rows)
        for r in rows:
            if len(r) != d:
                raise ValueError("matrix not square")
        for i in range(d):
            rows[i][i] = 0
            for j in range(i + 1, d):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix not symmetric")
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("SymMatZ is immutable")

    @classmethod
    def from_upper(cls, d, upper):
        """Build from the strict upper triangle, row by row."""
        vals = list(upper)
        need = d * (d - 1) // 2
        if len(vals) != need:
            raise ValueError(f"expected {need} upper-triangle entries")
        rows = [[0] * d for _ in range(d)]
        pos = 0
        for i in range(d):
            for j in range(i + 1, d):
                rows[i][j] = rows[j][i] = vals[pos]
                pos += 1
        return cls(rows)

    def __eq__(self, other):
        return isinstance(other, SymMatZ) and self.rows == other.rows

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.rows)


def _det_mod2(rows):
    # Determinant over GF(2) of an integer matrix, rows as bitmasks.
    d = len(rows)
    bits = []
    for r in rows:
        b = 0
        for j, x in enumerate(r):
            if x & 1:
                b |= 1 << j
        bits.append(b)
    for col in range(d):
        at = next((i for i in range(col, d) if bits[i] >> col & 1), None)
        if at is None:
            return 0
        bits[col], bits[at] = bits[at], bits[col]
        for i in range(col + 1, d):
            if bits[i] >> col & 1:
                bits[i] ^= bits[col]
    return 1


def _kernel_mod2(rows):
    # Deterministic nonzero kernel vector over GF(2), or None.
    d = len(rows)
    bits = []
    for r in rows:
        b = 0
        for j, x in enumerate(r):
            if x & 1:
                b |= 1 << j
        bits.append(b)
    pivots = {}  # column -> reduced row bitmask
    for b in bits:
        for col, pb in pivots.items():
            if b >> col & 1:
                b ^= pb
        if b:
            pivots[b.bit_length() - 1] = b
    free = next((c for c in range(d) if c not in pivots), None)
    if free is None:
        return None
    v = [0] * d
    v[free] = 1
    # each pivot is its row's highest bit, so lower pivots resolve first
    for col in sorted(pivots):
        row = pivots[col]
        acc = 0
        for j in range(d):
            if j != col and row >> j & 1 and v[j]:
                acc ^= 1
        v[col] = acc
    return v


def hf_mod2(A):
    """Hafnian mod 2: the determinant of the bit matrix."""
    if A.dim % 2:
        raise ValueError("odd dimension")
    return _det_mod2(A.rows)


def hf_mod2k(A, k, workers=1):
    """Hafnian of a symmetric matrix mod 2^k."""
    if A.dim % 2:
        raise ValueError("odd dimension")
    if k < 1:
        raise ValueError("k must be >= 1")
    mask = (1 << k) - 1
    rows = [[x & mask for x in r] for r in A.rows]
    return _hf(rows, k, workers)


def _minor(rows, removed):
    keep = [i for i in range(len(rows)) if i not in removed]
    return [[rows[i][j] for j in keep] for i in keep]


def _hf(rows, k, workers=1):
    d = len(rows)
    mask = (1 << k) - 1
    if d == 0:
        return 1 & mask
    if d == 2:
        return rows[0][1] & mask
    if k == 1:
        return _det_mod2(rows)
    if _det_mod2(rows) == 0:
        v = _kernel_mod2(rows)
        return _hf_even(rows, k, v, workers)
    # Odd case: find a minor with odd hafnian, bump a_ij to even things out.
    pick = next((i, j) for i, j in _pairs(d)
                if _det_mod2(_minor(rows, {i, j})))
    i, j = pick
    bumped = [list(r) for r in rows]
    bumped[i][j] = (bumped[i][j] + 1) & mask
    bumped[j][i] = bumped[i][j]
    ve = _kernel_mod2(bumped)
    even_part = _hf_even(bumped, k, ve, workers)
    minor_part = _hf(_minor(rows, {i, j}), k, workers)
    return (even_part - minor_part) & mask


def _pairs(d):
    for i in range(d):
        for j in range(i + 1, d):
            yield i, j


def _hf_even(rows, k, v, workers=1):
    # hf(A) = 2(sum_j b_j hf(A[i0,j]) mod 2^(k-1))
    #       - sum_{i: v_i=1, i != i0} 2(sum_{p<q} a_ip a_iq hf(A[i0,i,p,q])
    #                                   mod 2^(k-1))        (mod 2^k)
    # with sum_i v_i a_ij = 2 b_j and v_{i0} = 1.
    d = len(rows)
    mask = (1 << k) - 1
    low_mask = (1 << (k - 1)) - 1
    i0 = v.index(1)
    others = [j for j in range(d) if j != i0]
    b = {}
    for j in others:
        s = sum(rows[i][j] for i in range(d) if v[i]) & mask
        if s & 1:
            raise ArithmeticError("kernel column sum is odd")
        b[j] = (s >> 1) & low_mask
    minors1 = [_minor(rows, {i0, j}) for j in others]
    support = [i for i in others if v[i]]
    minors2 = []
    index2 = []
    for i in support:
        rest = [p for p in range(d) if p not in (i0, i)]
        for a in range(len(rest)):
            for bq in range(a + 1, len(rest)):
                minors2.append(_minor(rows, {i0, i, rest[a], rest[bq]}))
                index2.append((i, rest[a], rest[bq]))
    vals = pmap(lambda mm: _hf(mm, k - 1), minors1 + minors2, workers)
    first = sum(b[j] * vals[pos] for pos, j in enumerate(others)) & low_mask
    total = (2 * first) & mask
    inner = {i: 0 for i in support}
    for pos, (i, p, q) in enumerate(index2):
        inner[i] = (inner[i] + rows[i][p] * rows[i][q]
                    * vals[len(others) + pos]) & low_mask
    for i in support:
        total = (total - 2 * inner[i]) & mask
    return total


def count_matchings_mod2k(g, k, workers=1):
    """Number of perfect matchings of the graph mod 2^k (weights ignored)."""
    if g.n % 2:
        return 0
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v, _ in g.edges:
        rows[u][v] = rows[v][u] = 1
    return hf_mod2k(SymMatZ(rows), k, workers)
