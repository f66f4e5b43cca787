"""Permanent mod 2^k of matrices over R_k and over Z[x].

perm(A) = det(A) mod 2, so the base of the recursion is a field
determinant.  For k >= 2 the computation splits on perm(A) mod 2:

* singular case: a left kernel vector v (normalized so some coordinate
  is 1) turns perm(A) into two sums of (n-1)- and (n-2)-minor
  permanents taken mod 2^(k-1), all independent of each other;
* otherwise a row permutation makes every leading principal minor
  nonzero, and a telescoping chain of corner adjustments reduces to the
  singular case at full k on each leading block.

``perm_zx_mod2k`` embeds an integer-polynomial matrix into R_k with a
modulus of degree beyond deg(perm), so nothing wraps; ``perm_interpolate``
instead works in a small field and recovers each coefficient from unit
power sums.
"""

from dataclasses import dataclass
from itertools import combinations, product

from perm2k import ring as rg
from perm2k.gf2poly import select_trinomial
from perm2k.linalg import MatF, det_f, det_f_many, leading_minor_dets, null_vector
from perm2k.linalg import regularizing_permutation
from perm2k.parallel import pmap
from perm2k.ring import RingCtx, _finv_batch_bits, _finv_bits


class MatR:
    """Square matrix over a mod-2^k ring context."""

    __slots__ = ("ctx", "n", "_rows")

    def __init__(self, ctx, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix not square")
            for e in row:
                if e.ctx != ctx:
                    raise ValueError("context mismatch")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatR is immutable")

    @classmethod
    def identity(cls, ctx, n):
        one, zero = ctx.one(), ctx.zero()
        return cls(ctx, [[one if i == j else zero for j in range(n)]
                         for i in range(n)])

    @classmethod
    def from_int_coeffs(cls, ctx, rows):
        return cls(ctx, [[ctx.from_int_coeffs(e) for e in row] for row in rows])

    @property
    def entries(self):
        return tuple(e for row in self._rows for e in row)

    def entry(self, i, j):
        return self._rows[i][j]

    def project(self):
        """The matrix of residues mod 2, as a field matrix."""
        field = self.ctx.field()
        if self.ctx.k == 1:
            return MatF(field, [[e.data for e in row] for row in self._rows])
        return MatF(field, [[rg.project_mod2(e).data for e in row]
                            for row in self._rows])

    def restrict(self, k):
        """The matrix with every entry reduced mod 2^k."""
        out = self.ctx.with_k(k)
        return MatR(out, [[rg.restrict(e, k) for e in row] for row in self._rows])

    def minor(self, del_rows, del_cols):
        keep_r = [i for i in range(self.n) if i not in del_rows]
        keep_c = [j for j in range(self.n) if j not in del_cols]
        return MatR(self.ctx, [[self._rows[i][j] for j in keep_c] for i in keep_r])

    def permute_rows(self, perm):
        return MatR(self.ctx, [list(self._rows[p]) for p in perm])

    def leading(self, size):
        return MatR(self.ctx, [row[:size] for row in self._rows[:size]])

    def with_entry(self, i, j, elem):
        rows = [list(r) for r in self._rows]
        rows[i][j] = elem
        return MatR(self.ctx, rows)

    def __eq__(self, other):
        return (isinstance(other, MatR) and self.ctx == other.ctx
                and self._rows == other._rows)

    def __ne__(self, other):
        return not self.__eq__(other)


@dataclass(frozen=True)
class ZxMatrix:
    """Square matrix of integer polynomials, entries as coefficient
    tuples with the constant term first."""

    n: int
    entries: tuple

    @classmethod
    def from_lists(cls, rows):
        n = len(rows)
        ents = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix not square")
            ents.append(tuple(tuple(int(c) for c in e) for e in row))
        return cls(n, tuple(ents))

    @property
    def max_deg(self):
        deg = 0
        for row in self.entries:
            for e in row:
                for i in range(len(e) - 1, -1, -1):
                    if e[i]:
                        deg = max(deg, i)
                        break
        return deg

    def embed(self, ctx):
        return MatR(ctx, [[ctx.from_int_coeffs(e) for e in row]
                          for row in self.entries])


def zx_context(A, k):
    """Ring context whose modulus degree exceeds deg(perm(A))."""
    bound = A.n * A.max_deg + 1
    return RingCtx(k, select_trinomial(bound))


def perm_mod2(A):
    """Permanent mod 2 of a field matrix: exactly the determinant."""
    if A.ctx.k != 1:
        raise ValueError("perm_mod2 needs k = 1")
    return det_f(A.project())


def perm_mod2k(A, k=None, workers=1, trace=None):
    """Permanent of A over its R_k context, mod 2^k.

    All minor evaluations spawned at the outermost recursion level run
    as one ordered parallel batch; deeper levels are sequential within
    their worker.  ``trace``, when a dict, receives the regularizing
    permutation and corner-adjustment chain of the outermost
    nonsingular step (useful for tests and debugging only).
    """
    if k is not None and k != A.ctx.k:
        raise ValueError("context k mismatch")
    return _perm(A, workers, trace)


def _perm(A, workers=1, trace=None):
    ctx = A.ctx
    n = A.n
    if n == 0:
        return ctx.one()
    if n == 1:
        return A._rows[0][0]
    if ctx.k == 1:
        return det_f(A.project())
    v = null_vector(A.project().transpose())
    if v is None:
        return _perm_nonsingular(A, workers, trace)
    return _perm_singular(A, v, workers)


def _perm_singular(A, v, workers):
    # perm(A) = 2*(sum_j b_j perm(A[^i0, ^j]) mod 2^(k-1))
    #         - 2*sum_{i != i0} v_i (sum_{j<l} a_ij a_il perm(A[^{i0,i}, ^{j,l}])
    #                                mod 2^(k-1))   (mod 2^k)
    # where sum_i v_i a_ij = 2 b_j and v is normalized to v_{i0} = 1.
    ctx = A.ctx
    n = A.n
    k = ctx.k
    field = ctx.field()
    low = ctx.lower()
    vbits = [e.data for e in v]
    i0 = next(i for i, b in enumerate(vbits) if b)
    if vbits[i0] != 1:
        inv0 = _finv_bits(field, vbits[i0])
        fmul = field.fmul
        vbits = [fmul(inv0, b) if b else 0 for b in vbits]
    vk = [rg.lift(field._mk(b), k) if b else None for b in vbits]
    b = []
    for j in range(n):
        s = rg.ring_sum(
            (rg.ring_mul(vk[i], A._rows[i][j]) for i in range(n) if vbits[i]),
            ctx)
        b.append(rg.halve_even(s, low))
    low_mat = A.restrict(k - 1)
    minors1 = [low_mat.minor({i0}, {j}) for j in range(n)]
    rows2 = [i for i in range(n) if i != i0 and vbits[i]]
    pairs = list(combinations(range(n), 2))
    minors2 = [low_mat.minor({i0, i}, {j, l}) for i in rows2 for j, l in pairs]
    if low.k == 1:
        mats = [MatF(low, [[e.data for e in row] for row in m._rows])
                for m in minors1 + minors2]
        vals = det_f_many(mats, workers)
    else:
        vals = pmap(lambda m: _perm(m), minors1 + minors2, workers)
    sum1 = rg.ring_sum(
        (rg.ring_mul(b[j], vals[j]) for j in range(n)), low)
    terms2 = []
    pos = n
    for i in rows2:
        inner = []
        for j, l in pairs:
            coeff = rg.ring_mul(low_mat._rows[i][j], low_mat._rows[i][l])
            inner.append(rg.ring_mul(coeff, vals[pos]))
            pos += 1
        vi_low = rg.lift(field._mk(vbits[i]), k - 1)
        terms2.append(rg.ring_mul(vi_low, rg.ring_sum(inner, low)))
    sum2 = rg.ring_sum(terms2, low)
    return rg.double_into(rg.ring_sub(sum1, sum2), ctx)


def _perm_nonsingular(A, workers, trace=None):
    # Regularize so every leading principal minor is nonzero, then peel
    # corners: perm(B_i) = perm(C_i) - y_i perm(B_{i-1}) with C_i the
    # leading i-block whose (i,i) entry was shifted by y_i to make it
    # singular mod 2.
    ctx = A.ctx
    n = A.n
    k = ctx.k
    field = ctx.field()
    fmul = field.fmul
    q = regularizing_permutation(A.project())
    B = A.permute_rows(q)
    bbar = B.project()
    p_dets = leading_minor_dets(bbar)
    inv_p = _finv_batch_bits(field, p_dets[:-1])
    ybits = [fmul(p_dets[i], inv_p[i - 1]) for i in range(1, n)]
    acc = B._rows[0][0]
    for i in range(2, n + 1):
        y = ybits[i - 2]
        yk = rg.lift(field._mk(y), k)
        block = B.leading(i)
        c_mat = block.with_entry(i - 1, i - 1,
                                 rg.ring_add(block._rows[i - 1][i - 1], yk))
        vc = null_vector(c_mat.project().transpose())
        if vc is None:
            raise ArithmeticError("corner-adjusted block is not singular mod 2")
        pc = _perm_singular(c_mat, vc, workers)
        acc = rg.ring_sub(pc, rg.ring_mul(yk, acc))
    if trace is not None:
        trace["permutation"] = q
        trace["y_chain"] = [field._mk(y) for y in reversed(ybits)]
    return acc


def perm_zx_mod2k(A, k, workers=1):
    """Permanent mod 2^k of an integer-polynomial matrix, as a
    coefficient tuple (constant first, residues in [0, 2^k))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if A.n == 0:
        return (1 % (1 << k),)
    ctx = zx_context(A, k)
    value = perm_mod2k(A.embed(ctx), workers=workers)
    return _trim(value.coeffs)


def _trim(coeffs):
    last = 0
    for i, c in enumerate(coeffs):
        if c:
            last = i
    return tuple(coeffs[:last + 1])


# -- interpolation over R_k ---------------------------------------------

def power_sum_units(ctx, m):
    """Sum over all nonzero field elements a of lift(a)^m, in R_k.

    Mod 2 this is 1 when (q-1) | m and 0 otherwise; in R_k the (q-1)|m
    case lands on an odd element and the other case on an even one.
    """
    field = ctx.field()
    return rg.ring_sum(
        (rg.ring_pow(rg.lift(u, ctx.k), m) for u in field.units()), ctx)


def power_sum_product(ctx, m):
    """Sum of (a_1 ... a_{2^(k-1)})^m over all unit tuples, in R_k.

    Factorizes as power_sum_units(ctx, m) ** 2^(k-1); equals [q-1 | m]
    exactly mod 2^k, which is what coefficient extraction rests on.
    """
    return rg.ring_pow(power_sum_units(ctx, m), 1 << (ctx.k - 1))


def interpolation_context(A, k):
    """Small-field context for interpolation: the trinomial family member
    with 2^deg >= N + 2, where N - 1 bounds deg(perm(A))."""
    n_bound = A.n * A.max_deg + 1
    e1 = 1
    while (1 << (2 * e1)) < n_bound + 2:
        e1 *= 3
    p = select_trinomial(2 * e1)
    return RingCtx(k, p), n_bound


def perm_interpolate(A, k, budget=10 ** 6, workers=1):
    """Permanent mod 2^k via unit power sums over a small field.

    Each coefficient c_t of perm(A) is the sum over all 2^(k-1)-tuples
    of units of (prod)^(q-1-t) * perm(A(prod)), evaluated in R_k.  The
    number of inner permanents is (q-1)^(2^(k-1)), guarded by ``budget``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ctx, n_bound = interpolation_context(A, k)
    q = 1 << ctx.deg_p
    reps = 1 << (k - 1)
    if (q - 1) ** reps > budget:
        raise ValueError("interpolation budget")
    field = ctx.field()
    units = [rg.lift(field._mk(u), k) for u in range(1, q)]
    # Group tuples by their R_k product; only distinct products need an
    # inner permanent.
    counts = {}
    reps_elems = {}
    for tup in product(units, repeat=reps):
        s = tup[0]
        for extra in tup[1:]:
            s = rg.ring_mul(s, extra)
        counts[s.data] = counts.get(s.data, 0) + 1
        reps_elems[s.data] = s
    distinct = list(reps_elems.values())
    perms = pmap(lambda s: _perm_at(A, ctx, s), distinct, workers)
    acc = [ctx.zero() for _ in range(n_bound)]
    for s, pval in zip(distinct, perms):
        cnt = counts[s.data]
        w = rg.ring_pow(s, q - n_bound)
        for t in range(n_bound - 1, -1, -1):
            term = rg.ring_mul(w, pval)
            if cnt != 1:
                term = rg.ring_scalar_mul(cnt, term)
            acc[t] = rg.ring_add(acc[t], term)
            if t:
                w = rg.ring_mul(w, s)
    coeffs = []
    for e in acc:
        vec = e.coeffs
        if any(vec[1:]):
            raise ArithmeticError("interpolated coefficient is not constant")
        coeffs.append(vec[0])
    return _trim(coeffs)


def _perm_at(A, ctx, point):
    # perm of A with x substituted by a ring element.
    pows = [ctx.one()]
    for _ in range(A.max_deg):
        pows.append(rg.ring_mul(pows[-1], point))
    rows = []
    for row in A.entries:
        out = []
        for coeffs in row:
            out.append(rg.ring_sum(
                (rg.ring_scalar_mul(c, pows[e]) for e, c in enumerate(coeffs) if c),
                ctx))
        rows.append(out)
    return _perm(MatR(ctx, rows))
