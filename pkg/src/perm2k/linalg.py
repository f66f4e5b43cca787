"""Exact linear algebra over the field F = GF(2)[x]/(p(x)).

Everything here is elimination-based.  Row updates use cross
multiplication (row_j <- piv*row_j - f*row_i), which needs no division;
the single field inversion a determinant or solve does need is deferred
to the end, and batched where many values are produced together.

Pivoting is deterministic: the first nonzero entry in column order.
Matrices store their field entries as int-packed polynomials; the
``entries`` view wraps them back into ring elements.
"""

from perm2k.parallel import pmap
from perm2k.ring import _finv_batch_bits, _finv_bits


class MatF:
    """Matrix over the field F (a k=1 ring context)."""

    __slots__ = ("ctx", "rows", "cols", "_rows")

    def __init__(self, ctx, rows):
        if ctx.k != 1:
            raise ValueError("MatF needs a field context (k=1)")
        packed = []
        width = None
        for row in rows:
            prow = []
            for e in row:
                if isinstance(e, int):
                    prow.append(e)
                else:
                    if e.ctx != ctx:
                        raise ValueError("context mismatch")
                    prow.append(e.data)
            if width is None:
                width = len(prow)
            elif len(prow) != width:
                raise ValueError("ragged rows")
            packed.append(prow)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "_rows", packed)
        object.__setattr__(self, "rows", len(packed))
        object.__setattr__(self, "cols", 0 if width is None else width)

    def __setattr__(self, name, value):
        raise AttributeError("MatF is immutable")

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def entries(self):
        return tuple(self.ctx._mk(v) for row in self._rows for v in row)

    def entry(self, i, j):
        return self.ctx._mk(self._rows[i][j])

    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return MatF(self.ctx, [[self._rows[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def permute_rows(self, perm):
        return MatF(self.ctx, [list(self._rows[p]) for p in perm])

    def mul(self, other):
        if self.ctx != other.ctx or self.cols != other.rows:
            raise ValueError("shape or context mismatch")
        fmul = self.ctx.fmul
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = 0
                for l in range(self.cols):
                    a, b = self._rows[i][l], other._rows[l][j]
                    if a and b:
                        acc ^= b if a == 1 else (a if b == 1 else fmul(a, b))
                row.append(acc)
            out.append(row)
        return MatF(self.ctx, out)

    def mul_vector(self, vec):
        fmul = self.ctx.fmul
        vals = [v.data if not isinstance(v, int) else v for v in vec]
        out = []
        for i in range(self.rows):
            acc = 0
            for l in range(self.cols):
                a, b = self._rows[i][l], vals[l]
                if a and b:
                    acc ^= b if a == 1 else (a if b == 1 else fmul(a, b))
            out.append(self.ctx._mk(acc))
        return out

    def __eq__(self, other):
        return (isinstance(other, MatF) and self.ctx == other.ctx
                and self._rows == other._rows)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.ctx.k, tuple(tuple(r) for r in self._rows)))


def _xmul(fmul, a, b):
    # fmul with the 0/1 shortcuts that dominate on monomial matrices.
    if a == 0 or b == 0:
        return 0
    if a == 1:
        return b
    if b == 1:
        return a
    return fmul(a, b)


def _det_scaled(ctx, rows):
    # Division-free elimination.  Returns (value, scale) with
    # det = value / scale; scale is always nonzero.
    n = len(rows)
    if n == 0:
        return 1, 1
    fmul = ctx.fmul
    m = [list(r) for r in rows]
    scale = 1
    for i in range(n):
        piv_at = next((r for r in range(i, n) if m[r][i]), None)
        if piv_at is None:
            return 0, scale
        if piv_at != i:
            m[i], m[piv_at] = m[piv_at], m[i]
        piv = m[i][i]
        rowi = m[i]
        for r in range(i + 1, n):
            rowr = m[r]
            f = rowr[i]
            if f:
                for c in range(i + 1, n):
                    rowr[c] = _xmul(fmul, piv, rowr[c]) ^ _xmul(fmul, f, rowi[c])
                rowr[i] = 0
                if piv != 1:
                    scale = _xmul(fmul, scale, piv)
    value = 1
    for i in range(n):
        value = _xmul(fmul, value, m[i][i])
    return value, scale


def det_f(A):
    """Exact determinant over F by Gaussian elimination."""
    if not A.is_square():
        raise ValueError("matrix not square")
    value, scale = _det_scaled(A.ctx, A._rows)
    if value == 0:
        return A.ctx.zero()
    if scale == 1:
        return A.ctx._mk(value)
    return A.ctx._mk(A.ctx.fmul(value, _finv_bits(A.ctx, scale)))


def det_f_many(mats, workers=1):
    """Determinants of a batch of matrices over one context.

    The per-determinant field inversions collapse into a single one via
    batched inversion, which is what makes wide minor batches cheap.
    """
    mats = list(mats)
    if not mats:
        return []
    ctx = mats[0].ctx
    scaled = pmap(lambda A: _det_scaled(ctx, A._rows), mats, workers)
    inv = _finv_batch_bits(ctx, [s for _, s in scaled])
    fmul = ctx.fmul
    return [ctx._mk(_xmul(fmul, v, iv)) for (v, _), iv in zip(scaled, inv)]


def rank_f(A):
    """Rank over F by row reduction (no divisions needed)."""
    fmul = A.ctx.fmul
    m = [list(r) for r in A._rows]
    nrows, ncols = A.rows, A.cols
    rank = 0
    for col in range(ncols):
        piv_at = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv_at is None:
            continue
        m[rank], m[piv_at] = m[piv_at], m[rank]
        piv = m[rank][col]
        rowp = m[rank]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                m[r] = [_xmul(fmul, piv, x) ^ _xmul(fmul, f, y)
                        for x, y in zip(m[r], rowp)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _greedy_independent(ctx, vectors):
    # Indices whose prefix rank increments, i.e. the lexicographically
    # first row basis.  Cross multiplication keeps it division-free;
    # scaling by nonzero factors never changes independence.
    fmul = ctx.fmul
    basis = []
    chosen = []
    for idx, vec in enumerate(vectors):
        v = list(vec)
        for pivcol, bv in basis:
            f = v[pivcol]
            if f:
                piv = bv[pivcol]
                v = [_xmul(fmul, piv, x) ^ _xmul(fmul, f, y)
                     for x, y in zip(v, bv)]
        pivcol = next((c for c, x in enumerate(v) if x), None)
        if pivcol is not None:
            basis.append((pivcol, v))
            chosen.append(idx)
    return chosen


def _solve_upper(ctx, m, rhs_cols):
    # Back-substitution on an upper-triangular system with nonzero diagonal;
    # one batched inversion covers every pivot.
    fmul = ctx.fmul
    n = len(m)
    inv_diag = _finv_batch_bits(ctx, [m[i][i] for i in range(n)])
    sols = []
    for rhs in rhs_cols:
        z = [0] * n
        for i in range(n - 1, -1, -1):
            acc = rhs[i]
            for j in range(i + 1, n):
                acc ^= _xmul(fmul, m[i][j], z[j])
            z[i] = _xmul(fmul, acc, inv_diag[i])
        sols.append(z)
    return sols


def _forward_eliminate(ctx, m, rhs_cols):
    # In-place forward elimination with row swaps on [m | rhs_cols].
    # Returns False when a pivot is missing (singular).
    fmul = ctx.fmul
    n = len(m)
    for i in range(n):
        piv_at = next((r for r in range(i, n) if m[r][i]), None)
        if piv_at is None:
            return False
        if piv_at != i:
            m[i], m[piv_at] = m[piv_at], m[i]
            for rhs in rhs_cols:
                rhs[i], rhs[piv_at] = rhs[piv_at], rhs[i]
        piv = m[i][i]
        rowi = m[i]
        for r in range(i + 1, n):
            f = m[r][i]
            if f:
                m[r] = [_xmul(fmul, piv, x) ^ _xmul(fmul, f, y)
                        for x, y in zip(m[r], rowi)]
                for rhs in rhs_cols:
                    rhs[r] = _xmul(fmul, piv, rhs[r]) ^ _xmul(fmul, f, rhs[i])
    return True


def null_vector(A):
    """A nontrivial kernel vector of a square singular A, else None.

    Rows and columns are permuted so the leading rank-sized block is
    invertible, the free coordinates are pinned to one, and the bound
    block is solved for; the permutations are then undone.
    """
    if not A.is_square():
        raise ValueError("matrix not square")
    ctx = A.ctx
    n = A.rows
    if n == 0:
        return None
    rowsel = _greedy_independent(ctx, A._rows)
    m = len(rowsel)
    if m == n:
        return None
    cols = [[A._rows[i][j] for i in range(n)] for j in range(n)]
    colsel = _greedy_independent(ctx, cols)
    rest_cols = [j for j in range(n) if j not in set(colsel)]
    colperm = colsel + rest_cols
    # B z = C * 1 over the selected rows (char 2 absorbs the minus sign).
    b = [[A._rows[i][j] for j in colsel] for i in rowsel]
    rhs = [0] * m
    for pos, i in enumerate(rowsel):
        acc = 0
        for j in rest_cols:
            acc ^= A._rows[i][j]
        rhs[pos] = acc
    if not _forward_eliminate(ctx, b, [rhs]):
        raise ValueError("selected block unexpectedly singular")
    z = _solve_upper(ctx, b, [rhs])[0]
    z.extend([1] * (n - m))
    v = [0] * n
    for pos, j in enumerate(colperm):
        v[j] = z[pos]
    return [ctx._mk(x) for x in v]


def regularizing_permutation(A):
    """Permutation q such that every leading principal minor of the
    matrix with rows (A[q[0]], A[q[1]], ...) is nonzero.

    q[i] is the row whose arrival raises the rank of the first i+1
    columns; the selection is greedy in row order.
    """
    if not A.is_square():
        raise ValueError("matrix not square")
    ctx = A.ctx
    fmul = ctx.fmul
    n = A.rows
    residual = [list(r) for r in A._rows]
    in_basis = [False] * n
    order = []
    for col in range(n):
        at = next((r for r in range(n)
                   if not in_basis[r] and residual[r][col]), None)
        if at is None:
            raise ValueError("matrix singular")
        order.append(at)
        in_basis[at] = True
        pivrow = residual[at]
        piv = pivrow[col]
        for r in range(n):
            if not in_basis[r]:
                f = residual[r][col]
                if f:
                    residual[r] = [_xmul(fmul, piv, x) ^ _xmul(fmul, f, y)
                                   for x, y in zip(residual[r], pivrow)]
    return tuple(order)


def leading_minor_dets(A):
    """Determinants of all leading principal minors, assuming each is
    nonzero (i.e. A was already regularized).  One batched inversion."""
    ctx = A.ctx
    fmul = ctx.fmul
    n = A.rows
    m = [list(r) for r in A._rows]
    rowscale = [1] * n
    for i in range(n):
        piv = m[i][i]
        if piv == 0:
            raise ValueError("leading principal minor vanished")
        rowi = m[i]
        for r in range(i + 1, n):
            f = m[r][i]
            if f:
                m[r] = [_xmul(fmul, piv, x) ^ _xmul(fmul, f, y)
                        for x, y in zip(m[r], rowi)]
                rowscale[r] = _xmul(fmul, rowscale[r], piv)
    num = []
    acc = 1
    for i in range(n):
        acc = _xmul(fmul, acc, m[i][i])
        num.append(acc)
    den = []
    acc = 1
    for i in range(n):
        acc = _xmul(fmul, acc, rowscale[i])
        den.append(acc)
    inv_den = _finv_batch_bits(ctx, den)
    return [_xmul(fmul, v, iv) for v, iv in zip(num, inv_den)]


def inverse_f(A):
    """Matrix inverse over F by elimination; A must be nonsingular."""
    if not A.is_square():
        raise ValueError("matrix not square")
    ctx = A.ctx
    n = A.rows
    m = [list(r) for r in A._rows]
    rhs_cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    if not _forward_eliminate(ctx, m, rhs_cols):
        raise ValueError("matrix singular")
    sols = _solve_upper(ctx, m, rhs_cols)
    # sols[j] is column j of the inverse
    return MatF(ctx, [[sols[j][i] for j in range(n)] for i in range(n)])
