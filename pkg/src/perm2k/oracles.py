"""Independent reference implementations used only for testing.

Nothing here is on a production path, and each oracle is structurally
different from the code it checks: n!-expansion instead of elimination
recursions, pairing enumeration instead of the hafnian recursion,
extended Euclid instead of exponentiation, and the transfer-matrix /
characteristic-polynomial constructions instead of Gaussian
elimination.  Hard size caps keep them at desk scale.
"""

from itertools import combinations, permutations

from perm2k import _kernels
from perm2k import ring as rg
from perm2k.hafnian import SymMatZ
from perm2k.linalg import MatF, det_f
from perm2k.permanent import MatR, ZxMatrix

MAX_BRUTE_PERM = 9
MAX_BRUTE_HAFNIAN = 10
MAX_BRUTE_GRAPH = 8


def _poly_mul_z(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def brute_permanent(A):
    """Permanent by full n!-expansion with exact arithmetic.

    ZxMatrix input gives an integer coefficient tuple; MatR input gives
    a ring element computed with the ring's own operations.
    """
    if isinstance(A, ZxMatrix):
        if A.n > MAX_BRUTE_PERM:
            raise ValueError("matrix too large for brute expansion")
        total = [0]
        for sigma in permutations(range(A.n)):
            prod = [1]
            for i in range(A.n):
                prod = _poly_mul_z(prod, list(A.entries[i][sigma[i]]) or [0])
            if len(prod) > len(total):
                total += [0] * (len(prod) - len(total))
            for d, c in enumerate(prod):
                total[d] += c
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return tuple(total)
    if isinstance(A, MatR):
        if A.n > MAX_BRUTE_PERM:
            raise ValueError("matrix too large for brute expansion")
        ctx = A.ctx
        total = ctx.zero()
        for sigma in permutations(range(A.n)):
            prod = ctx.one()
            for i in range(A.n):
                prod = rg.ring_mul(prod, A.entry(i, sigma[i]))
            total = rg.ring_add(total, prod)
        return total
    raise TypeError("expected ZxMatrix or MatR")


def brute_hafnian(A):
    """Hafnian by recursive enumeration of perfect pairings."""
    rows = A.rows if isinstance(A, SymMatZ) else [list(r) for r in A]
    d = len(rows)
    if d > MAX_BRUTE_HAFNIAN:
        raise ValueError("matrix too large for pairing enumeration")
    if d % 2:
        raise ValueError("odd dimension")

    def rec(active):
        if not active:
            return 1
        i = active[0]
        total = 0
        for pos in range(1, len(active)):
            j = active[pos]
            if rows[i][j]:
                total += rows[i][j] * rec(active[1:pos] + active[pos + 1:])
        return total

    return rec(tuple(range(d)))


def enumerate_cycles(g, min_len=3):
    """All undirected simple cycles of the graph with at least min_len
    vertices (min_len=2 admits an edge walked both ways), as
    (weight, vertex frozenset, edge frozenset) triples."""
    out = []
    if min_len <= 2:
        for u, v, w in g.edges:
            out.append((2 * w, frozenset((u, v)), frozenset({(u, v)})))
    n = g.n

    def extend(path, weight):
        head = path[0]
        cur = path[-1]
        for nxt in g.neighbors(cur):
            if nxt == head and len(path) >= 3:
                if path[1] < path[-1]:  # one orientation per cycle
                    edges = frozenset(
                        tuple(sorted((path[i], path[(i + 1) % len(path)])))
                        for i in range(len(path)))
                    out.append((weight + g.weight(cur, head),
                                frozenset(path), edges))
            elif nxt > head and nxt not in path:
                extend(path + [nxt], weight + g.weight(cur, nxt))

    for s in range(n):
        extend([s], 0)
    return out


def brute_disjoint_cycles(inst, l, min_len=3):
    """Minimum total weight of l vertex-disjoint cycles covering all
    marked edges, each containing at least one; None if impossible."""
    sols = brute_cycle_solutions(inst, l, min_len)
    return min((w for w, _ in sols), default=None)


def brute_cycle_solutions(inst, l, min_len=3):
    """All solutions as (weight, frozenset-of-edge-frozensets) pairs."""
    g = inst.graph
    if g.n > MAX_BRUTE_GRAPH:
        raise ValueError("graph too large for cycle enumeration")
    marked = {frozenset(e) for e in inst.marked}
    marked_t = {tuple(sorted(e)) for e in marked}
    cycles = enumerate_cycles(g, min_len)
    sols = []
    if l == 1:
        for w, _, edges in cycles:
            if marked_t <= edges:
                sols.append((w, frozenset([edges])))
        return sols
    if l != 2:
        raise ValueError("l must be 1 or 2")
    for (w1, v1, e1), (w2, v2, e2) in combinations(cycles, 2):
        if v1 & v2:
            continue
        if not marked_t <= (e1 | e2):
            continue
        if not (e1 & marked_t) or not (e2 & marked_t):
            continue
        sols.append((w1 + w2, frozenset([e1, e2])))
    return sols


def brute_disjoint_paths(g, s1, t1, s2, t2):
    """Minimum total weight of vertex-disjoint s1-t1 and s2-t2 paths."""
    if g.n > MAX_BRUTE_GRAPH:
        raise ValueError("graph too large for path enumeration")

    def paths(s, t):
        found = []

        def walk(path, weight):
            cur = path[-1]
            if cur == t:
                found.append((weight, frozenset(path)))
                return
            for nxt in g.neighbors(cur):
                if nxt not in path:
                    walk(path + [nxt], weight + g.weight(cur, nxt))

        walk([s], 0)
        return found

    best = None
    p2 = paths(s2, t2)
    for w1, verts1 in paths(s1, t1):
        for w2, verts2 in p2:
            if verts1 & verts2:
                continue
            total = w1 + w2
            if best is None or total < best:
                best = total
    return best


def ext_euclid_inverse(a):
    """Field inverse by the extended Euclidean algorithm."""
    ctx = a.ctx
    if ctx.k != 1:
        raise ValueError("not a field")
    if a.data == 0:
        raise ValueError("zero inverse")
    r0, r1 = ctx.p.bits, a.data
    s0, s1 = 0, 1
    while r1:
        q, r = _kernels.cldivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _kernels.clmul(q, s1)
    if r0 != 1:
        raise ArithmeticError("modulus is not irreducible")
    return ctx._mk(_kernels.clrem(s0, ctx.p.bits))


# -- bivariate polynomials over F, for the rank construction ------------

def _bi_add(a, b):
    out = dict(a)
    for key, v in b.items():
        w = out.get(key, 0) ^ v
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return out


def _bi_mul(ctx, a, b):
    fmul = ctx.fmul
    out = {}
    for (ya, ta), va in a.items():
        for (yb, tb), vb in b.items():
            key = (ya + yb, ta + tb)
            prod = vb if va == 1 else (va if vb == 1 else fmul(va, vb))
            w = out.get(key, 0) ^ prod
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def _bi_det(ctx, mat):
    n = len(mat)
    if n == 0:
        return {(0, 0): 1}
    memo = {}

    def rec(cols):
        if len(cols) == 1:
            return mat[n - 1][cols[0]]
        key = cols
        got = memo.get(key)
        if got is not None:
            return got
        row = n - len(cols)
        acc = {}
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if entry:
                sub = rec(cols[:pos] + cols[pos + 1:])
                acc = _bi_add(acc, _bi_mul(ctx, entry, sub))
        memo[key] = acc
        return acc

    return rec(tuple(range(n)))


def rank_via_charpoly(A):
    """Rank over F via the characteristic polynomial of the y-scaled
    symmetrized matrix: rank = n - (least power of t present)."""
    if A.rows > 4 or A.cols > 4:
        raise ValueError("matrix too large for charpoly rank")
    ctx = A.ctx
    n0 = A.rows
    m0 = A.cols
    d = n0 + m0
    # block symmetrization [[0, A], [A^T, 0]] doubles the rank
    block = [[0] * d for _ in range(d)]
    for i in range(n0):
        for j in range(m0):
            block[i][n0 + j] = A._rows[i][j]
            block[n0 + j][i] = A._rows[i][j]
    mat = []
    for i in range(d):
        row = []
        for j in range(d):
            entry = {}
            if block[i][j]:
                entry[(i, 0)] = block[i][j]  # y^i * a_ij (char 2: sign-free)
            if i == j:
                entry[(0, 1)] = entry.get((0, 1), 0) ^ 1  # + t
            row.append(entry)
        mat.append(row)
    char = _bi_det(ctx, mat)
    m = min(t for (_, t) in char)
    return (d - m) // 2


def companion_embedding_check(f, g, d):
    """Verify the lower-triangular Toeplitz embedding P respects both
    addition and multiplication on two integer polynomials."""

    def deg(c):
        for i in range(len(c) - 1, -1, -1):
            if c[i]:
                return i
        return 0

    f = list(f)
    g = list(g)
    if deg(f) + deg(g) >= d:
        raise ValueError("degree overflow")

    def embed(coeffs):
        return [[coeffs[i - j] if 0 <= i - j < len(coeffs) else 0
                 for j in range(d)] for i in range(d)]

    def madd(a, b):
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def mmul(a, b):
        return [[sum(a[i][l] * b[l][j] for l in range(d)) for j in range(d)]
                for i in range(d)]

    fg = _poly_mul_z(f, g)
    f_plus_g = [x + y for x, y in
                zip(f + [0] * (len(g) - len(f)), g + [0] * (len(f) - len(g)))]
    if embed(f_plus_g) != madd(embed(f), embed(g)):
        return False
    return embed(fg) == mmul(embed(f), embed(g))


def mv_det_check(A):
    """Transfer-matrix determinant check: closed-walk sequences with
    strictly increasing heads, evaluated as a^T M^n b, against det_f.

    States are [parity, head, position]; the start vector sits in the
    otherwise-unreachable opposite-parity [*, 1, 1] slot and fans out to
    every fresh-head state with weight 1.
    """
    if A.rows > 3:
        raise ValueError("matrix too large for transfer-matrix check")
    ctx = A.ctx
    fmul = ctx.fmul
    n = A.rows
    if n == 0:
        return det_f(A) == ctx.one()
    a = A._rows

    def idx(p, h, u):
        return (p * n + (h - 1)) * n + (u - 1)

    size = 2 * n * n
    m = [[0] * size for _ in range(size)]
    p0 = n % 2
    src = idx(1 - p0, 1, 1)
    for h in range(1, n + 1):
        m[src][idx(p0, h, h)] ^= 1
    for p in (0, 1):
        for h in range(1, n + 1):
            for u in range(h, n + 1):
                row = m[idx(p, h, u)]
                for v in range(h + 1, n + 1):
                    row[idx(p, h, v)] ^= a[u - 1][v - 1]
                for h2 in range(h + 1, n + 1):
                    row[idx(1 - p, h2, h2)] ^= a[u - 1][h - 1]
    vec = [0] * size
    vec[src] = 1
    for _ in range(n):
        new = [0] * size
        for i, x in enumerate(vec):
            if x:
                row = m[i]
                for j, y in enumerate(row):
                    if y:
                        new[j] ^= y if x == 1 else (x if y == 1 else fmul(x, y))
        vec = new
    total = 0
    for p in (0, 1):
        for h in range(1, n + 1):
            for u in range(h, n + 1):
                x = vec[idx(p, h, u)]
                y = a[u - 1][h - 1]
                if x and y:
                    total ^= y if x == 1 else (x if y == 1 else fmul(x, y))
    return ctx._mk(total) == det_f(A)
