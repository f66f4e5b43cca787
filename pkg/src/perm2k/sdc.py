"""Shortest cycles, shortest 2-disjoint cycles, and shortest 2-disjoint
paths on weighted undirected graphs, via pattern-graph permanents.

Edges get the monomial weight x^w, every unmarked vertex a self-loop 1,
so each cycle cover of the graph contributes x^(its total weight) to
the permanent of the adjacency matrix.  Directing a marked edge and
deleting the other out-edges of its source forces that edge into every
cover.  Summing over the 2^(k-1) orientations of the other marked edges
cancels covers with more than one nontrivial cycle mod 2 (f1); the
mod-4 combination with the terminal-swap patterns leaves exactly the
covers made of two disjoint cycles separating the first two marked
edges, each with coefficient 2 (f2).

Weights are randomized (isolation) so the optimum is unique with
probability at least 1/2 per trial, and the base weight is e // (2nm)
of the smallest surviving exponent e.
"""

import random
from itertools import combinations, product

from perm2k import ring as rg
from perm2k.gf2poly import select_trinomial
from perm2k.permanent import MatR, perm_mod2k
from perm2k.ring import RingCtx

MAX_MARKED = 8


class WeightedGraph:
    """Simple undirected graph with nonnegative integer edge weights."""

    __slots__ = ("n", "edges", "_wmap", "_adj")

    def __init__(self, n, edges):
        if n < 0:
            raise ValueError("negative vertex count")
        norm = []
        wmap = {}
        adj = [[] for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError("self-loops are not valid input edges")
            if w < 0:
                raise ValueError("negative edge weight")
            if u > v:
                u, v = v, u
            if (u, v) in wmap:
                raise ValueError(f"duplicate edge ({u},{v})")
            wmap[(u, v)] = w
            norm.append((u, v, w))
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_wmap", wmap)
        object.__setattr__(self, "_adj", [sorted(a) for a in adj])

    def __setattr__(self, name, value):
        raise AttributeError("WeightedGraph is immutable")

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._wmap

    def weight(self, u, v):
        return self._wmap[(min(u, v), max(u, v))]

    def neighbors(self, v):
        return self._adj[v]

    def max_weight(self):
        return max((w for _, _, w in self.edges), default=0)

    def with_weights(self, weights):
        """Same topology, new weights aligned with the edge tuple."""
        return WeightedGraph(self.n, [(u, v, w) for (u, v, _), w
                                      in zip(self.edges, weights)])

    def without_edge(self, u, v):
        u, v = min(u, v), max(u, v)
        return WeightedGraph(self.n, [e for e in self.edges if e[:2] != (u, v)])

    def __eq__(self, other):
        return (isinstance(other, WeightedGraph)
                and self.n == other.n and self.edges == other.edges)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={len(self.edges)})"


class MarkedInstance:
    """A graph plus an ordered list of marked edges (s_i, t_i)."""

    __slots__ = ("graph", "marked")

    def __init__(self, graph, marked):
        marked = tuple((s, t) for s, t in marked)
        if not 1 <= len(marked) <= MAX_MARKED:
            raise ValueError(f"need between 1 and {MAX_MARKED} marked edges")
        seen = set()
        for s, t in marked:
            if not graph.has_edge(s, t):
                raise ValueError(f"marked edge ({s},{t}) not in graph")
            key = frozenset((s, t))
            if key in seen:
                raise ValueError("marked edges must be distinct")
            seen.add(key)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "marked", marked)

    def __setattr__(self, name, value):
        raise AttributeError("MarkedInstance is immutable")

    def terminals(self):
        out = set()
        for s, t in self.marked:
            out.add(s)
            out.add(t)
        return out


def instance_context(inst, k):
    """Ring context whose modulus degree exceeds any cover weight."""
    g = inst.graph
    bound = g.n * g.max_weight() + 1
    return RingCtx(k, select_trinomial(bound))


def single_cycle_patterns(inst):
    """The P family: e1 fixed as (s1,t1), all orientations of the rest."""
    g = inst.graph
    s1, t1 = inst.marked[0]
    rest = inst.marked[1:]
    out = []
    for bits in product((0, 1), repeat=len(rest)):
        pat = [(s1, t1, g.weight(s1, t1))]
        for bit, (s, t) in zip(bits, rest):
            w = g.weight(s, t)
            pat.append((s, t, w) if bit == 0 else (t, s, w))
        out.append(tuple(pat))
    return out


def separating_patterns(inst):
    """The Q family: sources paired as (s1,s2) and (t1,t2).

    The two forced pairs need not be graph edges; they carry the weights
    of e1 and e2 so the cover bijection preserves total weight.
    """
    if len(inst.marked) < 2:
        raise ValueError("separating patterns need two marked edges")
    g = inst.graph
    (s1, t1), (s2, t2) = inst.marked[0], inst.marked[1]
    w1, w2 = g.weight(s1, t1), g.weight(s2, t2)
    rest = inst.marked[2:]
    out = []
    for bits in product((0, 1), repeat=len(rest)):
        pat = [(s1, s2, w1), (t1, t2, w2)]
        for bit, (s, t) in zip(bits, rest):
            w = g.weight(s, t)
            pat.append((s, t, w) if bit == 0 else (t, s, w))
        out.append(tuple(pat))
    return out


def pattern_matrix(inst, pattern, ctx):
    """Adjacency matrix of the pattern graph over the given ring context.

    Every undirected edge appears in both directions as x^w; unmarked
    vertices carry self-loop 1; each pattern pair (u,v,w) wipes row u
    except for the forced entry x^w at column v.  When the forced pair
    is one of the marked edges, its reverse direction (v,u) is deleted
    too: otherwise the cover that walks the marked edge back and forth
    counts as a "cycle" of twice its weight and undercuts every real
    solution (fatal for the disjoint-path reduction, whose forced edges
    have weight 0).  Synthesized pairs keep their reverses, which the
    cover bijection behind f2 relies on.
    """
    g = inst.graph
    n = g.n
    terms = inst.terminals()
    marked_sets = {frozenset(e) for e in inst.marked}
    zero = ctx.zero()
    one = ctx.one()
    monos = {0: one}

    def mono(w):
        e = monos.get(w)
        if e is None:
            e = ctx.monomial(1, w)
            monos[w] = e
        return e

    rows = [[zero] * n for _ in range(n)]
    for u, v, w in g.edges:
        m = mono(w)
        rows[u][v] = m
        rows[v][u] = m
    for v in range(n):
        if v not in terms:
            rows[v][v] = one
    sources = set()
    for u, v, _ in pattern:
        if u not in terms or v not in terms:
            raise ValueError("pattern references a non-terminal")
        if u in sources:
            raise ValueError("pattern repeats a source")
        sources.add(u)
    for u, _, _ in pattern:
        rows[u] = [zero] * n
    for u, v, w in pattern:
        rows[u][v] = mono(w)
        if frozenset((u, v)) in marked_sets:
            rows[v][u] = zero
    return MatR(ctx, rows)


def _poly_coeffs(value):
    coeffs = value.coeffs
    last = 0
    for i, c in enumerate(coeffs):
        if c:
            last = i
    return tuple(coeffs[:last + 1])


def f1(inst, workers=1, ctx=None):
    """Mod-2 pattern-permanent sum; surviving exponents are weights of
    single cycles through all the marked edges."""
    if ctx is None:
        ctx = instance_context(inst, 1)
    total = ctx.zero()
    for pat in single_cycle_patterns(inst):
        total = rg.ring_add(
            total, perm_mod2k(pattern_matrix(inst, pat, ctx), workers=workers))
    return _poly_coeffs(total)


def f2(inst, workers=1, ctx=None):
    """Mod-4 combination whose surviving exponents are weights of covers
    by exactly two disjoint cycles with e1 and e2 in different ones."""
    if len(inst.marked) < 2:
        raise ValueError("f2 needs at least two marked edges")
    if ctx is None:
        ctx = instance_context(inst, 2)
    total = ctx.zero()
    for pat in single_cycle_patterns(inst):
        total = rg.ring_add(
            total, perm_mod2k(pattern_matrix(inst, pat, ctx), workers=workers))
    for pat in separating_patterns(inst):
        total = rg.ring_sub(
            total, perm_mod2k(pattern_matrix(inst, pat, ctx), workers=workers))
    return _poly_coeffs(total)


def min_exponent(coeffs):
    """Smallest exponent with a nonzero coefficient, or None."""
    for e, c in enumerate(coeffs):
        if c:
            return e
    return None


def randomize_weights(g, seed):
    """Isolation weighting: w(e) -> 2nm*w(e) + w'(e) with w'(e) uniform
    on {0, ..., 2m-1}, drawn per edge in edge order from the seed."""
    m = len(g.edges)
    if m == 0:
        return g
    rng = random.Random(seed)
    scale = 2 * g.n * m
    return g.with_weights([scale * w + rng.randrange(2 * m)
                           for _, _, w in g.edges])


def _trial_seed(seed, t):
    # Counter-mixed per-trial seeds; one LCG step keeps trials decorrelated
    # while staying reproducible across platforms.
    return ((int(seed) * 6364136223846793005 + 1442695040888963407 + t)
            & 0xFFFFFFFFFFFFFFFF)


def _recovered_weight(j, g):
    return j // (2 * g.n * len(g.edges))


def shortest_cycle_through_edges(inst, seed=0, trials=5, workers=1):
    """Least total weight of one cycle through all marked edges, or None."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    g = inst.graph
    if not g.edges:
        return None
    best = None
    for t in range(trials):
        mod_g = randomize_weights(g, _trial_seed(seed, t))
        j = min_exponent(f1(MarkedInstance(mod_g, inst.marked), workers))
        if j is not None:
            w = _recovered_weight(j, mod_g)
            best = w if best is None else min(best, w)
    return best


def _pair_reorderings(marked):
    k = len(marked)
    for i, j in combinations(range(k), 2):
        rest = [marked[l] for l in range(k) if l not in (i, j)]
        yield (marked[i], marked[j], *rest)


def shortest_two_disjoint_cycles(inst, seed=0, trials=5, workers=1):
    """Least total weight of two vertex-disjoint cycles that jointly
    cover all marked edges (each containing at least one), or None."""
    if len(inst.marked) < 2:
        raise ValueError("need at least two marked edges")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    g = inst.graph
    best = None
    for t in range(trials):
        mod_g = randomize_weights(g, _trial_seed(seed, t))
        for marked in _pair_reorderings(inst.marked):
            j = min_exponent(f2(MarkedInstance(mod_g, marked), workers))
            if j is not None:
                w = _recovered_weight(j, mod_g)
                best = w if best is None else min(best, w)
    return best


def solve_sdp2(g, s1, t1, s2, t2, seed=0, trials=5, workers=1):
    """Least total weight of vertex-disjoint s1-t1 and s2-t2 paths.

    Each terminal pair is joined through a fresh vertex by weight-0
    edges; two disjoint cycles through those vertices are exactly two
    disjoint paths, of the same total weight.
    """
    terminals = (s1, t1, s2, t2)
    if len(set(terminals)) != 4:
        raise ValueError("terminals must be distinct")
    for v in terminals:
        if not 0 <= v < g.n:
            raise ValueError("terminals not in graph")
    u1, u2 = g.n, g.n + 1
    aug = WeightedGraph(g.n + 2, list(g.edges) + [
        (u1, s1, 0), (u1, t1, 0), (u2, s2, 0), (u2, t2, 0)])
    inst = MarkedInstance(aug, ((u1, s1), (u2, s2)))
    return shortest_two_disjoint_cycles(inst, seed=seed, trials=trials,
                                        workers=workers)


def _split_marked_edges(g, marked_vertices):
    # Marked vertices must form an independent set; splitting an edge
    # between two marked vertices restores that (weight on one half).
    marked = set(marked_vertices)
    edges = []
    n = g.n
    for u, v, w in g.edges:
        if u in marked and v in marked:
            mid = n
            n += 1
            edges.append((u, mid, w))
            edges.append((mid, v, 0))
        else:
            edges.append((u, v, w))
    return WeightedGraph(n, edges)


def sdce_from_marked_vertices(g, marked_vertices, l, seed=0, trials=5,
                              workers=1):
    """Shortest l disjoint cycles through marked vertices, reduced to
    marked-edge instances by picking one incident edge per vertex."""
    value, _ = _sdce_best(g, marked_vertices, l, seed, trials, workers)
    return value


def _sdce_best(g, marked_vertices, l, seed, trials, workers):
    if l not in (1, 2):
        raise ValueError("l must be 1 or 2")
    marked_vertices = list(marked_vertices)
    if len(set(marked_vertices)) != len(marked_vertices):
        raise ValueError("marked vertices must be distinct")
    for v in marked_vertices:
        if not 0 <= v < g.n:
            raise ValueError("marked vertex not in graph")
    if l == 2 and len(marked_vertices) < 2:
        return None, None  # two vertex-disjoint cycles cannot share one vertex
    g2 = _split_marked_edges(g, marked_vertices)
    best = None
    best_inst = None
    for choice in product(*(g2.neighbors(v) for v in marked_vertices)):
        if len(set(choice)) != len(choice):
            continue
        inst = MarkedInstance(g2, tuple(
            (v, u) for v, u in zip(marked_vertices, choice)))
        if l == 1:
            val = shortest_cycle_through_edges(inst, seed, trials, workers)
        else:
            val = shortest_two_disjoint_cycles(inst, seed, trials, workers)
        if val is not None and (best is None or val < best):
            best = val
            best_inst = inst
    return best, best_inst


def _solved_exponent(inst, l, workers):
    if l == 1:
        return min_exponent(f1(inst, workers))
    best = None
    for marked in _pair_reorderings(inst.marked):
        j = min_exponent(f2(MarkedInstance(inst.graph, marked), workers))
        if j is not None and (best is None or j < best):
            best = j
    return best


def reconstruct_cycles(inst, target_weight, seed=0, l=1, trials=5, workers=1):
    """Edge set of the optimum solution of weight target_weight, or None
    when no trial isolates a unique optimum.

    Under a weighting whose minimum solution is unique, an unmarked edge
    belongs to the solution exactly when deleting it worsens the solved
    value; the reconstructed set is verified to decompose into l
    vertex-disjoint cycles of the right weight covering the marks.
    """
    g = inst.graph
    marked_sets = {frozenset(e) for e in inst.marked}
    for t in range(trials):
        mod_g = randomize_weights(g, _trial_seed(seed, t))
        j0 = _solved_exponent(MarkedInstance(mod_g, inst.marked), l, workers)
        if j0 is None or _recovered_weight(j0, mod_g) != target_weight:
            continue
        kept = set(marked_sets)
        for u, v, _ in g.edges:
            key = frozenset((u, v))
            if key in marked_sets:
                continue
            g_e = mod_g.without_edge(u, v)
            try:
                inst_e = MarkedInstance(g_e, inst.marked)
            except ValueError:
                continue  # cannot happen for unmarked deletions
            je = _solved_exponent(inst_e, l, workers)
            if je is None or je > j0:
                kept.add(key)
        edges = frozenset(tuple(sorted(e)) for e in kept)
        if _verify_cycles(g, edges, marked_sets, l, target_weight):
            return edges
    return None


def _verify_cycles(g, edges, marked_sets, l, target_weight):
    # Independent check: degrees all 2 on touched vertices, exactly l
    # cycle components, marks covered (one per cycle at least), weights add up.
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = set()
    cycles = []
    for start in sorted(adj):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = next((w for w in adj[cur] if w != prev), None)
            if nxt is None or (nxt == start and len(cyc) < 3):
                return False
            if nxt == start:
                break
            if nxt in seen:
                return False
            seen.add(nxt)
            cyc.append(nxt)
            prev, cur = cur, nxt
        cycles.append(cyc)
    if len(cycles) != l:
        return False
    cycle_edges = []
    for cyc in cycles:
        es = {frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))
              for i in range(len(cyc))}
        cycle_edges.append(es)
    covered = set().union(*cycle_edges) if cycle_edges else set()
    if not marked_sets <= covered:
        return False
    if any(not (es & marked_sets) for es in cycle_edges):
        return False
    total = sum(g.weight(u, v) for u, v in edges)
    return total == target_weight
