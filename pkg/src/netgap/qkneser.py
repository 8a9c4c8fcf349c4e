"""q-Kneser graphs and hypergraphs, exact chromatic number, homomorphisms.

The chromatic-number solver is a DSATUR branch and bound over iterated
k-colorability tests, with a maximum clique pinned to distinct colors to
break color symmetry.  Hypergraph coloring reduces to coloring the
co-occurrence graph, since properness here is a pairwise condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExhausted, SizeLimitExceeded
from .gf import field_of_order
from .graphs import Coloring, Hypergraph, UGraph
from .subspaces import (
    ENUMERATION_LIMIT,
    Subspace,
    enumerate_subspaces,
    intersection,
    spread,
    subspace_from_rows,
    sum_dim,
)

DEFAULT_BUDGET = 10**8


class _Budget:
    __slots__ = ("remaining", "used")

    def __init__(self, limit: int):
        self.remaining = limit
        self.used = 0

    def spend(self, what: str = "search") -> None:
        if self.remaining <= 0:
            raise BudgetExhausted(f"{what} budget exhausted", nodes_used=self.used)
        self.remaining -= 1
        self.used += 1


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_qkneser(q: int, n: int, m: int, *, limit: int = ENUMERATION_LIMIT) -> UGraph:
    """qK_{n:m}: m-subspaces of F_q^n, adjacent iff trivially intersecting."""
    fld = field_of_order(q)
    verts = enumerate_subspaces(fld, n, m, limit=limit)
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if sum_dim([verts[i], verts[j]]) == 2 * m:
                edges.append((i, j))
    return UGraph.from_edges(len(verts), edges, labels=tuple(verts))


def build_qkneser_hyper(q: int, t: int, h: int, *, limit: int = ENUMERATION_LIMIT) -> Hypergraph:
    """qK^h_{ht:t}: hyperedges are the h-subsets of t-subspaces summing to F_q^{ht}."""
    if h < 2:
        raise ValueError("hypergraph generalization needs h >= 2")
    fld = field_of_order(q)
    n = h * t
    verts = enumerate_subspaces(fld, n, t, limit=limit)
    n_subsets = 1
    for i in range(h):
        n_subsets = n_subsets * (len(verts) - i) // (i + 1)
    if n_subsets > limit:
        raise SizeLimitExceeded(f"{n_subsets} candidate hyperedges exceed limit {limit}")
    hyperedges = [
        subset
        for subset in itertools.combinations(range(len(verts)), h)
        if sum_dim([verts[i] for i in subset]) == n
    ]
    return Hypergraph.from_hyperedges(len(verts), h, hyperedges, labels=tuple(verts))


def spread_clique(q: int, t: int) -> tuple[int, ...]:
    """Vertex indices of a (q^t+1)-clique of qK_{2t:t} coming from a t-spread."""
    fld = field_of_order(q)
    members = spread(fld, t)
    index = {s.sort_key: i for i, s in enumerate(enumerate_subspaces(fld, 2 * t, t))}
    return tuple(sorted(index[s.sort_key] for s in members))


def qkneser_clique_number(q: int, t: int) -> int:
    """Exact maximum clique size of qK_{2t:t}, which is q^t + 1.

    Upper bound by counting: clique members intersect pairwise trivially,
    so their q^t - 1 nonzero vectors are disjoint inside the q^{2t} - 1
    nonzero vectors of the ambient space.  A t-spread attains it.
    """
    return q**t + 1


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------

def max_clique(g: UGraph, budget: int = DEFAULT_BUDGET) -> tuple[tuple[int, ...], bool]:
    """Exact maximum clique by branch and bound; (clique, completed)."""
    n = g.num_vertices
    adj = [0] * n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    best: list[int] = []
    bud = _Budget(budget)

    def expand(current: list[int], candidates: int) -> None:
        nonlocal best
        bud.spend("clique")
        if not candidates:
            if len(current) > len(best):
                best = list(current)
            return
        while candidates:
            if len(current) + bin(candidates).count("1") <= len(best):
                return
            # take the candidate earliest in the static order
            v = min((v for v in _bits(candidates)), key=lambda v: pos[v])
            candidates &= ~(1 << v)
            expand(current + [v], candidates & adj[v])

    try:
        expand([], (1 << n) - 1)
        return tuple(sorted(best)), True
    except BudgetExhausted:
        return tuple(sorted(best)), False


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# k-colorability (DSATUR branch and bound)
# ---------------------------------------------------------------------------

def _k_colorable(adj: list[list[int]], k: int, pinned: tuple[int, ...], bud: _Budget) -> Coloring | None:
    """Complete search for a proper k-coloring with a clique pinned to colors 0..;
    returns None only after exhausting the (symmetry-reduced) space."""
    n = len(adj)
    # the symmetry reduction is only sound when the pinned set is a clique
    for i, v in enumerate(pinned):
        neighbors = set(adj[v])
        assert all(u in neighbors for u in pinned[i + 1 :]), "pinned set is not a clique"
    if len(pinned) > k:
        return None
    color = [-1] * n
    forbid = [0] * n
    counts = [[0] * k for _ in range(n)]
    degree = [len(a) for a in adj]
    kmask = (1 << k) - 1

    def assign(v: int, c: int) -> None:
        color[v] = c
        for u in adj[v]:
            counts[u][c] += 1
            if counts[u][c] == 1:
                forbid[u] |= 1 << c

    def unassign(v: int, c: int) -> None:
        color[v] = -1
        for u in adj[v]:
            counts[u][c] -= 1
            if counts[u][c] == 0:
                forbid[u] &= ~(1 << c)

    for i, v in enumerate(pinned):
        if forbid[v] & (1 << i):
            return None
        assign(v, i)

    uncolored = n - len(pinned)

    def search(remaining: int, max_used: int) -> bool:
        if remaining == 0:
            return True
        # DSATUR: most saturated, then highest degree, then lowest index
        best_v, best_key = -1, None
        for v in range(n):
            if color[v] == -1:
                sat = bin(forbid[v] & kmask).count("1")
                key = (-sat, -degree[v], v)
                if best_key is None or key < best_key:
                    best_v, best_key = v, key
        v = best_v
        cap = min(k - 1, max_used + 1)
        allowed = ~forbid[v] & ((1 << (cap + 1)) - 1)
        for c in _bits(allowed):
            bud.spend("coloring")
            assign(v, c)
            if search(remaining - 1, max(max_used, c)):
                return True
            unassign(v, c)
        return False

    if search(uncolored, len(pinned) - 1):
        return {v: color[v] for v in range(n)}
    return None


def greedy_coloring(g: UGraph) -> Coloring:
    """DSATUR greedy; proper but not necessarily optimal."""
    n = g.num_vertices
    adj = g.adjacency()
    color: dict[int, int] = {}
    forbid = [set() for _ in range(n)]
    degree = [len(adj[v]) for v in range(n)]
    for _ in range(n):
        v = min(
            (u for u in range(n) if u not in color),
            key=lambda u: (-len(forbid[u]), -degree[u], u),
        )
        c = 0
        while c in forbid[v]:
            c += 1
        color[v] = c
        for u in adj[v]:
            forbid[u].add(c)
    return color


@dataclass
class ChiResult:
    lo: int
    hi: int
    coloring: Coloring  # proper coloring with hi colors
    clique: tuple[int, ...]
    nodes_used: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def chi(self) -> int:
        if not self.exact:
            raise ValueError(f"chromatic number not resolved: bracket [{self.lo},{self.hi}]")
        return self.hi


def chromatic_number(target, budget: int = DEFAULT_BUDGET) -> ChiResult:
    """Exact chromatic number of a UGraph or Hypergraph.

    On budget exhaustion returns the best-known bracket (lo < hi) instead
    of raising; the witness coloring always uses hi colors.
    """
    if isinstance(target, Hypergraph):
        return chromatic_number(target.co_occurrence(), budget)
    g: UGraph = target
    n = g.num_vertices
    if n == 0:
        return ChiResult(0, 0, {}, (), 0)
    if not g.edges:
        return ChiResult(1, 1, {v: 0 for v in range(n)}, (0,), 0)
    bud = _Budget(budget)
    clique, clique_complete = max_clique(g, budget=max(budget // 10, 1000))
    lo = len(clique) if clique_complete else max(len(clique), 2)
    witness = greedy_coloring(g)
    hi = max(witness.values()) + 1
    if lo >= hi:
        return ChiResult(hi, hi, witness, clique, bud.used)
    adj_list = [sorted(s) for s in g.adjacency()]
    k = lo
    while k < hi:
        try:
            found = _k_colorable(adj_list, k, clique, bud)
        except BudgetExhausted:
            return ChiResult(k, hi, witness, clique, bud.used)
        if found is not None:
            return ChiResult(k, k, found, clique, bud.used)
        k += 1
    return ChiResult(hi, hi, witness, clique, bud.used)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

def find_homomorphism(g1: UGraph, g2: UGraph, budget: int = DEFAULT_BUDGET) -> dict[int, int] | None:
    """A graph homomorphism g1 -> g2, or None after a complete search.

    Complete-graph targets delegate to the k-coloring search (a map into
    K_k is exactly a proper k-coloring); identical graphs short-circuit to
    the identity.  Raises BudgetExhausted when undecided.
    """
    if g1.num_vertices == 0:
        return {}
    if not g1.edges:
        if g2.num_vertices == 0:
            return None
        return {v: 0 for v in range(g1.num_vertices)}
    if g1.num_vertices == g2.num_vertices and set(g1.edges) == set(g2.edges):
        return {v: v for v in range(g1.num_vertices)}
    if g2.is_complete():
        bud = _Budget(budget)
        clique, complete = max_clique(g1, budget=max(budget // 10, 1000))
        if not complete:
            clique = clique[:1]
        coloring = _k_colorable([sorted(s) for s in g1.adjacency()], g2.num_vertices, clique, bud)
        return dict(coloring) if coloring is not None else None

    # adjacent vertices get distinct adjacent images, so a clique maps
    # injectively onto a clique; compare maximum cliques when both resolve
    clique, complete1 = max_clique(g1, budget=max(budget // 10, 1000))
    if complete1:
        clique2, complete2 = max_clique(g2, budget=max(budget // 10, 1000))
        if complete2 and len(clique) > len(clique2):
            return None

    n1, n2 = g1.num_vertices, g2.num_vertices
    adj1 = g1.adjacency()
    adj2_mask = [0] * n2
    for a, b in g2.edges:
        adj2_mask[a] |= 1 << b
        adj2_mask[b] |= 1 << a
    full2 = (1 << n2) - 1

    # order: seed with the clique, then most-placed-neighbors first
    order = list(clique)
    placed = set(order)
    while len(order) < n1:
        v = max(
            (u for u in range(n1) if u not in placed),
            key=lambda u: (len(adj1[u] & placed), len(adj1[u]), -u),
        )
        order.append(v)
        placed.add(v)
    pos_of = {v: i for i, v in enumerate(order)}
    mapped_neighbors = [[u for u in adj1[v] if pos_of[u] < pos_of[v]] for v in order]

    bud = _Budget(budget)
    phi: dict[int, int] = {}

    def search(i: int) -> bool:
        if i == n1:
            return True
        v = order[i]
        cand = full2
        for u in mapped_neighbors[i]:
            cand &= adj2_mask[phi[u]]
            if not cand:
                return False
        for w in _bits(cand):
            bud.spend("homomorphism")
            phi[v] = w
            if search(i + 1):
                return True
            del phi[v]
        return False

    if search(0):
        return dict(phi)
    return None


# ---------------------------------------------------------------------------
# canonical coloring of qK_{n:m}
# ---------------------------------------------------------------------------

def canonical_coloring(q: int, n: int, m: int, *, limit: int = ENUMERATION_LIMIT) -> Coloring:
    """Proper coloring of qK_{n:m} through a fixed (n-m+1)-subspace.

    Every m-subspace meets S = <e_1,...,e_{n-m+1}> nontrivially; the color
    is the canonically least 1-subspace of the intersection.  Uses at most
    (q^{n-m+1}-1)/(q-1) colors.
    """
    if n < 2 * m:
        raise ValueError(f"construction needs n >= 2m, got n={n}, m={m}")
    fld = field_of_order(q)
    verts = enumerate_subspaces(fld, n, m, limit=limit)
    s_dim = n - m + 1
    s_rows = []
    for i in range(s_dim):
        row = [0] * n
        row[i] = 1
        s_rows.append(row)
    s_space = subspace_from_rows(fld, s_rows, n)

    def least_line(space: Subspace) -> tuple:
        best = None
        for vec in space.vectors():
            if not any(vec):
                continue
            line = subspace_from_rows(fld, [vec], n)
            if best is None or line.sort_key < best:
                best = line.sort_key
        assert best is not None
        return best

    line_of_vertex = []
    for v in verts:
        inter = intersection(v, s_space)
        assert inter.dim >= 1
        line_of_vertex.append(least_line(inter))
    palette = {key: i for i, key in enumerate(sorted(set(line_of_vertex)))}
    return {i: palette[key] for i, key in enumerate(line_of_vertex)}
