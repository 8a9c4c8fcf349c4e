"""Undirected graphs, uniform hypergraphs, colorings, and their file formats."""

from __future__ import annotations

from dataclasses import dataclass

from .subspaces import Subspace


@dataclass(frozen=True)
class UGraph:
    """Simple undirected graph on vertices 0..num_vertices-1.

    Vertices may carry subspace labels (q-Kneser graphs) or string names
    (skeleton graphs); both are optional and ignored by the solvers.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]  # sorted pairs a < b, deduplicated
    labels: tuple[Subspace, ...] | None = None
    names: tuple[str, ...] | None = None

    @classmethod
    def from_edges(cls, num_vertices, edge_iter, labels=None, names=None) -> "UGraph":
        seen = set()
        for a, b in edge_iter:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < num_vertices and 0 <= b < num_vertices):
                raise ValueError(f"edge ({a},{b}) out of range")
            seen.add((min(a, b), max(a, b)))
        return cls(num_vertices, tuple(sorted(seen)), labels, names)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.num_vertices)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree_sequence(self) -> list[int]:
        adj = self.adjacency()
        return [len(s) for s in adj]

    def is_complete(self) -> bool:
        n = self.num_vertices
        return len(self.edges) == n * (n - 1) // 2


def complete_graph(n: int) -> UGraph:
    return UGraph.from_edges(n, ((a, b) for a in range(n) for b in range(a + 1, n)))


@dataclass(frozen=True)
class Hypergraph:
    """h-uniform hypergraph; hyperedges are sorted index tuples."""

    num_vertices: int
    h: int
    hyperedges: tuple[tuple[int, ...], ...]
    labels: tuple[Subspace, ...] | None = None

    @classmethod
    def from_hyperedges(cls, num_vertices, h, hyperedge_iter, labels=None) -> "Hypergraph":
        seen = set()
        for he in hyperedge_iter:
            he = tuple(sorted(he))
            if len(set(he)) != len(he):
                raise ValueError(f"repeated vertex in hyperedge {he}")
            if len(he) != h:
                raise ValueError(f"hyperedge {he} is not {h}-uniform")
            seen.add(he)
        return cls(num_vertices, h, tuple(sorted(seen)), labels)

    def co_occurrence(self) -> UGraph:
        """Graph with an edge wherever two vertices share a hyperedge.

        Proper colorings of the hypergraph (no hyperedge with a repeated
        color) are exactly proper colorings of this graph.
        """
        import itertools

        def pairs():
            for he in self.hyperedges:
                yield from itertools.combinations(he, 2)

        return UGraph.from_edges(self.num_vertices, pairs(), labels=self.labels)


Coloring = dict[int, int]


def is_proper_coloring(graph: UGraph, coloring: Coloring) -> bool:
    if set(coloring) != set(range(graph.num_vertices)):
        return False
    return all(coloring[a] != coloring[b] for a, b in graph.edges)


def is_proper_hypergraph_coloring(hyper: Hypergraph, coloring: Coloring) -> bool:
    if set(coloring) != set(range(hyper.num_vertices)):
        return False
    for he in hyper.hyperedges:
        colors = [coloring[v] for v in he]
        if len(set(colors)) != len(colors):
            return False
    return True


def is_homomorphism(g1: UGraph, g2: UGraph, mapping: dict[int, int]) -> bool:
    if set(mapping) != set(range(g1.num_vertices)):
        return False
    edge_set = set(g2.edges)
    for a, b in g1.edges:
        fa, fb = mapping[a], mapping[b]
        if fa == fb or (min(fa, fb), max(fa, fb)) not in edge_set:
            return False
    return True


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def ugraph_to_json(g: UGraph) -> dict:
    names = g.names or [str(v) for v in range(g.num_vertices)]
    return {
        "vertices": list(names),
        "edges": [[names[a], names[b]] for a, b in g.edges],
    }


def ugraph_from_json(obj: dict) -> UGraph:
    names = [str(v) for v in obj["vertices"]]
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ValueError("duplicate vertex ids")
    edges = ((index[str(a)], index[str(b)]) for a, b in obj["edges"])
    return UGraph.from_edges(len(names), edges, names=tuple(names))


def ugraph_to_dimacs(g: UGraph) -> str:
    lines = [f"p edge {g.num_vertices} {len(g.edges)}"]
    lines.extend(f"e {a + 1} {b + 1}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def ugraph_to_dot(g: UGraph) -> str:
    names = g.names or [str(v) for v in range(g.num_vertices)]
    lines = ["graph G {"]
    for name in names:
        lines.append(f'  "{name}";')
    for a, b in g.edges:
        lines.append(f'  "{names[a]}" -- "{names[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
