"""Edge-class skeleton of a DAG network and its reverse construction.

Every edge leaving a node of in-degree != 1 starts a class; the class is
closed under traversal through in-degree-1 nodes.  Classes partition the
edge set, become skeleton vertices, and two classes are joined whenever
they contain edges entering a common node.  For minimal two-message
networks, linear solutions correspond to homomorphisms of this skeleton
into a q-Kneser graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import UGraph
from .networks import Edge, Network, validate_network


@dataclass(frozen=True)
class SkeletonGraph:
    graph: UGraph  # vertex names are class ids
    classes: dict  # class id -> frozenset of edge ids

    @property
    def class_ids(self) -> tuple[str, ...]:
        return self.graph.names


def skeleton(net: Network) -> SkeletonGraph:
    in_by_node: dict[str, list[Edge]] = {v: [] for v in net.nodes}
    out_by_node: dict[str, list[Edge]] = {v: [] for v in net.nodes}
    for e in net.edges:
        in_by_node[e.head].append(e)
        out_by_node[e.tail].append(e)
    indeg = {v: len(in_by_node[v]) for v in net.nodes}

    roots = [e for e in net.edges if indeg[e.tail] != 1]
    class_members: list[list[str]] = []
    edge_class: dict[str, int] = {}
    for idx, root in enumerate(roots):
        members = []
        frontier = [root]
        while frontier:
            e = frontier.pop()
            members.append(e.id)
            edge_class[e.id] = idx
            if indeg[e.head] == 1:
                frontier.extend(out_by_node[e.head])
        class_members.append(members)

    class_ids = [min(members) for members in class_members]
    edge_pairs = set()
    for v in net.nodes:
        incoming = [edge_class[e.id] for e in in_by_node[v]]
        for i in range(len(incoming)):
            for j in range(i + 1, len(incoming)):
                a, b = incoming[i], incoming[j]
                if a != b:
                    edge_pairs.add((min(a, b), max(a, b)))
    graph = UGraph.from_edges(len(roots), edge_pairs, names=tuple(class_ids))
    classes = {class_ids[i]: frozenset(class_members[i]) for i in range(len(roots))}
    return SkeletonGraph(graph=graph, classes=classes)


def reverse_skeleton(g: UGraph) -> Network:
    """A minimal two-message network whose skeleton is the given graph.

    Source feeding one middle node per vertex; one terminal per edge, fed
    by its two endpoint middle nodes.  The result is a sub-network of the
    full combination network on len(g) middle nodes.
    """
    names = g.names or tuple(str(v) for v in range(g.num_vertices))
    degrees = g.degree_sequence()
    isolated = [names[v] for v in range(g.num_vertices) if degrees[v] == 0]
    if isolated:
        raise ValueError(f"isolated vertices {isolated} would be non-essential middle nodes")
    middles = [f"v{name}" for name in names]
    terminals = [f"t{names[a]}_{names[b]}" for a, b in g.edges]
    n_edges = g.num_vertices + 2 * len(g.edges)
    width = len(str(n_edges - 1))
    ids = [f"e{i:0{width}d}" for i in range(n_edges)]
    edges = [Edge(ids[i], "s", middles[i]) for i in range(g.num_vertices)]
    k = g.num_vertices
    for (a, b), term in zip(g.edges, terminals):
        edges.append(Edge(ids[k], middles[a], term))
        edges.append(Edge(ids[k + 1], middles[b], term))
        k += 2
    net = Network(
        h=2,
        source="s",
        terminals=tuple(terminals),
        nodes=("s", *middles, *terminals),
        edges=tuple(edges),
    )
    validate_network(net)
    return net


def skeleton_roundtrip_check(g: UGraph) -> bool:
    """skeleton(reverse_skeleton(g)) matches g under the natural labels."""
    net = reverse_skeleton(g)
    skel = skeleton(net)
    names = g.names or tuple(str(v) for v in range(g.num_vertices))
    middle_of_vertex = {f"v{name}": i for i, name in enumerate(names)}

    # each class must contain exactly one source edge; its head names the vertex
    class_vertex: dict[int, int] = {}
    for idx, cid in enumerate(skel.class_ids):
        members = skel.classes[cid]
        src_edges = [net.edge_by_id(eid) for eid in members if net.edge_by_id(eid).tail == net.source]
        if len(src_edges) != 1:
            return False
        class_vertex[idx] = middle_of_vertex[src_edges[0].head]
    if sorted(class_vertex.values()) != list(range(g.num_vertices)):
        return False
    mapped = {
        (min(class_vertex[a], class_vertex[b]), max(class_vertex[a], class_vertex[b]))
        for a, b in skel.graph.edges
    }
    return mapped == set(g.edges)


def skeleton_to_dot(skel: SkeletonGraph) -> str:
    from .graphs import ugraph_to_dot

    return ugraph_to_dot(skel.graph)


def skeleton_to_json(skel: SkeletonGraph) -> dict:
    from .graphs import ugraph_to_json

    obj = ugraph_to_json(skel.graph)
    obj["classes"] = {cid: sorted(members) for cid, members in skel.classes.items()}
    return obj
