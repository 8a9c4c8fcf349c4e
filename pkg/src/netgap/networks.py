"""Directed-acyclic multicast networks: builders, cuts, minimality, file I/O.

Networks are multigraphs: parallel edges are first-class citizens with
their own ids, which both the message-extension construction and
m-parallelization rely on.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field as dc_field

from .errors import SizeLimitExceeded, UnsolvableNetwork
from .gf import FieldSpec, make_field
from .subspaces import Subspace, enumerate_subspaces, sum_dim

MAX_TERMINAL_SCAN = 10**6


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Network:
    h: int
    source: str
    terminals: tuple[str, ...]
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    labels: dict | None = dc_field(default=None, compare=False)

    def in_edges(self, node: str) -> list[Edge]:
        return [e for e in self.edges if e.head == node]

    def out_edges(self, node: str) -> list[Edge]:
        return [e for e in self.edges if e.tail == node]

    def in_degree(self, node: str) -> int:
        return sum(1 for e in self.edges if e.head == node)

    def edge_by_id(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def without_edge(self, eid: str) -> "Network":
        return Network(
            h=self.h,
            source=self.source,
            terminals=self.terminals,
            nodes=self.nodes,
            edges=tuple(e for e in self.edges if e.id != eid),
            labels=self.labels,
        )


def _adjacency(net: Network) -> tuple[dict, dict]:
    outs: dict[str, list[Edge]] = {v: [] for v in net.nodes}
    ins: dict[str, list[Edge]] = {v: [] for v in net.nodes}
    for e in net.edges:
        outs[e.tail].append(e)
        ins[e.head].append(e)
    return outs, ins


def topological_order(net: Network) -> list[str]:
    """Kahn's algorithm; raises on cycles. Deterministic by node order."""
    outs, ins = _adjacency(net)
    indeg = {v: len(ins[v]) for v in net.nodes}
    order = []
    ready = deque(v for v in net.nodes if indeg[v] == 0)
    while ready:
        v = ready.popleft()
        order.append(v)
        for e in outs[v]:
            indeg[e.head] -= 1
            if indeg[e.head] == 0:
                ready.append(e.head)
    if len(order) != len(net.nodes):
        raise ValueError("network graph contains a cycle")
    return order


def essential_nodes(net: Network) -> set[str]:
    """Nodes on some source-to-terminal path."""
    outs, ins = _adjacency(net)
    fwd = {net.source}
    frontier = deque([net.source])
    while frontier:
        v = frontier.popleft()
        for e in outs[v]:
            if e.head not in fwd:
                fwd.add(e.head)
                frontier.append(e.head)
    back = set(net.terminals)
    frontier = deque(net.terminals)
    while frontier:
        v = frontier.popleft()
        for e in ins[v]:
            if e.tail not in back:
                back.add(e.tail)
                frontier.append(e.tail)
    return fwd & back


def validate_network(net: Network) -> None:
    if net.h < 1:
        raise ValueError("message count h must be >= 1")
    if not net.terminals:
        raise ValueError("network needs at least one terminal")
    node_set = set(net.nodes)
    if len(node_set) != len(net.nodes):
        raise ValueError("duplicate node ids")
    if net.source not in node_set:
        raise ValueError("source not among nodes")
    ids = [e.id for e in net.edges]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate edge ids")
    for e in net.edges:
        if e.tail not in node_set or e.head not in node_set:
            raise ValueError(f"edge {e.id} references unknown node")
    for t in net.terminals:
        if t not in node_set:
            raise ValueError(f"terminal {t} not among nodes")
    topological_order(net)
    if net.in_degree(net.source) != 0:
        raise ValueError("source must have in-degree 0")
    if essential_nodes(net) != node_set:
        raise ValueError("network contains non-essential nodes")


def prune(net: Network) -> Network:
    """Drop non-essential nodes (for imported networks)."""
    keep = essential_nodes(net)
    return Network(
        h=net.h,
        source=net.source,
        terminals=net.terminals,
        nodes=tuple(v for v in net.nodes if v in keep),
        edges=tuple(e for e in net.edges if e.tail in keep and e.head in keep),
        labels=net.labels,
    )


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _edge_ids(count: int) -> list[str]:
    width = len(str(max(count - 1, 0)))
    return [f"e{i:0{width}d}" for i in range(count)]


def build_combination(h: int, r: int, s: int, *, max_terminals: int = MAX_TERMINAL_SCAN) -> Network:
    """The N_{h,r,s} combination network."""
    if s < 1 or r < s:
        raise ValueError(f"require r >= s >= 1, got r={r}, s={s}")
    if h < 1:
        raise ValueError("h must be >= 1")
    n_terminals = 1
    for i in range(s):
        n_terminals = n_terminals * (r - i) // (i + 1)
    if n_terminals > max_terminals:
        raise SizeLimitExceeded(f"{n_terminals} terminals exceed limit {max_terminals}")
    middles = [f"m{i}" for i in range(r)]
    terminals = []
    pairs = []  # (terminal, middle) in construction order
    for subset in itertools.combinations(range(r), s):
        t = "t" + "_".join(str(i) for i in subset)
        terminals.append(t)
        pairs.extend((t, middles[i]) for i in subset)
    ids = _edge_ids(r + len(pairs))
    edges = [Edge(ids[i], "s", middles[i]) for i in range(r)]
    edges.extend(Edge(ids[r + k], m, t) for k, (t, m) in enumerate(pairs))
    net = Network(
        h=h,
        source="s",
        terminals=tuple(terminals),
        nodes=("s", *middles, *terminals),
        edges=tuple(edges),
    )
    validate_network(net)
    return net


def build_butterfly() -> Network:
    """The butterfly network with the standard node/edge labelling."""
    edges = [
        Edge("e1", "s", "v1"),
        Edge("e2", "s", "v2"),
        Edge("e3", "v1", "v3"),
        Edge("e4", "v2", "v3"),
        Edge("e5", "v1", "t1"),
        Edge("e6", "v3", "v4"),
        Edge("e7", "v2", "t2"),
        Edge("e8", "v4", "t1"),
        Edge("e9", "v4", "t2"),
    ]
    net = Network(
        h=2,
        source="s",
        terminals=("t1", "t2"),
        nodes=("s", "v1", "v2", "v3", "v4", "t1", "t2"),
        edges=tuple(edges),
    )
    validate_network(net)
    return net


@dataclass(frozen=True)
class ImplicitKneser:
    """Kneser network with the terminal rule kept as a predicate.

    Used when listing all spanning h-subsets of the middle layer is
    infeasible; middle nodes are still materialized.
    """

    field: FieldSpec
    q: int
    t: int
    h: int
    middles: tuple[Subspace, ...]

    @property
    def ambient(self) -> int:
        return self.h * self.t

    def is_terminal(self, indices) -> bool:
        indices = tuple(sorted(set(indices)))
        if len(indices) != self.h:
            return False
        return sum_dim([self.middles[i] for i in indices]) == self.ambient

    def stream_terminals(self, max_count: int):
        """Yield spanning h-subsets in lexicographic order, up to max_count."""
        count = 0
        for subset in itertools.combinations(range(len(self.middles)), self.h):
            if count >= max_count:
                return
            if sum_dim([self.middles[i] for i in subset]) == self.ambient:
                count += 1
                yield subset


def build_kneser(
    q: int,
    t: int,
    h: int,
    mode: str = "materialized",
    *,
    max_terminal_scan: int = MAX_TERMINAL_SCAN,
):
    """The Kneser network K_{q,t;h}.

    Middle nodes carry all t-subspaces of F_q^{ht} in canonical order; a
    terminal exists for each h-subset whose labels sum to the full space.
    """
    if h < 2:
        raise ValueError("Kneser networks need h >= 2")
    from .gf import field_of_order

    fld = field_of_order(q)
    n = h * t
    middles = enumerate_subspaces(fld, n, t)
    r = len(middles)
    if mode == "implicit":
        return ImplicitKneser(field=fld, q=q, t=t, h=h, middles=tuple(middles))
    if mode != "materialized":
        raise ValueError(f"unknown mode {mode!r}")
    n_subsets = 1
    for i in range(h):
        n_subsets = n_subsets * (r - i) // (i + 1)
    if n_subsets > max_terminal_scan:
        raise SizeLimitExceeded(
            f"scanning {n_subsets} candidate terminals of K_{{{q},{t};{h}}} exceeds "
            f"limit {max_terminal_scan}; use implicit mode"
        )
    middle_ids = [f"m{i}" for i in range(r)]
    terminals = []
    pairs = []
    for subset in itertools.combinations(range(r), h):
        if sum_dim([middles[i] for i in subset]) == n:
            tname = "t" + "_".join(str(i) for i in subset)
            terminals.append(tname)
            pairs.extend((tname, middle_ids[i]) for i in subset)
    ids = _edge_ids(r + len(pairs))
    edges = [Edge(ids[i], "s", middle_ids[i]) for i in range(r)]
    edges.extend(Edge(ids[r + k], m, tname) for k, (tname, m) in enumerate(pairs))
    net = Network(
        h=h,
        source="s",
        terminals=tuple(terminals),
        nodes=("s", *middle_ids, *terminals),
        edges=tuple(edges),
        labels={mid: sub for mid, sub in zip(middle_ids, middles)},
    )
    validate_network(net)
    return net


def _fresh_prefix(net: Network) -> str:
    taken = set(net.nodes) | {e.id for e in net.edges}
    prefix = "x"
    while any(name.startswith(prefix) for name in taken):
        prefix += "x"
    return prefix


def extend_messages(net: Network, h_new: int) -> Network:
    """Message extension: new source, h parallel edges to the old source,
    and h_new - h parallel edges to every terminal."""
    if h_new <= net.h:
        raise ValueError(f"h'={h_new} must exceed h={net.h}")
    prefix = _fresh_prefix(net)
    new_source = prefix + "src"
    edges = [Edge(f"{prefix}s{i}", new_source, net.source) for i in range(net.h)]
    edges.extend(net.edges)
    for term in net.terminals:
        edges.extend(
            Edge(f"{prefix}t_{term}_{j}", new_source, term) for j in range(h_new - net.h)
        )
    out = Network(
        h=h_new,
        source=new_source,
        terminals=net.terminals,
        nodes=(new_source, *net.nodes),
        edges=tuple(edges),
        labels=net.labels,
    )
    validate_network(out)
    return out


def parallelize(net: Network, m: int) -> Network:
    """Duplicate every edge m times and scale the message count by m."""
    if m < 1:
        raise ValueError("parallelization factor must be >= 1")
    edges = tuple(
        Edge(f"{e.id}.{j}", e.tail, e.head) for e in net.edges for j in range(1, m + 1)
    )
    out = Network(
        h=net.h * m,
        source=net.source,
        terminals=net.terminals,
        nodes=net.nodes,
        edges=edges,
        labels=net.labels,
    )
    validate_network(out)
    return out


def combination_parameters(net: Network) -> tuple[int, int, int] | None:
    """(h, r, s) if the network is a full combination network, else None."""
    src_out = net.out_edges(net.source)
    middles = [e.head for e in src_out]
    if len(set(middles)) != len(middles):
        return None
    middle_set = set(middles)
    if net.source in middle_set or middle_set & set(net.terminals):
        return None
    if set(net.nodes) != {net.source} | middle_set | set(net.terminals):
        return None
    r = len(middles)
    s = None
    seen_subsets = set()
    for term in net.terminals:
        ins = net.in_edges(term)
        feeders = [e.tail for e in ins]
        if net.out_edges(term):
            return None
        if len(set(feeders)) != len(feeders) or not set(feeders) <= middle_set:
            return None
        if s is None:
            s = len(feeders)
        elif len(feeders) != s:
            return None
        seen_subsets.add(frozenset(feeders))
    if s is None:
        return None
    for mid in middles:
        if net.in_degree(mid) != 1:
            return None
    expected = 1
    for i in range(s):
        expected = expected * (r - i) // (i + 1)
    if len(seen_subsets) != len(net.terminals) or len(net.terminals) != expected:
        return None
    return (net.h, r, s)


def is_subcombination(net: Network) -> bool:
    """Sub-network of a combination network with every terminal of in-degree h.

    Shape: one source edge per middle node, middle nodes feed only
    terminals, each terminal draws exactly h edges from h distinct middle
    nodes.  Such networks are always minimal: dropping a terminal edge
    starves that terminal, dropping a source edge starves any terminal the
    middle node feeds (and it feeds one, since all nodes are essential).
    """
    outs, ins = _adjacency(net)
    middles = [e.head for e in outs[net.source]]
    if len(set(middles)) != len(middles):
        return False
    middle_set = set(middles)
    term_set = set(net.terminals)
    if net.source in term_set or middle_set & term_set:
        return False
    if set(net.nodes) != {net.source} | middle_set | term_set:
        return False
    for mid in middles:
        if len(ins[mid]) != 1:
            return False
        if any(e.head not in term_set for e in outs[mid]):
            return False
    for term in net.terminals:
        feeders = [e.tail for e in ins[term]]
        if len(feeders) != net.h or len(set(feeders)) != net.h:
            return False
        if not set(feeders) <= middle_set or outs[term]:
            return False
    return True


# ---------------------------------------------------------------------------
# cuts and minimality
# ---------------------------------------------------------------------------

class _FlowSolver:
    """Unit-capacity max flow with BFS augmenting paths; the arc structure
    is built once and capacities reset between terminals."""

    def __init__(self, net: Network):
        self.node_index = {v: i for i, v in enumerate(net.nodes)}
        self.n = len(net.nodes)
        self.to: list[int] = []
        self.adj: list[list[int]] = [[] for _ in net.nodes]
        for e in net.edges:
            u, v = self.node_index[e.tail], self.node_index[e.head]
            self.adj[u].append(len(self.to))
            self.to.append(v)
            self.adj[v].append(len(self.to))
            self.to.append(u)
        self.src = self.node_index[net.source]

    def max_flow_to(self, terminal_index: int, cutoff: int | None = None) -> int:
        cap = bytearray(b"\x01\x00" * (len(self.to) // 2))
        to, adj = self.to, self.adj
        dst = terminal_index
        flow = 0
        while cutoff is None or flow < cutoff:
            parent_arc = [-1] * self.n
            parent_arc[self.src] = -2
            queue = deque([self.src])
            while queue and parent_arc[dst] == -1:
                u = queue.popleft()
                for ai in adj[u]:
                    v = to[ai]
                    if cap[ai] and parent_arc[v] == -1:
                        parent_arc[v] = ai
                        queue.append(v)
            if parent_arc[dst] == -1:
                return flow
            v = dst
            while v != self.src:
                ai = parent_arc[v]
                cap[ai] -= 1
                cap[ai ^ 1] += 1
                v = to[ai ^ 1]
            flow += 1
        return flow


def min_cut(net: Network, terminal: str) -> int:
    """Minimum edge cut between the source and the terminal.

    Unit capacities, BFS augmenting paths.
    """
    if terminal not in net.terminals:
        raise ValueError(f"{terminal!r} is not a terminal")
    solver = _FlowSolver(net)
    return solver.max_flow_to(solver.node_index[terminal])


def is_solvable(net: Network) -> bool:
    """Cut criterion: every terminal separated by cuts of size >= h."""
    if is_subcombination(net):
        return True  # h disjoint source-middle-terminal paths per terminal
    solver = _FlowSolver(net)
    return all(
        solver.max_flow_to(solver.node_index[t], cutoff=net.h) >= net.h for t in net.terminals
    )


def is_minimal(net: Network) -> bool:
    """True iff removing any single edge breaks the cut criterion.

    Raises UnsolvableNetwork when the input itself fails the criterion,
    since minimality is undefined there.
    """
    if not is_solvable(net):
        raise UnsolvableNetwork("network fails the cut criterion; minimality undefined")
    for e in net.edges:
        reduced = net.without_edge(e.id)
        if all(min_cut(reduced, t) >= net.h for t in net.terminals):
            return False
    return True


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def network_to_json(net: Network) -> dict:
    obj = {
        "h": net.h,
        "source": net.source,
        "terminals": list(net.terminals),
        "nodes": [{"id": v} for v in net.nodes],
        "edges": [{"id": e.id, "from": e.tail, "to": e.head} for e in net.edges],
    }
    if net.labels:
        some = next(iter(net.labels.values()))
        obj["field"] = {"p": some.field.p, "m": some.field.m}
        obj["ambient"] = some.ambient
        obj["labels"] = {
            node: [list(row) for row in sub.basis.row_list()] for node, sub in net.labels.items()
        }
    return obj


def network_from_json(obj: dict, *, validate: bool = True) -> Network:
    """Parse the documented network schema.

    validate=False skips the well-formedness check so that imports with
    non-essential nodes can be repaired via prune() before validation.
    """
    labels = None
    if "labels" in obj:
        fld = make_field(obj["field"]["p"], obj["field"]["m"])
        ambient = obj["ambient"]
        from .subspaces import subspace_from_rows

        labels = {
            node: subspace_from_rows(fld, rows, ambient) for node, rows in obj["labels"].items()
        }
    net = Network(
        h=obj["h"],
        source=obj["source"],
        terminals=tuple(obj["terminals"]),
        nodes=tuple(n["id"] for n in obj["nodes"]),
        edges=tuple(Edge(e["id"], e["from"], e["to"]) for e in obj["edges"]),
        labels=labels,
    )
    if validate:
        validate_network(net)
    return net


def network_to_dot(net: Network) -> str:
    lines = ["digraph N {"]
    for v in net.nodes:
        if v == net.source:
            shape = "box"
        elif v in net.terminals:
            shape = "doublecircle"
        else:
            shape = "circle"
        lines.append(f'  "{v}" [shape={shape}];')
    for e in net.edges:
        lines.append(f'  "{e.tail}" -> "{e.head}" [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
