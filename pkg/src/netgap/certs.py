"""Self-contained certificates and their independent verification.

Certificates embed the full instance (graph, network, code, or
configuration) so `check` re-derives every claim from field and rank
primitives alone, without trusting the solvers that produced them.
"""

from __future__ import annotations

from .gf import Matrix, make_field, rank


def coloring_certificate(graph_json: dict, colors: dict, context: str = "") -> dict:
    return {
        "kind": "coloring",
        "context": context,
        "graph": graph_json,
        "colors": {str(k): v for k, v in colors.items()},
        "num_colors": len(set(colors.values())),
    }


def hypergraph_coloring_certificate(num_vertices: int, hyperedges, colors: dict, context: str = "") -> dict:
    return {
        "kind": "hypergraph-coloring",
        "context": context,
        "num_vertices": num_vertices,
        "hyperedges": [list(he) for he in hyperedges],
        "colors": {str(k): v for k, v in colors.items()},
        "num_colors": len(set(colors.values())),
    }


def homomorphism_certificate(g1_json: dict, g2_json: dict, mapping: dict, context: str = "") -> dict:
    return {
        "kind": "homomorphism",
        "context": context,
        "from": g1_json,
        "to": g2_json,
        "map": {str(k): str(v) for k, v in mapping.items()},
    }


def code_certificate(network_json: dict, code_json: dict, context: str = "") -> dict:
    return {"kind": "network-code", "context": context, "network": network_json, "code": code_json}


def ic_certificate(ic_json: dict, alpha: int, context: str = "") -> dict:
    return {"kind": "independent-configuration", "context": context, "alpha": alpha, "ic": ic_json}


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------

def _check_coloring(cert: dict) -> tuple[bool, str]:
    names = [str(v) for v in cert["graph"]["vertices"]]
    colors = cert["colors"]
    if set(colors) != set(names):
        return False, "coloring does not cover the vertex set exactly"
    for a, b in cert["graph"]["edges"]:
        if colors[str(a)] == colors[str(b)]:
            return False, f"edge ({a},{b}) is monochromatic"
    used = len(set(colors.values()))
    if used != cert["num_colors"]:
        return False, f"claims {cert['num_colors']} colors but uses {used}"
    return True, f"proper coloring with {used} colors"


def _check_hypergraph_coloring(cert: dict) -> tuple[bool, str]:
    colors = {int(k): v for k, v in cert["colors"].items()}
    if set(colors) != set(range(cert["num_vertices"])):
        return False, "coloring does not cover the vertex set exactly"
    for he in cert["hyperedges"]:
        cs = [colors[v] for v in he]
        if len(set(cs)) != len(cs):
            return False, f"hyperedge {he} repeats a color"
    used = len(set(colors.values()))
    if used != cert["num_colors"]:
        return False, f"claims {cert['num_colors']} colors but uses {used}"
    return True, f"proper hypergraph coloring with {used} colors"


def _check_homomorphism(cert: dict) -> tuple[bool, str]:
    mapping = cert["map"]
    g1, g2 = cert["from"], cert["to"]
    names1 = {str(v) for v in g1["vertices"]}
    names2 = {str(v) for v in g2["vertices"]}
    if set(mapping) != names1 or not set(mapping.values()) <= names2:
        return False, "map is not a total function into the target vertices"
    target_edges = set()
    for a, b in g2["edges"]:
        target_edges.add((str(a), str(b)))
        target_edges.add((str(b), str(a)))
    for a, b in g1["edges"]:
        fa, fb = mapping[str(a)], mapping[str(b)]
        if fa == fb or (fa, fb) not in target_edges:
            return False, f"edge ({a},{b}) maps to non-edge ({fa},{fb})"
    return True, "valid homomorphism"


def _check_network_code(cert: dict) -> tuple[bool, str]:
    net = cert["network"]
    code = cert["code"]
    fld = make_field(code["p"], code["m"])
    t, h = code["t"], code["h"]
    if h != net["h"]:
        return False, f"code h={h} mismatches network h={net['h']}"
    nt = h * t
    mats = {}
    for eid, rows in code["edges"].items():
        if len(rows) != t or any(len(r) != nt for r in rows):
            return False, f"edge {eid}: matrix is not {t}x{nt}"
        mats[eid] = Matrix.from_rows(fld, rows)
    in_edges: dict[str, list[str]] = {}
    out_edges: dict[str, list[str]] = {}
    for e in net["edges"]:
        if e["id"] not in mats:
            return False, f"edge {e['id']} has no assignment"
        in_edges.setdefault(e["to"], []).append(e["id"])
        out_edges.setdefault(e["from"], []).append(e["id"])
    source = net["source"]
    for node in (n["id"] for n in net["nodes"]):
        if node == source or node not in out_edges:
            continue
        incoming = in_edges.get(node, [])
        if not incoming:
            return False, f"non-source node {node} has outputs but no inputs"
        stacked = mats[incoming[0]]
        for eid in incoming[1:]:
            stacked = stacked.stack(mats[eid])
        base_rank = rank(stacked)
        for eid in out_edges[node]:
            if rank(stacked.stack(mats[eid])) != base_rank:
                return False, f"edge {eid} at node {node} is not computable from inputs"
    for term in net["terminals"]:
        stacked = None
        for eid in in_edges.get(term, []):
            stacked = mats[eid] if stacked is None else stacked.stack(mats[eid])
        r = rank(stacked) if stacked is not None else 0
        if r != nt:
            return False, f"terminal {term} has rank {r} < {nt}"
    return True, "accepted linear solution"


def _check_ic(cert: dict) -> tuple[bool, str]:
    import itertools

    obj = cert["ic"]
    fld = make_field(obj["p"], obj["m"])
    t, h, alpha = obj["t"], obj["h"], cert["alpha"]
    nt = h * t
    bases = []
    for rows in obj["members"]:
        mat = Matrix.from_rows(fld, rows)
        if mat.cols != nt or rank(mat) != t or mat.rows != t:
            return False, "member is not a t-dimensional subspace of F_q^{ht}"
        bases.append(mat)
    for subset in itertools.combinations(bases, alpha):
        stacked = subset[0]
        for mat in subset[1:]:
            stacked = stacked.stack(mat)
        if rank(stacked) != alpha * t:
            return False, "an alpha-subset fails the direct-sum condition"
    return True, f"valid ({t};{h},{alpha})_{fld.q} independent configuration of size {len(bases)}"


_CHECKERS = {
    "coloring": _check_coloring,
    "hypergraph-coloring": _check_hypergraph_coloring,
    "homomorphism": _check_homomorphism,
    "network-code": _check_network_code,
    "independent-configuration": _check_ic,
}


def check_certificate(cert: dict) -> tuple[bool, str]:
    kind = cert.get("kind")
    checker = _CHECKERS.get(kind)
    if checker is None:
        return False, f"unknown certificate kind {kind!r}"
    return checker(cert)
