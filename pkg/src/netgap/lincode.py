"""Linear network codes as per-edge global coding matrices.

A (q,t)-code stores one t x ht matrix per edge.  Verification checks local
consistency (each outgoing row space inside the stacked incoming one) and
full rank ht at every terminal.  The solution search works over row spaces
directly: a code exists iff edge spaces of dimension <= t can be chosen
with containment at every node and full sum at every terminal, so the
search assigns canonical subspaces edge by edge with pruning, quotienting
out global basis changes by pinning the first source edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExhausted
from .gf import FieldSpec, Matrix, field_of_order, make_field, rank, rowspace_contains, solve_left, stack
from .networks import Network, combination_parameters, min_cut, parallelize
from .subspaces import Subspace, enumerate_subspaces, subspace_from_rows, subspace_sum, subspaces_up_to_dim

DEFAULT_SEARCH_BUDGET = 10**8


@dataclass(frozen=True)
class NetworkCode:
    field: FieldSpec
    t: int
    h: int
    assignment: dict  # edge id -> Matrix, shape t x (h*t)

    def matrix(self, edge_id: str) -> Matrix:
        return self.assignment[edge_id]


@dataclass
class Verdict:
    ok: bool
    terminal_ranks: dict
    failure: str | None = None
    failure_kind: str | None = None  # "local" | "terminal"


def _stacked_incoming(net: Network, code: NetworkCode, node: str) -> Matrix:
    mats = [code.assignment[e.id] for e in net.in_edges(node)]
    if not mats:
        raise ValueError(f"node {node} has no incoming edges")
    return stack(*mats)


def verify_solution(net: Network, code: NetworkCode) -> Verdict:
    nt = net.h * code.t
    for e in net.edges:
        if e.id not in code.assignment:
            raise ValueError(f"missing assignment for edge {e.id}")
        mat = code.assignment[e.id]
        if mat.rows != code.t or mat.cols != nt or mat.field != code.field:
            raise ValueError(f"edge {e.id}: matrix must be {code.t}x{nt} over the code's field")
    if code.h != net.h:
        raise ValueError(f"code declares h={code.h}, network has h={net.h}")

    for node in net.nodes:
        if node == net.source:
            continue
        outs = net.out_edges(node)
        if not outs:
            continue
        incoming = _stacked_incoming(net, code, node)
        for e in outs:
            if not rowspace_contains(incoming, code.assignment[e.id]):
                return Verdict(
                    ok=False,
                    terminal_ranks={},
                    failure=f"edge {e.id} leaving node {node} is not computable from its inputs",
                    failure_kind="local",
                )
    ranks = {}
    failure = None
    for term in net.terminals:
        r = rank(_stacked_incoming(net, code, term))
        ranks[term] = r
        if r != nt and failure is None:
            failure = f"terminal {term} has rank {r} < {nt}"
    if failure:
        return Verdict(ok=False, terminal_ranks=ranks, failure=failure, failure_kind="terminal")
    return Verdict(ok=True, terminal_ranks=ranks)


def node_space_dim(net: Network, code: NetworkCode, node: str) -> int:
    """Dimension of the message space a node has access to."""
    if node == net.source:
        raise ValueError("the source holds all messages; its space is not edge-derived")
    return rank(_stacked_incoming(net, code, node))


def solution_from_classical_code(net: Network, generator: Matrix) -> NetworkCode:
    """Scalar code for a combination network from an h x r generator matrix.

    Column i is the global coding vector of the i-th source edge; middle
    nodes forward.
    """
    params = combination_parameters(net)
    if params is None:
        raise ValueError("network is not a full combination network")
    h, r, _s = params
    if generator.rows != h or generator.cols != r:
        raise ValueError(f"generator must be {h}x{r}, got {generator.rows}x{generator.cols}")
    fld = generator.field
    assignment = {}
    src_edges = net.out_edges(net.source)
    middle_vec = {}
    for i, e in enumerate(src_edges):
        vec = tuple(generator.entry(k, i) for k in range(h))
        assignment[e.id] = Matrix.from_rows(fld, [vec])
        middle_vec[e.head] = assignment[e.id]
    for e in net.edges:
        if e.tail in middle_vec:
            assignment[e.id] = middle_vec[e.tail]
    return NetworkCode(field=fld, t=1, h=h, assignment=assignment)


# ---------------------------------------------------------------------------
# exhaustive solution search
# ---------------------------------------------------------------------------

def _completion_dfs_order(net: Network) -> list:
    """Edge order for the search: a linear extension that completes merge
    nodes and terminals as early as possible, so rank checks prune early."""
    remaining_in = {v: net.in_degree(v) for v in net.nodes}
    scheduled = []
    seen = set()

    def visit(node: str) -> None:
        for e in net.out_edges(node):
            if e.id in seen:
                continue
            seen.add(e.id)
            scheduled.append(e)
            remaining_in[e.head] -= 1
            if remaining_in[e.head] == 0:
                visit(e.head)

    visit(net.source)
    assert len(scheduled) == len(net.edges), "network has unreachable edges"
    return scheduled


def _prefix_subspaces(fld: FieldSpec, ambient: int, t: int) -> list[Subspace]:
    """<e_1..e_d> for d = t down to 0: canonical representatives per dimension."""
    out = []
    for d in range(t, -1, -1):
        rows = []
        for i in range(d):
            row = [0] * ambient
            row[i] = 1
            rows.append(row)
        out.append(subspace_from_rows(fld, rows, ambient))
    return out


def search_solution(
    net: Network,
    q: int,
    t: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> NetworkCode | None:
    """Smallest-footprint complete search for a (q,t)-linear solution.

    Returns a verified code, or None when the exhaustive (symmetry-reduced)
    search proves none exists.  Raises BudgetExhausted when undecided:
    running out of budget is never reported as nonexistence.
    """
    fld = field_of_order(q)
    nt = net.h * t
    for term in net.terminals:
        if min_cut(net, term) < net.h:
            return None  # cut bound: rank at the terminal cannot reach ht

    order = _completion_dfs_order(net)
    terminal_set = set(net.terminals)
    in_edges_of = {v: [e.id for e in net.in_edges(v)] for v in net.nodes}
    global_candidates = subspaces_up_to_dim(fld, nt, t)
    first_candidates = _prefix_subspaces(fld, nt, t)

    # candidates inside a node's accumulated space, cached per space
    sub_cache: dict = {}

    def candidates_within(space: Subspace) -> list[Subspace]:
        key = space.sort_key
        cached = sub_cache.get(key)
        if cached is not None:
            return cached
        out = []
        d = space.dim
        for dim in range(min(t, d), -1, -1):
            for abstract in enumerate_subspaces(fld, d, dim):
                if dim == 0:
                    out.append(subspace_from_rows(fld, [], nt))
                else:
                    rows = abstract.basis.mul(space.basis).row_list()
                    out.append(subspace_from_rows(fld, rows, nt))
        sub_cache[key] = out
        return out

    assignment: dict = {}
    node_space: dict = {}
    budget_left = [budget]

    def terminal_ok(term: str) -> bool:
        assigned = [assignment[eid] for eid in in_edges_of[term] if eid in assignment]
        unassigned = len(in_edges_of[term]) - len(assigned)
        dim = subspace_sum(assigned).dim if assigned else 0
        if dim + t * unassigned < nt:
            return False
        if unassigned == 0 and dim != nt:
            return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        if e.tail == net.source:
            cands = first_candidates if i == 0 else global_candidates
        else:
            cands = candidates_within(node_space[e.tail])
        for w in cands:
            if budget_left[0] <= 0:
                raise BudgetExhausted("solution search budget exhausted")
            budget_left[0] -= 1
            assignment[e.id] = w
            ok = terminal_ok(e.head) if e.head in terminal_set else True
            if ok:
                completed = all(eid in assignment for eid in in_edges_of[e.head])
                if completed:
                    node_space[e.head] = subspace_sum(
                        [assignment[eid] for eid in in_edges_of[e.head]]
                    )
                if rec(i + 1):
                    return True
                if completed:
                    del node_space[e.head]
            del assignment[e.id]
        return False

    if not rec(0):
        return None

    mats = {}
    for e in net.edges:
        sub = assignment[e.id]
        rows = sub.basis.row_list() + [(0,) * nt] * (t - sub.dim)
        mats[e.id] = Matrix.from_rows(fld, rows)
    code = NetworkCode(field=fld, t=t, h=net.h, assignment=mats)
    verdict = verify_solution(net, code)
    assert verdict.ok, "internal error: search produced a rejected code"
    return code


# ---------------------------------------------------------------------------
# solution transformations
# ---------------------------------------------------------------------------

def split_to_scalar(net: Network, code: NetworkCode) -> tuple[Network, NetworkCode]:
    """Row-split a (q,t)-solution into a (q,1)-solution of the t-parallelized
    network with h*t messages."""
    t = code.t
    par = parallelize(net, t)
    assignment = {}
    for e in net.edges:
        mat = code.assignment[e.id]
        for j in range(1, t + 1):
            assignment[f"{e.id}.{j}"] = Matrix.from_rows(code.field, [mat.row(j - 1)])
    scalar = NetworkCode(field=code.field, t=1, h=net.h * t, assignment=assignment)
    return par, scalar


def _extension_edges(base: Network, ext: Network):
    to_source = [e for e in ext.edges if e.tail == ext.source and e.head == base.source]
    direct = {
        term: [e for e in ext.edges if e.tail == ext.source and e.head == term]
        for term in ext.terminals
    }
    if len(to_source) != base.h:
        raise ValueError("extended network does not match the message-extension construction")
    return to_source, direct


def extend_solution(base: Network, ext: Network, code: NetworkCode) -> NetworkCode:
    """Carry a (q,t)-solution of the base network to its message extension:
    old edges keep their matrices (zero-padded), the new source sends the
    original messages to the old source and the extra ones to terminals."""
    fld, t = code.field, code.t
    h, h_new = base.h, ext.h
    to_source, direct = _extension_edges(base, ext)
    width_new = h_new * t
    assignment = {}
    for e in base.edges:
        mat = code.assignment[e.id]
        rows = [tuple(row) + (0,) * (width_new - mat.cols) for row in mat.row_list()]
        assignment[e.id] = Matrix.from_rows(fld, rows)

    def block_matrix(block: int) -> Matrix:
        rows = []
        for i in range(t):
            row = [0] * width_new
            row[block * t + i] = 1
            rows.append(row)
        return Matrix.from_rows(fld, rows)

    for i, e in enumerate(to_source):
        assignment[e.id] = block_matrix(i)
    for term in ext.terminals:
        for j, e in enumerate(direct[term]):
            assignment[e.id] = block_matrix(h + j)
    return NetworkCode(field=fld, t=t, h=h_new, assignment=assignment)


def restrict_solution(base: Network, ext: Network, code: NetworkCode) -> NetworkCode:
    """Recover a base-network solution from one on its message extension by
    rewriting every original edge in coordinates of the space entering the
    old source."""
    fld, t = code.field, code.t
    to_source, _ = _extension_edges(base, ext)
    basis = stack(*[code.assignment[e.id] for e in to_source])
    if rank(basis) != base.h * t:
        raise ValueError("old source does not receive the full message space")
    assignment = {}
    for e in base.edges:
        coords = solve_left(basis, code.assignment[e.id])
        if coords is None:
            raise ValueError(f"edge {e.id} carries data outside the old source's space")
        assignment[e.id] = coords
    restricted = NetworkCode(field=fld, t=t, h=base.h, assignment=assignment)
    verdict = verify_solution(base, restricted)
    if not verdict.ok:
        raise ValueError(f"restriction is not a valid base solution: {verdict.failure}")
    return restricted


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def code_to_json(code: NetworkCode) -> dict:
    return {
        "q": code.field.q,
        "p": code.field.p,
        "m": code.field.m,
        "t": code.t,
        "h": code.h,
        "edges": {eid: [list(row) for row in mat.row_list()] for eid, mat in code.assignment.items()},
    }


def code_from_json(obj: dict) -> NetworkCode:
    fld = make_field(obj["p"], obj["m"])
    if fld.q != obj["q"]:
        raise ValueError("inconsistent field parameters")
    t, h = obj["t"], obj["h"]
    assignment = {}
    for eid, rows in obj["edges"].items():
        assignment[eid] = Matrix.from_rows(fld, rows)
        if assignment[eid].rows != t or assignment[eid].cols != h * t:
            raise ValueError(f"edge {eid}: expected {t}x{h * t} matrix")
    return NetworkCode(field=fld, t=t, h=h, assignment=assignment)
