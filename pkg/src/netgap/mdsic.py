"""Classical codes, the code-solvability bridge, and independent configurations.

A (t;h,alpha)_q independent configuration is a set of t-subspaces of
F_q^{ht} in which every alpha members are in direct sum.  Size-r
configurations with alpha = h are exactly the (q,t)-vector solutions of
the full minimal combination network on r middle nodes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SizeLimitExceeded
from .gf import FieldSpec, Matrix, field_of_order
from .lincode import NetworkCode, solution_from_classical_code, verify_solution
from .networks import Network, build_combination, combination_parameters
from .subspaces import (
    ENUMERATION_LIMIT,
    canonicalize,
    enumerate_subspaces,
    subspace_from_rows,
    sum_dim,
)

BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class LinearCode:
    field: FieldSpec
    length: int
    dim: int
    generator: Matrix  # dim x length, full row rank

    def codewords(self):
        f = self.field
        for msg in itertools.product(f.elements(), repeat=self.dim):
            word = [0] * self.length
            for i, c in enumerate(msg):
                if c:
                    row = self.generator.row(i)
                    word = [f.add(x, f.mul(c, y)) for x, y in zip(word, row)]
            yield tuple(word)


@dataclass(frozen=True)
class Codebook:
    field: FieldSpec
    length: int
    codewords: tuple
    declared_distance: int | None = None

    def __post_init__(self):
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("codebook contains repeated words")


def rs_code(q: int, r: int, h: int) -> LinearCode:
    """[r, h, r-h+1]_q Reed-Solomon generator, extended at r = q+1.

    Evaluation points in canonical field-element order 0, 1, ...; the
    point at infinity contributes the last column when r = q+1.
    """
    fld = field_of_order(q)
    if h < 1 or h > r:
        raise ValueError(f"require 1 <= h <= r, got h={h}, r={r}")
    if r > q + 1:
        raise ValueError(f"length {r} exceeds q+1 = {q + 1}")
    cols = []
    for j in range(min(r, q)):
        cols.append([fld.pow(j, i) for i in range(h)])
    if r == q + 1:
        inf = [0] * h
        inf[h - 1] = 1
        cols.append(inf)
    rows = [[cols[j][i] for j in range(r)] for i in range(h)]
    return LinearCode(field=fld, length=r, dim=h, generator=Matrix.from_rows(fld, rows))


def _hamming(a, b) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def min_distance(code, *, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Exact minimum distance by enumeration."""
    if isinstance(code, LinearCode):
        total = code.field.q**code.dim
        if total > limit:
            raise SizeLimitExceeded(f"{total} codewords exceed brute-force limit {limit}")
        best = None
        zero = (0,) * code.length
        for word in code.codewords():
            if word == zero:
                continue
            w = sum(1 for x in word if x)
            if best is None or w < best:
                best = w
        if best is None:
            raise ValueError("code has no nonzero codewords")
        return best
    pairs = len(code.codewords) * (len(code.codewords) - 1) // 2
    if pairs > limit:
        raise SizeLimitExceeded(f"{pairs} codeword pairs exceed brute-force limit {limit}")
    if len(code.codewords) < 2:
        raise ValueError("distance needs at least two codewords")
    return min(_hamming(a, b) for a, b in itertools.combinations(code.codewords, 2))


@dataclass
class SolvabilityResult:
    solvable: bool
    distance: int
    required_distance: int
    network_code: NetworkCode | None = None  # emitted for linear codes
    forwarding: dict | None = None  # description for nonlinear codebooks

    def __bool__(self) -> bool:
        return self.solvable


def solvability_by_code(h: int, r: int, s: int, code) -> SolvabilityResult:
    """Does the code solve the combination network with parameters (h, r, s)?

    True iff the code has length r, q^h words, and distance >= r-s+1.  For
    linear codes the scalar network code is emitted alongside; codebooks get
    the repeat-and-forward description.
    """
    if code.length != r:
        raise ValueError(f"code length {code.length} does not match r={r}")
    q = code.field.q
    if isinstance(code, LinearCode):
        if code.dim != h:
            raise ValueError(f"code dimension {code.dim} does not match h={h}")
        size = q**h
    else:
        size = len(code.codewords)
        if size != q**h:
            raise ValueError(f"codebook size {size} is not q^h = {q**h}")
    required = r - s + 1
    d = min_distance(code)
    if d < required:
        return SolvabilityResult(False, d, required)
    if isinstance(code, LinearCode):
        net = build_combination(h, r, s)
        network_code = solution_from_classical_code(net, code.generator)
        return SolvabilityResult(True, d, required, network_code=network_code)
    forwarding = {
        "scheme": "encode-at-source-forward-in-middle",
        "length": r,
        "size": size,
        "distance": d,
    }
    return SolvabilityResult(True, d, required, forwarding=forwarding)


# ---------------------------------------------------------------------------
# independent configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndependentConfiguration:
    field: FieldSpec
    t: int
    h: int
    members: tuple  # Subspace tuple, each of dimension t in F_q^{ht}


def ic_is_valid(config: IndependentConfiguration, alpha: int) -> bool:
    if alpha > config.h:
        raise ValueError(f"alpha={alpha} exceeds h={config.h}")
    n = config.h * config.t
    for member in config.members:
        if member.dim != config.t or member.ambient != n:
            return False
    for subset in itertools.combinations(config.members, alpha):
        if sum_dim(subset) != alpha * config.t:
            return False
    return True


def ic_size_bound(q: int, t: int, h: int, alpha: int) -> int:
    """Proven ceiling on the size of a (t;h,alpha)_q independent configuration."""
    if alpha < 2 or alpha > h:
        raise ValueError(f"require 2 <= alpha <= h, got alpha={alpha}, h={h}")
    return (q ** ((h - alpha + 2) * t) - 1) // (q**t - 1) + alpha - 2


@dataclass
class ICSearchResult:
    size: int
    witness: IndependentConfiguration
    bound: int
    exact: bool
    nodes_used: int


def _ic_search(
    fld: FieldSpec,
    t: int,
    h: int,
    alpha: int,
    budget: int,
    target: int | None,
    limit: int,
) -> ICSearchResult:
    q = fld.q
    n = h * t
    bound = ic_size_bound(q, t, h, alpha)
    universe = enumerate_subspaces(fld, n, t, limit=limit)
    n_univ = len(universe)

    # pairwise independence masks: necessary within any configuration of
    # size >= alpha, and the maximum is always >= h >= alpha (coordinate
    # subspaces), so restricting to pairwise-independent sets is safe
    pair_ok = [0] * n_univ
    for i in range(n_univ):
        for j in range(i + 1, n_univ):
            if sum_dim([universe[i], universe[j]]) == 2 * t:
                pair_ok[i] |= 1 << j
                pair_ok[j] |= 1 << i

    # symmetry: pin the canonical first subspace and a canonical complement
    first = 0
    complement_rows = []
    for i in range(t):
        row = [0] * n
        row[t + i] = 1
        complement_rows.append(row)
    complement = subspace_from_rows(fld, complement_rows, n)
    index_of = {s.sort_key: i for i, s in enumerate(universe)}
    second = index_of[complement.sort_key]

    chosen = [first, second]
    best = list(chosen)
    nodes = [0]
    stopped_early = [False]

    def alpha_ok(new: int) -> bool:
        if len(chosen) + 1 < alpha:
            return True
        for subset in itertools.combinations(chosen, alpha - 1):
            spaces = [universe[i] for i in subset] + [universe[new]]
            if sum_dim(spaces) != alpha * t:
                return False
        return True

    def extend(start: int, cand_mask: int) -> bool:
        """Returns True to stop the whole search (target hit or budget out)."""
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if target is not None and len(best) >= target:
                return True
            if len(best) == bound:
                return True
        remaining = cand_mask >> start
        if len(chosen) + bin(remaining).count("1") <= len(best):
            return False
        for j in range(start, n_univ):
            if not (cand_mask >> j) & 1:
                continue
            nodes[0] += 1
            if nodes[0] > budget:
                stopped_early[0] = True
                return True
            if len(chosen) + bin(cand_mask >> j).count("1") <= len(best):
                return False
            if not alpha_ok(j):
                continue
            chosen.append(j)
            if extend(j + 1, cand_mask & pair_ok[j]):
                return True
            chosen.pop()
        return False

    if sum_dim([universe[first], universe[second]]) != 2 * t:
        raise AssertionError("canonical pair is not independent")
    initial = pair_ok[first] & pair_ok[second] & ~(1 << first) & ~(1 << second)
    hit = extend(0, initial)
    witness = IndependentConfiguration(
        field=fld, t=t, h=h, members=tuple(universe[i] for i in best)
    )
    exact = not stopped_early[0]
    if target is not None and hit and not stopped_early[0]:
        exact = False  # stopped as soon as the target size was reached
    return ICSearchResult(len(best), witness, bound, exact, nodes[0])


def ic_max_size(
    q: int,
    t: int,
    h: int,
    alpha: int,
    budget: int = 10**8,
    *,
    limit: int = ENUMERATION_LIMIT,
) -> ICSearchResult:
    """Exact maximum size of a (t;h,alpha)_q-IC with witness.

    The proven size bound prunes the search; on budget exhaustion the
    result is a lower bound flagged inexact.
    """
    fld = field_of_order(q)
    return _ic_search(fld, t, h, alpha, budget, None, limit)


def ic_exists_of_size(
    q: int,
    t: int,
    h: int,
    alpha: int,
    size: int,
    budget: int = 10**8,
    *,
    limit: int = ENUMERATION_LIMIT,
) -> IndependentConfiguration | None:
    """A (t;h,alpha)_q-IC with `size` members, or None (complete search).

    Raises SizeLimitExceeded on enormous universes and BudgetExhausted when
    the search stops early.
    """
    from .errors import BudgetExhausted

    if size <= 0:
        raise ValueError("size must be positive")
    fld = field_of_order(q)
    if size > ic_size_bound(q, t, h, alpha):
        return None
    if size == 1:
        members = (enumerate_subspaces(fld, h * t, t, limit=limit)[0],)
        return IndependentConfiguration(fld, t, h, members)
    result = _ic_search(fld, t, h, alpha, budget, size, limit)
    if result.size >= size:
        return IndependentConfiguration(
            fld, t, h, tuple(result.witness.members[:size])
        )
    if not result.exact:
        raise BudgetExhausted("IC existence search ran out of budget", nodes_used=result.nodes_used)
    return None


def ic_to_solution(config: IndependentConfiguration) -> NetworkCode:
    """Vector solution of the full combination network on |C| middle nodes:
    member i rides the i-th source edge, middle nodes forward.

    Edge ids follow build_combination(h, |C|, h).
    """
    if not ic_is_valid(config, config.h):
        raise ValueError("not a valid independent configuration at alpha = h")
    t, h = config.t, config.h
    r = len(config.members)
    net = build_combination(h, r, h)
    fld = config.field
    assignment = {}
    middle_mat = {}
    for i, e in enumerate(net.out_edges(net.source)):
        assignment[e.id] = config.members[i].basis
        middle_mat[e.head] = assignment[e.id]
    for e in net.edges:
        if e.tail in middle_mat:
            assignment[e.id] = middle_mat[e.tail]
    return NetworkCode(field=fld, t=t, h=h, assignment=assignment)


def solution_to_ic(net: Network, code: NetworkCode) -> IndependentConfiguration:
    """Read the middle-layer subspaces of an accepted solution back off as an IC."""
    params = combination_parameters(net)
    if params is None or params[2] != params[0]:
        raise ValueError("network is not a full minimal combination network")
    h = params[0]
    verdict = verify_solution(net, code)
    if not verdict.ok:
        raise ValueError(f"code rejected: {verdict.failure}")
    members = []
    for e in net.out_edges(net.source):
        sub = canonicalize(code.field, code.assignment[e.id])
        if sub.dim != code.t:
            raise ValueError(f"source edge {e.id} carries a rank-deficient space")
        members.append(sub)
    config = IndependentConfiguration(field=code.field, t=code.t, h=h, members=tuple(members))
    assert ic_is_valid(config, h)
    return config


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def linear_code_to_json(code: LinearCode) -> dict:
    return {
        "q": code.field.q,
        "p": code.field.p,
        "m": code.field.m,
        "length": code.length,
        "dim": code.dim,
        "generator": [list(row) for row in code.generator.row_list()],
    }


def linear_code_from_json(obj: dict) -> LinearCode:
    from .gf import make_field, rank

    fld = make_field(obj["p"], obj["m"])
    gen = Matrix.from_rows(fld, obj["generator"])
    if gen.rows != obj["dim"] or gen.cols != obj["length"]:
        raise ValueError("generator shape disagrees with declared length/dimension")
    if rank(gen) != gen.rows:
        raise ValueError("generator is not full row rank")
    return LinearCode(field=fld, length=obj["length"], dim=obj["dim"], generator=gen)


def ic_to_json(config: IndependentConfiguration) -> dict:
    return {
        "p": config.field.p,
        "m": config.field.m,
        "t": config.t,
        "h": config.h,
        "members": [[list(row) for row in s.basis.row_list()] for s in config.members],
    }


def ic_from_json(obj: dict) -> IndependentConfiguration:
    from .gf import make_field

    fld = make_field(obj["p"], obj["m"])
    n = obj["h"] * obj["t"]
    members = tuple(subspace_from_rows(fld, rows, n) for rows in obj["members"])
    return IndependentConfiguration(field=fld, t=obj["t"], h=obj["h"], members=members)
