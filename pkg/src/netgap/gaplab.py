"""Smallest prime power psi, exact q_s / q_v / gap, and the closed-form bounds.

q_s is the least field size with a scalar solution, q_v the least q^t with a
vector solution.  Exact values are decided per instance by the cheapest
certified route available: skeleton chromatic number (minimal, two
messages), independent-configuration search (full minimal combination
networks), graph homomorphism, or exhaustive code search; every answer
carries a replayable certificate.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import BudgetExhausted, UnsolvableNetwork
from .lincode import search_solution
from .mdsic import ic_exists_of_size
from .networks import (
    Network,
    build_kneser,
    combination_parameters,
    is_minimal,
    is_solvable,
    is_subcombination,
)
from .qkneser import (
    DEFAULT_BUDGET,
    build_qkneser,
    chromatic_number,
    find_homomorphism,
    max_clique,
    qkneser_clique_number,
)
from .skeleton import skeleton

# ---------------------------------------------------------------------------
# prime powers
# ---------------------------------------------------------------------------


def is_prime_power(n: int) -> bool:
    """True iff n = p^k for a prime p and k >= 1."""
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # n itself is prime


def psi(x) -> int:
    """Smallest prime power >= x (x a positive real; exact for int/Fraction)."""
    if x <= 0:
        raise ValueError(f"psi needs a positive argument, got {x}")
    n = x if isinstance(x, int) else math.ceil(x)
    n = max(n, 2)
    while not is_prime_power(n):
        n += 1
    return n


def prime_powers_up_to(limit: int) -> list[int]:
    """Sorted prime powers <= limit, by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    out = []
    for p in range(2, limit + 1):
        if sieve[p]:
            power = p
            while power <= limit:
                out.append(power)
                power *= p
    return sorted(out)


def verify_bertrand_range(n_max: int) -> bool:
    """Check psi(n) - n <= n for all 1 <= n <= n_max.

    Equivalent gap form: for consecutive prime powers a < b, every n in
    (a, b] needs b <= 2n, worst at n = a+1.  Avoids n_max psi scans.
    """
    pps = prime_powers_up_to(2 * n_max + 2)
    if not pps or pps[0] != 2:
        return False
    # n = 1 and n = 2 are both served by 2
    prev = pps[0]
    for b in pps[1:]:
        if prev >= n_max:
            break
        if b > 2 * (prev + 1):
            return False
        prev = b
    return prev >= n_max or pps[-1] >= n_max


def candidate_qt_pairs(v: int) -> list[tuple[int, int]]:
    """(q, t) with q^t = v, smaller q first (the deterministic tie order)."""
    if not is_prime_power(v):
        return []
    p = 2
    n = v
    while n % p:
        p += 1
    k = 0
    while n > 1:
        n //= p
        k += 1
    pairs = []
    for d in range(1, k + 1):
        if k % d == 0:
            pairs.append((p**d, k // d))
    return pairs  # ascending d = ascending q


# ---------------------------------------------------------------------------
# results
# ---------------------------------------------------------------------------

@dataclass
class Extremal:
    """An exact value (lo == hi) or an honest bracket from a stopped search."""

    lo: int
    hi: int
    method: str
    certificate: object | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"value not resolved: [{self.lo}, {self.hi}]")
        return self.lo


@dataclass
class GapReport:
    network: str
    qs: Extremal
    qv: Extremal
    certificates: dict = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.qs.exact and self.qv.exact

    @property
    def gap(self):
        if self.exact:
            return self.qs.value - self.qv.value
        # q_v <= q_s always, so the bracket never dips below zero
        return (max(self.qs.lo - self.qv.hi, 0), self.qs.hi - self.qv.lo)

    @property
    def methods(self) -> str:
        return f"qs:{self.qs.method};qv:{self.qv.method}"


# ---------------------------------------------------------------------------
# exact q_s / q_v
# ---------------------------------------------------------------------------

def _scalar_upper_bound(net: Network) -> int:
    # any field size >= the number of terminals admits a multicast solution
    return psi(max(2, len(net.terminals)))


# edge counts up to which the edge-deletion minimality test is cheap enough
# to run for route selection; bigger networks must be structurally minimal
_MINIMALITY_PROBE_EDGES = 120


def _routing_minimal(net: Network) -> bool:
    """Minimality for route selection: structural shortcut, else exact test."""
    if is_subcombination(net):
        return True
    if len(net.edges) <= _MINIMALITY_PROBE_EDGES:
        return is_minimal(net)
    return False  # unknown; fall back to certified exhaustive routes


def qs_exact(net: Network, budget: int = DEFAULT_BUDGET, method: str = "auto") -> Extremal:
    """Smallest field size with a scalar linear solution, with certificate."""
    if not is_solvable(net):
        raise UnsolvableNetwork("network fails the cut criterion")
    if method not in ("auto", "chi", "search"):
        raise ValueError(f"unknown method {method!r}")
    use_chi = method == "chi" or (method == "auto" and net.h == 2 and _routing_minimal(net))
    if method == "chi" and not (net.h == 2 and _routing_minimal(net)):
        raise ValueError("the chromatic route needs a minimal network with h = 2")
    if use_chi:
        skel = skeleton(net)
        res = chromatic_number(skel.graph, budget)
        if res.exact:
            value = psi(res.chi - 1)
            return Extremal(value, value, "skeleton-chi", certificate=("coloring", skel, res))
        return Extremal(psi(res.lo - 1), psi(res.hi - 1), "skeleton-chi-bracket")
    bound = _scalar_upper_bound(net)
    q = 2
    while q <= bound:
        try:
            code = search_solution(net, q, 1, budget)
        except BudgetExhausted:
            return Extremal(q, bound, "exhaustive-bracket")
        if code is not None:
            return Extremal(q, q, "exhaustive", certificate=("code", code))
        q = psi(q + 1)
    raise AssertionError("scalar scan passed the sufficiency bound without a solution")


def qv_exact(net: Network, budget: int = DEFAULT_BUDGET) -> Extremal:
    """Smallest q^t with a (q,t)-linear solution, with certificate.

    Candidate values ascend; ties between (q,t) pairs prefer smaller q.
    Each candidate is decided by the cheapest certified route: IC search on
    full minimal combination networks, skeleton homomorphism on minimal
    two-message networks, exhaustive code search otherwise.
    """
    if not is_solvable(net):
        raise UnsolvableNetwork("network fails the cut criterion")
    comb = combination_parameters(net)
    ic_route = comb is not None and comb[1] >= comb[0] and comb[2] == comb[0]
    hom_route = net.h == 2 and _routing_minimal(net)
    skel = skeleton(net) if hom_route else None
    skel_clique_size = None
    if hom_route:
        clique, complete = max_clique(skel.graph, budget=max(budget // 10, 1000))
        if complete:
            skel_clique_size = len(clique)
    v_max = _scalar_upper_bound(net)
    v = 2
    while v <= v_max:
        for q, t in candidate_qt_pairs(v):
            try:
                if ic_route:
                    h, r = comb[0], comb[1]
                    witness = ic_exists_of_size(q, t, h, h, r, budget)
                    if witness is not None:
                        return Extremal(v, v, "ic", certificate=("ic", witness))
                elif hom_route:
                    if (
                        skel_clique_size is not None
                        and skel_clique_size > qkneser_clique_number(q, t)
                    ):
                        continue  # cliques map injectively; the target is too small
                    from .errors import SizeLimitExceeded

                    try:
                        target = build_qkneser(q, 2 * t, t)
                    except SizeLimitExceeded:
                        code = search_solution(net, q, t, budget)
                        if code is not None:
                            return Extremal(v, v, "exhaustive", certificate=("code", code))
                        continue
                    phi = find_homomorphism(skel.graph, target, budget)
                    if phi is not None:
                        return Extremal(
                            v, v, "homomorphism", certificate=("hom", skel, target, phi)
                        )
                else:
                    code = search_solution(net, q, t, budget)
                    if code is not None:
                        return Extremal(v, v, "exhaustive", certificate=("code", code))
            except BudgetExhausted:
                return Extremal(v, v_max, "bracket")
        v = psi(v + 1)
    raise AssertionError("vector scan passed the sufficiency bound without a solution")


def gap_exact(net: Network, budget: int = DEFAULT_BUDGET, description: str = "network") -> GapReport:
    qs = qs_exact(net, budget)
    qv = qv_exact(net, budget)
    if qs.exact and qv.exact:
        assert qv.value <= qs.value, "vector optimum exceeded scalar optimum"
    return GapReport(network=description, qs=qs, qv=qv)


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------

@dataclass
class FormulaResult:
    kind: str
    value: int
    hypotheses_ok: bool
    note: str


def gap_formulas(kind: str, **params) -> FormulaResult:
    """Evaluate one of the closed-form gap bounds.

    Values are computed even outside the stated hypotheses, but then
    flagged; psi arguments are kept exact via Fraction.
    """
    if kind in ("kneser-h2", "minimal-h2-upper", "kneser-h2-t2-lower", "kneser-h3-lower"):
        q, t = params["q"], params["t"]
        if q < 2 or t < 1:
            raise ValueError(f"need q >= 2 and t >= 1, got q={q}, t={t}")
    if kind == "kneser-h2":
        value = psi(q**t + q ** (t - 1) - 1) - q**t
        ok = is_prime_power(q) and (q >= 5 or t <= 3)
        note = "gap(K_{q,t;2}) equals this when q >= 5 or t <= 3"
    elif kind == "minimal-h2-upper":
        value = psi(q**t + q ** (t - 1) - 1) - q**t
        ok = is_prime_power(q)
        note = "upper bound for minimal h=2 networks with a (q,t)-vector-optimal solution"
    elif kind == "kneser-h2-t2-lower":
        value = psi(q**t + 1) - q**t
        ok = is_prime_power(q) and t >= 2
        note = "gap(K_{q,t;2}) >= this >= 1 for t >= 2"
    elif kind == "kneser-h3-lower":
        h = params["h"]
        if h < 2:
            raise ValueError(f"need h >= 2, got h={h}")
        if t >= h:
            arg = Fraction(q**t) + Fraction(q ** (t - 1), h - 1)
        else:
            arg = Fraction(q**t) + Fraction(q ** (t - 1), (h - 1) ** 2)
        value = psi(arg) - q**t
        ok = is_prime_power(q) and t >= 2 and h >= 3
        note = "gap(K_{q,t;h}) >= this for h >= 3, t >= 2"
    elif kind == "combination-upper":
        h, r = params["h"], params["r"]
        if h < 1 or r < h or r < 2:
            raise ValueError(f"need r >= max(h, 2) and h >= 1, got h={h}, r={r}")
        value = psi(r - 1) - psi(r - h + 1)
        ok = r >= h >= 2
        note = "gap(N_{h,r,h}) <= this"
    else:
        raise ValueError(f"unknown formula kind {kind!r}")
    return FormulaResult(kind=kind, value=value, hypotheses_ok=ok, note=note)


# ---------------------------------------------------------------------------
# gap table
# ---------------------------------------------------------------------------

def gap_table_rows(qs=(2, 3), ts=(1, 2), exact_limit: int = 4, budget: int = DEFAULT_BUDGET):
    """Rows (network, q_v, q_s, gap, methods, runtime_s) for Kneser networks.

    Values come from the closed forms; instances with q^t <= exact_limit are
    additionally resolved exactly end to end and cross-checked.
    """
    rows = []
    for q in qs:
        for t in ts:
            start = time.time()
            qv_val = q**t
            qs_val = psi(q**t + q ** (t - 1) - 1)
            formula = gap_formulas("kneser-h2", q=q, t=t)
            methods = "formula" if formula.hypotheses_ok else "formula(outside-hypotheses)"
            if q**t <= exact_limit:
                net = build_kneser(q, t, 2)
                report = gap_exact(net, budget, description=f"K_{{{q},{t};2}}")
                if report.exact:
                    assert report.qv.value == qv_val and report.qs.value == qs_val
                    methods = report.methods
            rows.append(
                {
                    "network": f"K_{{{q},{t};2}}",
                    "q_v": qv_val,
                    "q_s": qs_val,
                    "gap": qs_val - qv_val,
                    "methods": methods,
                    "runtime_s": round(time.time() - start, 3),
                }
            )
    return rows
