from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netgap.errors import UnsolvableNetwork
from netgap.gaplab import (
    candidate_qt_pairs,
    gap_exact,
    gap_formulas,
    gap_table_rows,
    is_prime_power,
    prime_powers_up_to,
    psi,
    qs_exact,
    qv_exact,
    verify_bertrand_range,
)
from netgap.networks import build_butterfly, build_combination, build_kneser


def test_psi_examples():
    assert psi(5) == 5
    assert psi(6) == 7
    assert psi(1) == 2
    assert psi(10) == 11
    assert psi(Fraction(9, 2)) == 5
    assert psi(25.5) == 27
    with pytest.raises(ValueError):
        psi(0)


def test_is_prime_power():
    powers = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}
    for n in range(1, 33):
        assert is_prime_power(n) == (n in powers)


def test_prime_powers_sieve_matches_pointwise():
    pps = prime_powers_up_to(200)
    assert pps == [n for n in range(2, 201) if is_prime_power(n)]


@given(st.integers(1, 5000))
@settings(max_examples=100, deadline=None)
def test_psi_bertrand_pointwise(n):
    value = psi(n)
    assert n <= value <= 2 * n
    assert is_prime_power(value)
    for k in range(n, value):
        assert not is_prime_power(k)


def test_bertrand_range_check():
    assert verify_bertrand_range(10**4)


def test_candidate_qt_pairs_prefers_smaller_q():
    assert candidate_qt_pairs(16) == [(2, 4), (4, 2), (16, 1)]
    assert candidate_qt_pairs(12) == []
    assert candidate_qt_pairs(7) == [(7, 1)]


def test_butterfly_gap_zero():
    report = gap_exact(build_butterfly(), description="butterfly")
    assert report.exact
    assert report.qs.value == 2 and report.qv.value == 2 and report.gap == 0


def test_butterfly_chi_and_search_agree():
    net = build_butterfly()
    via_chi = qs_exact(net, method="chi")
    via_search = qs_exact(net, method="search")
    assert via_chi.exact and via_search.exact
    assert via_chi.value == via_search.value == 2


def test_chi_and_search_agree_on_reverse_skeletons():
    from netgap.graphs import UGraph, complete_graph
    from netgap.skeleton import reverse_skeleton

    instances = [
        complete_graph(3),
        UGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),  # C5
        UGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]),  # P4
    ]
    for g in instances:
        net = reverse_skeleton(g)
        via_chi = qs_exact(net, method="chi")
        via_search = qs_exact(net, method="search")
        assert via_chi.exact and via_search.exact
        assert via_chi.value == via_search.value


def test_chi_method_requires_two_messages():
    with pytest.raises(ValueError):
        qs_exact(build_combination(3, 4, 3), method="chi")


def test_unsolvable_reported_distinctly():
    with pytest.raises(UnsolvableNetwork):
        qs_exact(build_combination(3, 4, 2))


def test_exhausted_budgets_yield_honest_brackets():
    net = build_combination(2, 4, 2)
    qs = qs_exact(net, budget=3, method="search")
    assert not qs.exact and qs.lo == 2 and qs.hi >= 3
    with pytest.raises(ValueError):
        qs.value
    # v = 4 needs a real IC search on N_{2,5,2}; one node is never enough
    net5 = build_combination(2, 5, 2)
    qv = qv_exact(net5, budget=1)
    assert not qv.exact and qv.lo == 4 and qv.hi >= qv.lo
    report = gap_exact(net5, budget=1)
    assert not report.exact
    lo, hi = report.gap
    assert lo == 0 and hi >= 0  # true gap 0 stays inside the bracket


def test_n_2_5_2_values():
    net = build_combination(2, 5, 2)
    qs = qs_exact(net)
    qv = qv_exact(net)
    assert qs.exact and qs.value == 4  # [5,2,4]_q needs q >= 4
    assert qv.exact and qv.value == 4  # a (2;2,2)_2 spread of size 5 works


def test_kneser_2_2_2_gap_one():
    net = build_kneser(2, 2, 2)
    report = gap_exact(net, description="K_{2,2;2}")
    assert report.exact
    assert report.qv.value == 4 and report.qs.value == 5 and report.gap == 1
    assert report.qv.method == "homomorphism" and report.qs.method == "skeleton-chi"


def test_kneser_3_2_2_gap_two():
    # the q=3, t=2 instance end to end: chi(3K_{4:2}) = 12 resolved by
    # complete search, vector side certified by the identity homomorphism
    net = build_kneser(3, 2, 2)
    report = gap_exact(net, description="K_{3,2;2}")
    assert report.exact
    assert report.qv.value == 9 and report.qs.value == 11 and report.gap == 2
    assert report.gap == gap_formulas("kneser-h2", q=3, t=2).value


def test_qv_le_qs_on_resolved_instances():
    for net in (build_butterfly(), build_combination(2, 4, 2), build_kneser(2, 1, 2)):
        report = gap_exact(net)
        assert report.exact and report.qv.value <= report.qs.value


def test_formula_kneser_h2():
    res = gap_formulas("kneser-h2", q=2, t=2)
    assert res.value == 1 and res.hypotheses_ok
    assert gap_formulas("kneser-h2", q=3, t=2).value == 2
    assert not gap_formulas("kneser-h2", q=2, t=4).hypotheses_ok


def test_formula_combination_upper_h2_is_zero():
    for r in range(3, 10):
        assert gap_formulas("combination-upper", h=2, r=r).value == 0


def test_formula_h3_lower():
    res = gap_formulas("kneser-h3-lower", q=2, t=3, h=3)
    assert res.value == psi(10) - 8 == 3 and res.hypotheses_ok
    # t < h branch keeps the psi argument exact as a fraction
    small_t = gap_formulas("kneser-h3-lower", q=3, t=2, h=4)
    assert small_t.value == psi(Fraction(9) + Fraction(3, 9)) - 9


def test_formula_t2_lower():
    res = gap_formulas("kneser-h2-t2-lower", q=2, t=2)
    assert res.value == psi(5) - 4 == 1 and res.hypotheses_ok


def test_formula_unknown_kind():
    with pytest.raises(ValueError):
        gap_formulas("nope", q=2)
    with pytest.raises(ValueError):
        gap_formulas("kneser-h2", q=2, t=0)
    with pytest.raises(ValueError):
        gap_formulas("combination-upper", h=3, r=2)


def test_formula_inequalities_across_grid():
    # closed-form values obey the accompanying simple bounds everywhere
    for q in (2, 3, 4, 5, 7, 8, 9):
        for t in (1, 2, 3, 4):
            eq = gap_formulas("kneser-h2", q=q, t=t)
            assert eq.value >= q ** (t - 1) - 1  # from psi(n) >= n
            if t >= 2:
                low = gap_formulas("kneser-h2-t2-lower", q=q, t=t)
                assert low.value >= 1
            for h in (3, 4):
                if t >= 2:
                    res = gap_formulas("kneser-h3-lower", q=q, t=t, h=h)
                    denom = (h - 1) if t >= h else (h - 1) ** 2
                    assert res.value >= Fraction(q ** (t - 1), denom)
    for h in (2, 3, 4):
        for r in range(max(h, 2), 12):
            up = gap_formulas("combination-upper", h=h, r=r)
            assert up.value <= r + h - 3
            if h == 2:
                assert up.value == 0


def test_gap_upper_bound_holds_on_resolved_h2_instances():
    # gap <= psi(q^t + q^{t-1} - 1) - q^t at the vector-optimal value
    for net in (
        build_butterfly(),
        build_kneser(2, 1, 2),
        build_kneser(2, 2, 2),
        build_combination(2, 5, 2),
    ):
        report = gap_exact(net)
        assert report.exact
        for q, t in candidate_qt_pairs(report.qv.value):
            bound = gap_formulas("minimal-h2-upper", q=q, t=t).value
            assert report.gap <= bound
            break


def test_gap_table_rows_match_formulas():
    rows = gap_table_rows(qs=(2, 3), ts=(1, 2), exact_limit=2)
    by_net = {r["network"]: r for r in rows}
    assert by_net["K_{2,1;2}"]["gap"] == 0
    assert by_net["K_{2,2;2}"]["gap"] == 1
    assert by_net["K_{3,2;2}"]["q_s"] == 11 and by_net["K_{3,2;2}"]["gap"] == 2
    for (q, t), row in zip([(2, 1), (2, 2), (3, 1), (3, 2)], rows):
        assert row["q_v"] == q**t
        assert row["q_s"] == psi(q**t + q ** (t - 1) - 1)
        assert row["gap"] == row["q_s"] - row["q_v"]
