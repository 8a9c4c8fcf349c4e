import json
import random

import pytest

from netgap.errors import SizeLimitExceeded, UnsolvableNetwork
from netgap.networks import (
    Edge,
    Network,
    build_butterfly,
    build_combination,
    build_kneser,
    combination_parameters,
    essential_nodes,
    extend_messages,
    is_minimal,
    is_solvable,
    is_subcombination,
    min_cut,
    network_from_json,
    network_to_dot,
    network_to_json,
    parallelize,
    prune,
    topological_order,
    validate_network,
)
from netgap.subspaces import sum_dim


def test_combination_shape_232():
    net = build_combination(2, 3, 2)
    assert len(net.nodes) == 7 and len(net.edges) == 9
    assert len(net.terminals) == 3


def test_combination_shape_242():
    assert len(build_combination(2, 4, 2).terminals) == 6


def test_combination_shape_353():
    net = build_combination(3, 5, 3)
    assert len(net.terminals) == 10
    assert all(net.in_degree(t) == 3 for t in net.terminals)


def test_combination_rejects_bad_params():
    with pytest.raises(ValueError):
        build_combination(2, 2, 3)
    with pytest.raises(SizeLimitExceeded):
        build_combination(2, 40, 20)


def test_combination_parameters_detection():
    net = build_combination(3, 5, 3)
    assert combination_parameters(net) == (3, 5, 3)
    assert combination_parameters(build_butterfly()) is None


def test_builders_are_acyclic_and_essential():
    for net in (build_butterfly(), build_combination(2, 4, 2), build_kneser(2, 1, 2)):
        topological_order(net)
        assert essential_nodes(net) == set(net.nodes)


def test_min_cut_butterfly():
    net = build_butterfly()
    assert [min_cut(net, t) for t in net.terminals] == [2, 2]
    with pytest.raises(ValueError):
        min_cut(net, "v3")


def test_min_cut_combination_and_edge_removal():
    net = build_combination(2, 3, 2)
    assert all(min_cut(net, t) == 2 for t in net.terminals)
    removed = net.without_edge(net.out_edges("s")[0].id)
    assert min(min_cut(removed, t) for t in net.terminals) == 1


def test_min_cut_scales_under_parallelization():
    net = build_butterfly()
    for m in (2, 3):
        par = parallelize(net, m)
        for t in net.terminals:
            assert min_cut(par, t) == m * min_cut(net, t)


def test_is_minimal_butterfly():
    assert is_minimal(build_butterfly())


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_combination_minimal_iff_s_equals_h(r):
    for s in range(1, min(3, r) + 1):
        for h in range(1, s + 1):
            assert is_minimal(build_combination(h, r, s)) == (s == h)
        if s < r:  # a strictly larger h makes the network unsolvable
            with pytest.raises(UnsolvableNetwork):
                is_minimal(build_combination(s + 1, r, s))


def test_minimal_in_degree_bound():
    # minimal networks with solutions cannot have nodes of in-degree above h
    for net in (build_butterfly(), build_combination(2, 5, 2), build_combination(3, 4, 3)):
        if is_minimal(net):
            assert all(net.in_degree(v) <= net.h for v in net.nodes)


def test_parallelize_identity_and_counts():
    net = build_butterfly()
    one = parallelize(net, 1)
    assert len(one.edges) == 9 and one.h == 2
    two = parallelize(net, 2)
    assert len(two.edges) == 18 and two.h == 4
    assert is_minimal(two)
    with pytest.raises(ValueError):
        parallelize(net, 0)


def test_extend_messages_counts():
    net = build_butterfly()
    ext = extend_messages(net, 3)
    assert len(ext.nodes) == len(net.nodes) + 1
    assert len(ext.edges) == len(net.edges) + 2 + 1 * len(net.terminals)
    assert ext.terminals == net.terminals and ext.h == 3
    with pytest.raises(ValueError):
        extend_messages(net, 2)
    ext4 = extend_messages(build_combination(2, 3, 2), 4)
    direct = [e for e in ext4.edges if e.tail == ext4.source and e.head in ext4.terminals]
    assert len(direct) == 2 * 3


def test_kneser_212():
    net = build_kneser(2, 1, 2)
    middles = [v for v in net.nodes if v.startswith("m")]
    assert len(middles) == 3 and len(net.terminals) == 3


def test_kneser_222_counts():
    net = build_kneser(2, 2, 2)
    middles = [v for v in net.nodes if v.startswith("m")]
    assert len(middles) == 35 and len(net.terminals) == 280
    # terminal rule certified against sum_dim on the labels
    rng = random.Random(2)
    for term in rng.sample(net.terminals, 12):
        feeders = [e.tail for e in net.in_edges(term)]
        assert sum_dim([net.labels[m] for m in feeders]) == 4


def test_kneser_213():
    net = build_kneser(2, 1, 3)
    middles = [v for v in net.nodes if v.startswith("m")]
    assert len(middles) == 7 and len(net.terminals) == 28


@pytest.mark.parametrize("q,t", [(2, 1), (3, 1), (2, 2)])
def test_kneser_terminals_are_qkneser_edges(q, t):
    from netgap.qkneser import build_qkneser

    net = build_kneser(q, t, 2)
    graph = build_qkneser(q, 2 * t, t)
    terminal_pairs = set()
    for term in net.terminals:
        feeders = sorted(int(e.tail[1:]) for e in net.in_edges(term))
        terminal_pairs.add(tuple(feeders))
    assert terminal_pairs == set(graph.edges)


def test_kneser_implicit_mode():
    imp = build_kneser(2, 2, 3, mode="implicit")
    assert len(imp.middles) == 651
    first = list(imp.stream_terminals(5))
    assert len(first) == 5 and all(imp.is_terminal(s) for s in first)
    assert not imp.is_terminal((0, 1, 2)) or sum_dim([imp.middles[i] for i in (0, 1, 2)]) == 6
    with pytest.raises(SizeLimitExceeded):
        build_kneser(2, 2, 3)  # materialized must refuse, never truncate
    with pytest.raises(ValueError):
        build_kneser(2, 1, 1)


def test_is_subcombination():
    assert is_subcombination(build_kneser(2, 1, 2))
    assert is_subcombination(build_combination(2, 4, 2))
    assert not is_subcombination(build_butterfly())
    assert not is_subcombination(build_combination(2, 4, 3))


def test_solvability_check():
    assert is_solvable(build_butterfly())
    assert not is_solvable(build_combination(3, 4, 2))


def test_prune_removes_non_essential():
    net = build_butterfly()
    with_extra = Network(
        h=net.h,
        source=net.source,
        terminals=net.terminals,
        nodes=net.nodes + ("dead",),
        edges=net.edges + (Edge("edead", "s", "dead"),),
    )
    pruned = prune(with_extra)
    assert set(pruned.nodes) == set(net.nodes)
    with pytest.raises(ValueError):
        validate_network(with_extra)


def test_json_roundtrip_with_labels(tmp_path):
    net = build_kneser(2, 1, 2)
    obj = network_to_json(net)
    text = json.dumps(obj)
    back = network_from_json(json.loads(text))
    assert back.edges == net.edges and back.terminals == net.terminals
    assert back.labels == net.labels


def test_dot_export_mentions_roles():
    dot = network_to_dot(build_butterfly())
    assert "shape=box" in dot and "doublecircle" in dot and '"s" -> "v1"' in dot
