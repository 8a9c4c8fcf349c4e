import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netgap.errors import SizeLimitExceeded
from netgap.gf import Matrix, make_field
from netgap.subspaces import (
    canonicalize,
    enumerate_subspaces,
    gaussian_coefficient,
    intersection,
    spread,
    subspace_from_rows,
    sum_dim,
)


def test_canonicalize_full_space():
    f = make_field(2, 1)
    s = canonicalize(f, Matrix.from_rows(f, [(1, 0), (0, 1)]))
    assert s.dim == 2 and s.ambient == 2


def test_canonicalize_repeated_rows():
    f = make_field(2, 1)
    s = canonicalize(f, Matrix.from_rows(f, [(1, 1), (1, 1)]))
    assert s.dim == 1 and s.basis.row_list() == [(1, 1)]


def test_canonicalize_generator_order_invariant():
    f = make_field(3, 1)
    rows = [(1, 0, 2, 1), (0, 1, 1, 2)]
    base = canonicalize(f, Matrix.from_rows(f, rows))
    rng = random.Random(13)
    for _ in range(20):
        # random invertible recombination of the generators
        a, b, c, d = [rng.randrange(3) for _ in range(4)]
        if (a * d - b * c) % 3 == 0:
            continue
        g1 = tuple((a * x + b * y) % 3 for x, y in zip(*rows))
        g2 = tuple((c * x + d * y) % 3 for x, y in zip(*rows))
        again = canonicalize(f, Matrix.from_rows(f, [g2, g1]))
        assert again == base


def test_gaussian_examples():
    assert gaussian_coefficient(4, 0, 2) == 1
    assert gaussian_coefficient(4, 2, 2) == 35
    assert gaussian_coefficient(2, 1, 3) == 4
    with pytest.raises(ValueError):
        gaussian_coefficient(2, 3, 2)


def test_gaussian_brute_force_oracle_f3_squared():
    # count distinct spans of nonzero vectors of F_3^2 directly
    f = make_field(3, 1)
    spans = {
        canonicalize(f, Matrix.from_rows(f, [v])).sort_key
        for v in itertools.product(range(3), repeat=2)
        if any(v)
    }
    assert len(spans) == gaussian_coefficient(2, 1, 3)


def test_enumerate_lines_of_f2_squared():
    f = make_field(2, 1)
    subs = enumerate_subspaces(f, 2, 1)
    assert {s.basis.row_list()[0] for s in subs} == {(1, 0), (0, 1), (1, 1)}


def test_enumerate_full_space_single():
    f = make_field(3, 1)
    subs = enumerate_subspaces(f, 3, 3)
    assert len(subs) == 1 and subs[0].dim == 3


def test_enumerate_counts_and_canonical_order():
    f2, f3 = make_field(2, 1), make_field(3, 1)
    for f, n_max in ((f2, 4), (f3, 3)):
        for n in range(n_max + 1):
            for t in range(n + 1):
                subs = enumerate_subspaces(f, n, t)
                assert len(subs) == gaussian_coefficient(n, t, f.q)
                keys = [s.sort_key for s in subs]
                assert keys == sorted(keys)
                assert len(set(keys)) == len(keys)


def test_enumerate_limit():
    f = make_field(2, 1)
    with pytest.raises(SizeLimitExceeded):
        enumerate_subspaces(f, 4, 2, limit=10)


def test_sum_dim_examples():
    f = make_field(2, 1)
    w = subspace_from_rows(f, [(1, 0)], 2)
    assert sum_dim([w, w]) == 1
    lines = enumerate_subspaces(f, 2, 1)
    assert sum_dim([lines[0], lines[1]]) == 2
    with pytest.raises(ValueError):
        sum_dim([w, subspace_from_rows(f, [(1, 0, 0)], 3)])


def test_sum_dim_matches_stacked_rank_oracle():
    from netgap.gf import rank

    f = make_field(2, 1)
    rng = random.Random(19)
    for _ in range(20):
        spaces = [
            canonicalize(f, Matrix.from_rows(f, [[rng.randrange(2) for _ in range(6)] for _ in range(2)]))
            for _ in range(3)
        ]
        rows = [row for s in spaces for row in s.basis.row_list()]
        assert sum_dim(spaces) == rank(Matrix.from_rows(f, rows))


@pytest.mark.parametrize(
    "q,t",
    [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (4, 1)],
)
def test_spread_defining_properties(q, t):
    # pairwise trivial intersection and exact cover of the nonzero vectors
    from netgap.gf import field_of_order

    f = field_of_order(q)
    members = spread(f, t)
    assert len(members) == q**t + 1
    for a, b in itertools.combinations(members, 2):
        assert sum_dim([a, b]) == 2 * t
    seen = {}
    for i, s in enumerate(members):
        assert s.dim == t
        for v in s.vectors():
            if any(v):
                assert v not in seen
                seen[v] = i
    assert len(seen) == q ** (2 * t) - 1


def test_intersection_zassenhaus():
    f = make_field(2, 1)
    a = subspace_from_rows(f, [(1, 0, 0), (0, 1, 0)], 3)
    b = subspace_from_rows(f, [(0, 1, 0), (0, 0, 1)], 3)
    inter = intersection(a, b)
    assert inter.dim == 1 and inter.basis.row_list() == [(0, 1, 0)]
    assert sum_dim([a, b]) == 3


@given(st.integers(0, 2**24 - 1))
@settings(max_examples=50, deadline=None)
def test_intersection_dimension_formula(bits):
    f = make_field(2, 1)
    rows = [[(bits >> (4 * i + j)) & 1 for j in range(4)] for i in range(6)]
    a = canonicalize(f, Matrix.from_rows(f, rows[:3]))
    b = canonicalize(f, Matrix.from_rows(f, rows[3:]))
    assert intersection(a, b).dim == a.dim + b.dim - sum_dim([a, b])
