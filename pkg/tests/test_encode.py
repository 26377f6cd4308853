import itertools

import pytest
from hypothesis import given, strategies as st

from symprog.core import BudgetExceeded, ContractError, InputError
from symprog.encode import (
    build_hypergraph,
    build_tripartite,
    count_triangles,
    edge_disjoint,
    edge_label,
    enumerate_simplices,
    feasible_in_product,
    group_by_labels,
    label_matrix,
    simplex_extension,
    triangle_edges,
    triangle_is_feasible,
    witness_triangles,
)
from symprog.feasible import ModArrangement, derive_tail, enumerate_feasible, is_feasible
from symprog.generate import random_box_set, random_label_sets


def test_empty_graph():
    G = build_tripartite([], 2)
    assert count_triangles(G) == (0, [])


def test_single_origin_point_is_a_matching():
    G = build_tripartite([(0, 0)], 1)
    V = G.vertices()
    for i in V[:20]:
        assert [j for j in V if G.adjacent12(i, j)] == [i]


def test_origin_witnesses():
    G = build_tripartite([(0, 0)], 1)
    total, triangles = count_triangles(G)
    assert total >= 9
    wit = witness_triangles(G, (0, 0))
    assert len(wit) == 9
    assert set(wit) <= set(triangles)


def test_box_is_enforced():
    with pytest.raises(InputError):
        build_tripartite([(3, 0)], 2)


@pytest.mark.parametrize("seed", range(3))
def test_witness_family(seed):
    R = random_box_set(2, 0.5, seed)
    G = build_tripartite(R, 2)
    total, triangles = count_triangles(G)
    found = set(triangles)
    family = []
    for pt in sorted(R):
        wit = witness_triangles(G, pt)
        assert len(wit) == 25
        assert all(t.points == (pt, pt, pt) for t in wit)
        assert set(wit) <= found
        family += wit
    edges = [e for t in family for e in triangle_edges(t)]
    assert len(edges) == len(set(edges))
    assert total >= len(R) * 25
    assert all(triangle_is_feasible(t) and all(p in R for p in t.points) for t in triangles)
    # at most (2M+1)^2 triangles per point triple
    per = {}
    for t in triangles:
        per[t.points] = per.get(t.points, 0) + 1
    assert max(per.values()) <= (2 * G.M + 1) ** 2


def test_triangle_budget():
    with pytest.raises(BudgetExceeded):
        count_triangles(build_tripartite([(0, 0)], 2), budget=10)


def test_edge_label_q4_formula():
    for vs in itertools.product(itertools.product(range(-2, 3), repeat=3), repeat=2):
        x1, x3 = vs
        x4 = (x1[2], x3[0], x1[1])

        def c(v, b):
            return -sum(v) if b % 4 == 0 else v[b % 4 - 1]

        expected = c(x1, 1) + c(x4, 0) + c(x4, 1) + c(x3, 3) + c(x3, 0) + c(x3, 1)
        assert edge_label([x1, None, x3, x4], 2, 4)[0] == expected


def test_edge_label_examples():
    assert edge_label([(0, 0), (0, 0), None], 3, 3, 5) == (0, 0)
    assert edge_label([(1, 0), (0, 1), None], 3, 3, 5)[0] == 0


@given(st.integers(3, 5).flatmap(lambda q: st.tuples(
    st.just(q), st.integers(1, q), st.lists(st.lists(st.integers(-5, 5), min_size=q - 1, max_size=q - 1), min_size=q, max_size=q))))
def test_label_matrix_agrees_with_edge_label(args):
    q, j, verts = args
    import numpy as np

    flat = np.array([x for v in verts for x in v])
    assert tuple(label_matrix(j, q) @ flat) == edge_label(verts, j, q)


@given(st.integers(3, 5).flatmap(lambda q: st.tuples(
    st.just(q), st.integers(2, 6).flatmap(lambda N: st.tuples(st.just(N), st.lists(
        st.lists(st.integers(0, N - 1), min_size=q - 1, max_size=q - 1), min_size=q, max_size=q))))))
def test_every_vertex_tuple_labels_a_feasible_arrangement(args):
    q, (N, verts) = args
    labels = [edge_label(verts, j, q, N) for j in range(1, q + 1)]
    assert is_feasible(ModArrangement.from_tuples(labels, N))


def test_empty_hypergraph():
    H = build_hypergraph([[], [], []], 3, 5)
    assert enumerate_simplices(H) == []


def test_single_arrangement_gives_n_squared_simplices():
    arr = derive_tail((1, 2), (3, 4), N=5)
    H = build_hypergraph([[t] for t in arr.tuples], 3, 5)
    simplices = enumerate_simplices(H)
    assert len(simplices) == 25
    assert edge_disjoint(simplices)


def test_full_hypergraph_q3_n5():
    full = list(itertools.product(range(5), repeat=2))
    H = build_hypergraph([full] * 3, 3, 5)
    simplices = enumerate_simplices(H)
    assert len(simplices) == 15625
    groups = group_by_labels(simplices)
    assert len(groups) == 625
    assert all(len(g) == 25 for g in groups.values())


@pytest.mark.parametrize("q, N", [(3, 3), (3, 5), (4, 2)])
@pytest.mark.parametrize("seed", range(2))
def test_scan_and_extension_agree(q, N, seed):
    H = build_hypergraph(random_label_sets(q, N, 0.6, seed), q, N)
    scan = enumerate_simplices(H, "scan")
    ext = enumerate_simplices(H, "extend")
    assert sorted(s.vertices for s in scan) == sorted(s.vertices for s in ext)
    groups = group_by_labels(scan)
    assert set(groups) == {a.tuples for a in feasible_in_product(H)}
    for fam in groups.values():
        assert len(fam) == N ** ((q - 1) * (q - 2))
        assert edge_disjoint(fam)


def test_extension_examples():
    s = simplex_extension([(0, 0)], [(0, 0)] * 3, 3, 5)
    assert s.vertices == ((0, 0),) * 3
    arr = derive_tail((2, 1), (0, 4), N=5)
    completions = [simplex_extension([x], arr, 3, 5) for x in itertools.product(range(5), repeat=2)]
    assert len({c.vertices for c in completions}) == 25
    assert all(c.labels == arr.tuples for c in completions)
    with pytest.raises(ContractError):
        simplex_extension([(0, 0)], [(1, 0), (0, 0), (0, 0)], 3, 5)


def test_extension_differs_in_two_vertices():
    arr = derive_tail((1, 1, 0), (2, 0, 1), N=3)
    sims = [simplex_extension(list(f), arr, 4, 3) for f in itertools.product(itertools.product(range(3), repeat=3), repeat=2)]
    for a, b in itertools.combinations(sims[:60], 2):
        assert sum(x != y for x, y in zip(a.vertices, b.vertices)) >= 2
