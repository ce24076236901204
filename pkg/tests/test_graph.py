import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socialfabric._validation import DomainError, ValidationError
from socialfabric.degree_model import DegreePmf
from socialfabric.graph import (
    DegreeSequence,
    Graph,
    add_triadic_links,
    binomial_population,
    components,
    connectivity_statistic,
    fix_parity,
    read_edgelist,
    remove_agent,
    sample_bipartite,
    sample_configuration,
    sample_degrees,
    write_edgelist,
)
from socialfabric.rng import stream

from conftest import binomial_probs


def test_parity_repair_three_ones(rng):
    seq = sample_degrees([DegreePmf.point_mass(1)] * 3, rng)
    assert sorted(seq.degrees) == [0, 1, 1]
    assert seq.total == 2


def test_all_zero_degrees(rng):
    seq = sample_degrees([DegreePmf.point_mass(0)] * 5, rng)
    assert seq.total == 0
    assert sample_configuration(seq, rng).m == 0


def test_fix_parity_reduces_a_positive_degree():
    seq = fix_parity(np.array([3, 0, 0]), stream(1))
    assert list(seq.degrees) == [2, 0, 0]
    assert list(fix_parity(np.array([2, 2]), stream(1)).degrees) == [2, 2]


def test_binomial_sample_mean():
    n = 100_000
    seq = sample_degrees([DegreePmf(binomial_probs(6, 0.3))], stream(3), labels=np.zeros(n, dtype=int))
    se = np.sqrt(6 * 0.3 * 0.7 / n)
    assert abs(seq.degrees.mean() - 1.8) < 3 * se + 1.0 / n


def test_single_edge(rng):
    g = sample_configuration(DegreeSequence([1, 1]), rng)
    assert g.edge_set() == [(0, 1)]


def test_two_regular_is_union_of_cycles(rng):
    g = sample_configuration(DegreeSequence([2] * 50), rng)
    assert np.all(g.degrees() == 2)


def test_odd_total_rejected(rng):
    with pytest.raises(ValidationError):
        sample_configuration(DegreeSequence([1, 1, 1]), rng)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=60), st.integers(0, 2**32))
def test_configuration_preserves_degrees(degrees, seed):
    seq = fix_parity(np.array(degrees), stream(seed))
    g = sample_configuration(seq, stream(seed, 1))
    assert np.array_equal(g.degrees(), seq.degrees)


def test_bipartite_examples(rng):
    g = sample_bipartite(DegreeSequence([1]), DegreeSequence([1]), rng)
    assert g.edge_set() == [(0, 1)]
    g = sample_bipartite(DegreeSequence([2, 0]), DegreeSequence([1, 1]), rng)
    assert g.edge_set() == [(0, 2), (0, 3)]
    g = sample_bipartite(DegreeSequence([3, 2]), DegreeSequence([1, 2]), rng)
    assert g.m == 3
    deg = g.degrees()
    assert np.array_equal(deg[2:], [1, 2])
    assert deg[:2].sum() == 3 and np.all(deg[:2] <= [3, 2])
    # every edge crosses sides
    assert np.all(g.edges[:, 0] < 2) and np.all(g.edges[:, 1] >= 2)


def test_components_examples():
    c = components(Graph(4, [(0, 1), (1, 2)]))
    assert sorted(c.sizes) == [1, 3] and c.largest_size == 3
    c = components(Graph.empty(5))
    assert list(c.sizes) == [1] * 5
    c = components(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert list(c.sizes) == [4]


@settings(max_examples=30)
@given(st.integers(2, 40), st.lists(st.tuples(st.integers(0, 39), st.integers(0, 39)), max_size=60))
def test_components_match_bfs(n, raw):
    edges = [(a % n, b % n) for a, b in raw]
    labels = components(Graph(n, np.array(edges, dtype=int).reshape(-1, 2))).labels
    # independent breadth-first search
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, comp = {}, 0
    for s in range(n):
        if s in seen:
            continue
        stack = [s]
        seen[s] = comp
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen[v] = comp
                    stack.append(v)
        comp += 1
    for a in range(n):
        for b in range(n):
            assert (labels[a] == labels[b]) == (seen[a] == seen[b])


def test_connectivity_statistic_examples():
    assert connectivity_statistic(DegreeSequence([2, 2, 2])) == 0
    assert connectivity_statistic(DegreeSequence([1, 1, 3, 3])) == 1.0
    assert connectivity_statistic(DegreeSequence([1, 1])) == -1


def test_remove_agent_examples():
    assert remove_agent(Graph(2, [(0, 1)]), 0).m == 0
    tri = Graph(3, [(0, 1), (1, 2), (2, 0)])
    assert remove_agent(tri, 0).edge_set() == [(1, 2)]
    g = Graph(4, [(0, 1), (1, 2)])
    assert remove_agent(g, 3).edge_set() == g.edge_set()
    with pytest.raises(DomainError):
        remove_agent(g, 4)


def test_triadic_closure(rng):
    path = Graph(4, [(0, 1), (1, 2)])
    closed = add_triadic_links(path, 1, rng)
    assert closed.edge_set() == [(0, 1), (0, 2), (1, 2)]
    assert components(closed).same_partition(components(path))
    assert add_triadic_links(path, 0, rng) is path
    empty = Graph.empty(5)
    assert add_triadic_links(empty, 5, rng) is empty


def test_edgelist_roundtrip(tmp_path, rng):
    _, g = binomial_population(200, 6, 0.3, rng)
    write_edgelist(g, tmp_path / "g.txt")
    back = read_edgelist(tmp_path / "g.txt")
    assert back.n == g.n and np.array_equal(back.edges, g.edges)


def test_giant_component_shows_up_above_threshold():
    _, g = binomial_population(5000, 6, 0.35, stream(9))
    assert components(g).has_giant()
    _, g = binomial_population(5000, 6, 0.12, stream(9))
    assert not components(g).has_giant()


def test_same_seed_same_graph():
    a = binomial_population(1000, 6, 0.3, stream(5, 1))[1]
    b = binomial_population(1000, 6, 0.3, stream(5, 1))[1]
    assert np.array_equal(a.edges, b.edges)
