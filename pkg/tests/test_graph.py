import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from tourglue.graph import (Combination, Graph, InputError, all_tours, combination_value,
                            contract, enumerate_cuts_bruteforce, enumerate_cuts_upto, fmt,
                            frac, is_connected_on, is_tour, merge_terms, min_cut_value,
                            verify_convex_combination)
from tourglue import generators as gen


def test_frac_and_fmt():
    assert frac("3/6") == Fraction(1, 2)
    assert frac(2) == Fraction(2)
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(0) == "0/1"
    with pytest.raises(InputError):
        frac("x/2")
    with pytest.raises(InputError):
        frac("1/0")


def test_graph_rejects_loops_and_range():
    with pytest.raises(InputError):
        Graph(2, ((0, 0),))
    with pytest.raises(InputError):
        Graph(2, ((0, 2),))


def test_delta_and_incidence():
    G = gen.k4graph()
    assert G.inc[0] == (0, 1, 2)
    assert sorted(G.delta({0, 1})) == [1, 2, 3, 4]
    assert G.other(0, 1) == 0


def test_contract_keeps_side_and_maps_edges():
    G = gen.petersen()
    c = contract(G, range(5))
    assert c.graph.n == 6 and c.pseudo == 5
    assert len(c.edge_map) == 10
    assert all(c.pseudo in c.graph.edges[j] for j in range(c.graph.m)
               if G.edges[c.edge_map[j]][1] >= 5)


def _random_graph(n, p, seed):
    g = nx.gnp_random_graph(n, p, seed=seed)
    while not nx.is_connected(g):
        seed += 1000
        g = nx.gnp_random_graph(n, p, seed=seed)
    return Graph(n, tuple(sorted(g.edges())))


def _mincut_brute(G, w):
    best = None
    for mask in range(1, (1 << (G.n - 1))):
        U = {u for u in range(G.n) if mask >> u & 1}
        v = sum(w[e] for e in G.delta(U))
        best = v if best is None else min(best, v)
    return best


@pytest.mark.parametrize("seed", range(8))
def test_min_cut_matches_bruteforce(seed):
    G = _random_graph(7, 0.5, seed)
    rng = random.Random(seed)
    w = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(G.m)]
    assert min_cut_value(G, w) == _mincut_brute(G, w)


@pytest.mark.parametrize("seed", range(10))
def test_cut_enumeration_matches_bruteforce(seed):
    G = _random_graph(8, 0.45, seed)
    for k in (1, 2, 3):
        assert enumerate_cuts_upto(G, k) == enumerate_cuts_bruteforce(G, k)
        assert enumerate_cuts_upto(G, k, proper=False) == enumerate_cuts_bruteforce(G, k, proper=False)


def test_cut_enumeration_on_cubic_graphs():
    for G in (gen.petersen(), gen.prism_graph(4), gen.prism_graph(5)):
        assert enumerate_cuts_upto(G, 4) == enumerate_cuts_bruteforce(G, 4)


def test_octahedron_min_proper_cut_is_six():
    G = gen.octahedron()
    assert enumerate_cuts_upto(G, 5) == []
    sizes = {len(G.delta(U)) for U in enumerate_cuts_bruteforce(G, 12)}
    assert min(sizes) == 6


def test_is_tour():
    G = gen.k4graph()
    ham = G.indicator([0, 3, 5, 2])  # 01 12 23 03
    assert is_tour(G, ham)
    assert not is_tour(G, G.indicator([0, 5]))  # two disjoint edges
    doubled = G.indicator([0, 1, 2], 2)  # star doubled
    assert is_tour(G, doubled)
    assert is_connected_on(G, G.indicator([0]), [0, 1])


def test_merge_terms_canonical_order():
    G = gen.k4graph()
    a, b = G.indicator([0, 3, 5, 2]), G.indicator([1, 3, 4, 2])
    c = merge_terms(G, [(Fraction(1, 4), b), (Fraction(1, 4), a), (Fraction(1, 2), b)])
    assert c.terms == ((Fraction(3, 4), b), (Fraction(1, 4), a))


def test_verify_modes():
    G = gen.k4graph()
    ham = G.indicator([0, 3, 5, 2])
    c = Combination(G, ((Fraction(1), ham),))
    assert verify_convex_combination(c, ham)
    assert not verify_convex_combination(c, G.indicator(range(6)))
    assert verify_convex_combination(c, G.indicator(range(6)), mode="dominated", tight=[0])
    bad = Combination(G, ((Fraction(1, 2), ham),))
    v = verify_convex_combination(bad, ham)
    assert not v and "sum" in v.reason
    assert all_tours(c)
    assert combination_value(c) == ham
