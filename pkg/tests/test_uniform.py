from fractions import Fraction

import networkx as nx
import pytest

from tourglue import generators as gen
from tourglue.graph import Graph, InputError, combination_value, verify_convex_combination
from tourglue.oracle import decide
from tourglue.uniform import (Uniform23Report, Uniform24Audit, check_cubic_3ec, christofides,
                              covering_two_factor, covers_small_cuts, cycles_of,
                              greedy_classes, hamiltonian_edges, reduction_factor,
                              reduce_uniform23, solve_uniform23, solve_uniform24_base,
                              split_high_degree, tours_ok, tree_tours, value_is)

F = Fraction


@pytest.mark.parametrize("make", [gen.k4half, lambda: gen.random_cyclic(12, F(1, 3), 2),
                                  lambda: gen.lowerbound(F(1, 4))])
def test_christofides(make):
    th, G, x = make()
    c = christofides(G, x)
    assert verify_convex_combination(c, tuple(F(3, 2) * q for q in x))
    assert tours_ok(c)


def test_christofides_rejects_non_subtour():
    G = gen.k4graph()
    with pytest.raises(InputError):
        christofides(G, (F(1, 2),) * G.m)


def test_cubic_3ec_checks():
    check_cubic_3ec(gen.petersen())
    with pytest.raises(InputError):
        check_cubic_3ec(gen.octahedron())
    # two K4s minus an edge each, joined by two edges: cubic, 2-edge-connected only
    G = Graph(8, ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3),
                  (4, 5), (4, 6), (4, 7), (5, 6), (6, 7), (1, 5), (3, 7)))
    with pytest.raises(InputError, match="3-edge"):
        check_cubic_3ec(G)


@pytest.mark.parametrize("G", [gen.k4graph(), gen.petersen(), gen.prism_graph(3),
                               gen.prism_graph(4)])
def test_covering_two_factor(G):
    C = covering_two_factor(G)
    assert all(sum(1 for e in G.inc[u] if e in C) == 2 for u in range(G.n))
    assert covers_small_cuts(G, C)


def test_split_high_degree():
    # a vertex of degree 7 becomes a doubled 7-cycle
    edges = tuple((0, i) for i in range(1, 8)) + tuple((i, i % 7 + 1) for i in range(1, 8))
    G = Graph(8, edges)
    sp = split_high_degree(G, 3)
    assert sp.graph.n == 14 and sp.graph.m == G.m + 14
    assert sp.vertex_of.count(0) == 7
    assert all(sp.graph.degree(u) in (3, 5) for u in range(sp.graph.n))
    F1 = sp.graph.indicator([sp.origin.index(e) for e in range(G.m)])
    assert sp.collapse(F1, G.m) == (1,) * G.m
    with pytest.raises(InputError):
        split_high_degree(G, 4)


def test_hamiltonian_hint_checks():
    G = gen.k4graph()
    assert len(hamiltonian_edges(G, [0, 1, 2, 3])) == 4
    with pytest.raises(InputError):
        hamiltonian_edges(G, [0, 1, 2])
    with pytest.raises(InputError):
        hamiltonian_edges(gen.petersen(), list(range(10)))


def test_uniform23_k4():
    G = gen.k4graph()
    rep = Uniform23Report()
    c = solve_uniform23(G, report=rep)
    assert value_is(c, F(17, 18)) and tours_ok(c)
    assert rep.hamiltonian
    ch = solve_uniform23(G, hint=[0, 1, 2, 3])
    assert value_is(ch, F(29, 34)) and tours_ok(ch)


@pytest.mark.parametrize("G", [gen.petersen(), gen.prism_graph(3), gen.prism_graph(4)])
def test_uniform23_value(G):
    rep = Uniform23Report()
    c = solve_uniform23(G, report=rep)
    assert value_is(c, F(17, 18)) and tours_ok(c)
    assert all(k <= 2 for _, T in c for k in T)
    assert len(cycles_of(G, rep.two_factor)) == len(rep.cycles)


def _random_3ec(n, k):
    out, seed = [], 0
    while len(out) < k:
        g = nx.random_regular_graph(3, n, seed=seed)
        seed += 1
        G = Graph(n, tuple(sorted(g.edges())))
        try:
            check_cubic_3ec(G)
        except InputError:
            continue
        out.append(G)
    return out


@pytest.mark.parametrize("G", _random_3ec(10, 3) + _random_3ec(12, 2))
def test_uniform23_random_cubic(G):
    c = solve_uniform23(G)
    assert value_is(c, F(17, 18)) and tours_ok(c)


def test_tree_tours_value():
    G = gen.petersen()
    C = covering_two_factor(G)
    c = tree_tours(G, C)
    want = tuple(F(1) if e in C else F(4, 5) for e in range(G.m))
    assert combination_value(c) == want and tours_ok(c)


def test_reduce_uniform23():
    G = gen.prism_graph(3)
    pts = reduce_uniform23(G)
    assert sum(l for l, _ in pts) == 1
    tot = [sum(l * p.x[e] for l, p in pts) for e in range(G.m)]
    # each edge sits in the 2-factor with weight 2/3: (2/3)(1/2) + (1/3)(1) = 2/3
    assert tot == [F(2, 3)] * G.m
    assert reduction_factor(F(1, 10), F(1, 20)) == F(3, 2) - F(1, 20) - F(1, 20)


def test_greedy_classes():
    adj = {u: {(u + 1) % 7, (u - 1) % 7} for u in range(7)}
    cl = greedy_classes(adj)
    assert sum(len(P) for P in cl) == 7
    assert all(not (adj[a] & P) for P in cl for a in P)


def test_uniform24_octahedron():
    G = gen.octahedron()
    au = Uniform24Audit()
    c = solve_uniform24_base(G, audit=au)
    assert value_is(c, F(31, 42)) and tours_ok(c)
    assert set(au.join_given_M) == {F(19, 42)}
    assert set(au.join) == {F(5, 21)}
    assert set(au.tree) == {F(1, 2)}


def test_uniform24_rejections():
    with pytest.raises(InputError):
        solve_uniform24_base(gen.k4graph())
    # two copies of K5 minus two disjoint edges, the four deficient vertices
    # of each side matched across: 4-regular with a proper 4-edge cut
    def side(o):
        es = [(o + a, o + b) for a in range(5) for b in range(a + 1, 5)]
        es.remove((o, o + 1))
        es.remove((o + 2, o + 3))
        return es
    G = Graph(10, tuple(side(0) + side(5) + [(i, i + 5) for i in range(4)]))
    with pytest.raises(InputError):
        solve_uniform24_base(G)


def test_oracle_agrees_on_uniform_values():
    # independent route: the brute-force tour polytope membership
    G = gen.k4graph()
    assert decide(G, (F(17, 18),) * G.m).feasible
    assert decide(G, (F(29, 34),) * G.m).feasible
    assert decide(gen.octahedron(), (F(31, 42),) * 12).feasible
