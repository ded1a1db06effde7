"""Uniform points: the Christofides baseline, the 2/3-uniform pipeline and
the 2/4-uniform base case.

All random choices in the underlying arguments are expanded into one exact
weighted combination, so every output can be checked edge by edge.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cyclic import validate_cyclic
from .decomp import Family, decompose, ojoin_with_degree_cap
from .graph import (Combination, Graph, InputError, combination_value, components,
                    deg_in, enumerate_cuts_upto, is_tour, merge_terms, min_cut_value)
from .gluer import SolveReport, solve_cyclic
from .matchings import contraction_graph
from .parity import odd_vertices


# ---------------------------------------------------------------- Christofides

def check_subtour(G: Graph, x):
    for u in range(G.n):
        if sum(x[e] for e in G.inc[u]) != 2:
            raise InputError(f"x(delta({u})) != 2")
    if any(not 0 <= q <= 1 for q in x):
        raise InputError("x outside [0, 1]")
    if min_cut_value(G, x) < 2:
        raise InputError("x has a cut of value below 2")


def christofides(G: Graph, x, root: int = 0) -> Combination:
    """Tours summing to (3/2)x: v-trees of x, each completed by the O_T-joins of x/2."""
    x = tuple(Fraction(q) for q in x)
    check_subtour(G, x)
    half = tuple(q / 2 for q in x)
    trees = decompose(G, x, Family.rainbow(root))
    cache, terms = {}, []
    for lam, T in trees:
        O = odd_vertices(G, T)
        if O not in cache:
            cache[O] = ojoin_with_degree_cap(G, half, O)
        for psi, J in cache[O]:
            terms.append((lam * psi, tuple(a + b for a, b in zip(T, J))))
    return merge_terms(G, terms)


# ---------------------------------------------------------------- cubic helpers

def is_cubic(G: Graph) -> bool:
    return all(G.degree(u) == 3 for u in range(G.n))


def check_cubic_3ec(G: Graph):
    if not is_cubic(G):
        raise InputError("graph is not cubic")
    if min_cut_value(G, (Fraction(1),) * G.m) < 3:
        raise InputError("graph is not 3-edge-connected")


def _perfect_matchings(G: Graph):
    """All perfect matchings (edge index sets), lexicographic by construction."""
    used = [False] * G.n
    chosen = []

    def go():
        u = next((a for a in range(G.n) if not used[a]), None)
        if u is None:
            yield frozenset(chosen)
            return
        used[u] = True
        for e in G.inc[u]:
            w = G.other(e, u)
            if not used[w]:
                used[w] = True
                chosen.append(e)
                yield from go()
                chosen.pop()
                used[w] = False
        used[u] = False

    yield from go()


def covers_small_cuts(G: Graph, C) -> bool:
    C = set(C)
    for U in enumerate_cuts_upto(G, 4, proper=False):
        D = G.delta(U)
        if len(D) in (3, 4) and not C & set(D):
            return False
    return True


def covering_two_factor(G: Graph, limit: int = 200000) -> frozenset:
    """A 2-factor meeting every 3- and 4-edge cut, by search over
    complements of perfect matchings."""
    if not is_cubic(G):
        raise InputError("covering 2-factor needs a cubic graph")
    cuts = [set(G.delta(U)) for U in enumerate_cuts_upto(G, 4, proper=False)]
    cuts = [D for D in cuts if len(D) in (3, 4)]
    for k, M in enumerate(_perfect_matchings(G)):
        if k >= limit:
            break
        C = frozenset(range(G.m)) - M
        if all(C & D for D in cuts):
            return C
    raise InputError("no covering 2-factor found within the search limit")


def cycles_of(G: Graph, C) -> list:
    """Vertex sets of the cycles of a 2-factor, sorted."""
    lab = components(G.n, (G.edges[e] for e in C))
    groups = {}
    for u in range(G.n):
        groups.setdefault(lab[u], []).append(u)
    return sorted(groups.values())


def hamiltonian_edges(G: Graph, order) -> frozenset:
    order = list(order)
    if sorted(order) != list(range(G.n)):
        raise InputError("hint is not a permutation of the vertices")
    out = set()
    for a, b in zip(order, order[1:] + order[:1]):
        e = next((e for e in G.inc[a] if G.other(e, a) == b and e not in out), None)
        if e is None:
            raise InputError(f"hint uses a non-edge {a}-{b}")
        out.add(e)
    return frozenset(out)


# ---------------------------------------------------------------- split_high_degree

@dataclass
class Split:
    graph: Graph
    origin: tuple  # new edge -> original edge index, or None for gadget edges
    vertex_of: tuple  # new vertex -> original vertex

    def collapse(self, F, m: int) -> tuple:
        out = [0] * m
        for j, k in enumerate(F):
            if k and self.origin[j] is not None:
                out[self.origin[j]] += k
        return tuple(out)


def split_high_degree(G: Graph, d: int) -> Split:
    """Replace each vertex of degree k > d by a doubled k-cycle whose
    vertices take one original edge each."""
    for u in range(G.n):
        if G.degree(u) < d:
            raise InputError(f"vertex {u} has degree below {d}")
    slot = {}  # (vertex, edge) -> new vertex
    vertex_of, edges, origin = [], [], []
    for u in range(G.n):
        inc = G.inc[u]
        if len(inc) <= d:
            nu = len(vertex_of)
            vertex_of.append(u)
            for e in inc:
                slot[(u, e)] = nu
            continue
        first = len(vertex_of)
        for j, e in enumerate(inc):
            vertex_of.append(u)
            slot[(u, e)] = first + j
        k = len(inc)
        for j in range(k):
            a, b = first + j, first + (j + 1) % k
            edges += [(a, b), (a, b)]
            origin += [None, None]
    for e, (a, b) in enumerate(G.edges):
        edges.append((slot[(a, e)], slot[(b, e)]))
        origin.append(e)
    return Split(Graph(len(vertex_of), tuple(edges)), tuple(origin), tuple(vertex_of))


# ---------------------------------------------------------------- 2/3-uniform

@dataclass
class Uniform23Report:
    two_factor: frozenset = frozenset()
    cycles: list = field(default_factory=list)
    hamiltonian: bool = False
    cyclic: SolveReport | None = None


def cyclic_point_off(G: Graph, C):
    """The 1/2-cyclic point with 1/2 on the 2-factor C and 1 elsewhere."""
    half = Fraction(1, 2)
    x = tuple(half if e in C else Fraction(1) for e in range(G.m))
    return validate_cyclic(half, G, x)


def tree_tours(G: Graph, C) -> Combination:
    """Tours C + 2T for r-trees T of (2/5) on G/C, with chords of C doubled
    in 2/5 of the mass.  Value 1 on C and 4/5 elsewhere."""
    cyc = cycles_of(G, C)
    where = {u: i for i, vs in enumerate(cyc) for u in vs}
    cross, chords = [], []
    for e, (a, b) in enumerate(G.edges):
        if e in C:
            continue
        (chords if where[a] == where[b] else cross).append(e)
    base = G.indicator(C)
    two5, three5 = Fraction(2, 5), Fraction(3, 5)
    dbl = G.indicator(chords, 2)
    with_chords = tuple(a + b for a, b in zip(base, dbl))
    if len(cyc) == 1:
        return merge_terms(G, [(three5, base), (two5, with_chords)] if chords else [(Fraction(1), base)])
    Q = Graph(len(cyc), tuple((where[G.edges[e][0]], where[G.edges[e][1]]) for e in cross))
    sp = split_high_degree(Q, 5)
    H = sp.graph
    target = tuple(two5 for _ in range(H.m))
    trees = decompose(H, target, Family.rainbow(0))
    terms = []
    for lam, T in trees:
        TQ = sp.collapse(T, Q.m)
        F = list(base)
        for j, k in enumerate(TQ):
            F[cross[j]] += 2 * k
        F = tuple(F)
        if chords:
            terms.append((lam * three5, F))
            terms.append((lam * two5, tuple(a + b for a, b in zip(F, dbl))))
        else:
            terms.append((lam, F))
    return merge_terms(G, terms)


def solve_uniform23(G: Graph, hint=None, report: Uniform23Report | None = None) -> Combination:
    """Tours with value 17/18 per edge, or 29/34 with a Hamilton cycle hint."""
    check_cubic_3ec(G)
    if report is None:
        report = Uniform23Report()
    if hint is not None:
        C = hamiltonian_edges(G, hint)
    else:
        C = covering_two_factor(G)
    report.two_factor = C
    report.cycles = cycles_of(G, C)
    report.hamiltonian = len(report.cycles) == 1
    report.cyclic = SolveReport([])
    y2 = solve_cyclic(cyclic_point_off(G, C), report.cyclic)
    if hint is not None:
        a, b = Fraction(7, 17), Fraction(10, 17)
        terms = [(a, G.indicator(C))] + [(b * lam, F) for lam, F in y2]
    else:
        y1 = tree_tours(G, C)
        a, b = Fraction(7, 9), Fraction(2, 9)
        terms = [(a * lam, F) for lam, F in y1] + [(b * lam, F) for lam, F in y2]
    return merge_terms(G, terms)


def reduce_uniform23(G: Graph) -> list:
    """2-factor decomposition of (2/3) on G; one 1/2-cyclic point per 2-factor."""
    check_cubic_3ec(G)
    c = decompose(G, (Fraction(2, 3),) * G.m, Family.two_factor())
    out = []
    for lam, F in c:
        C = frozenset(e for e in range(G.m) if F[e])
        out.append((lam, cyclic_point_off(G, C)))
    return out


def reduction_factor(eps, delta) -> Fraction:
    """Per-edge multiple of (2/3) obtained from (eps, delta) on each cyclic point."""
    eps, delta = Fraction(eps), Fraction(delta)
    lhs = Fraction(1, 3) * (Fraction(3, 2) - eps) + Fraction(2, 3) * (Fraction(3, 4) - delta)
    rhs = (Fraction(3, 2) - eps / 2 - delta) * Fraction(2, 3)
    assert lhs == rhs
    return Fraction(3, 2) - eps / 2 - delta


# ---------------------------------------------------------------- 2/4-uniform

NCLASSES = 7


@dataclass
class Uniform24Audit:
    join_given_M: tuple = ()  # per edge: Pr[e in J | e in M]
    join: tuple = ()  # per edge: Pr[e in J]
    tree: tuple = ()  # per edge: Pr[e in T]
    matchings: int = 0


def check_uniform24(G: Graph):
    if any(G.degree(u) != 4 for u in range(G.n)):
        raise InputError("graph is not 4-regular")
    if G.n % 2:
        raise InputError("odd number of vertices")
    if min_cut_value(G, (Fraction(1),) * G.m) < 4:
        raise InputError("graph is not 4-edge-connected")
    for U in enumerate_cuts_upto(G, 4):
        raise InputError(f"proper 4-edge cut {U}")


def greedy_classes(adj: dict, k: int = NCLASSES) -> list:
    """Greedy coloring in index order; degree <= k - 1 keeps it within k classes."""
    col = {}
    for u in sorted(adj):
        used = {col[t] for t in adj[u] if t in col}
        col[u] = next(c for c in range(k) if c not in used)
    out = [set() for _ in range(k)]
    for u, c in col.items():
        out[c].add(u)
    return [frozenset(P) for P in out]


def solve_uniform24_base(G: Graph, root: int = 0, audit: Uniform24Audit | None = None) -> Combination:
    """Tours with value 31/42 per edge on a 4-regular graph without proper 4-edge cuts."""
    check_uniform24(G)
    quarter, third, sixth = Fraction(1, 4), Fraction(1, 3), Fraction(1, 6)
    mats = decompose(G, (quarter,) * G.m, Family.matching())
    terms = []
    inJ_M = [Fraction(0)] * G.m
    inJ = [Fraction(0)] * G.m
    inT = [Fraction(0)] * G.m
    for mu, Mv in mats:
        M = frozenset(e for e in range(G.m) if Mv[e])
        classes = greedy_classes(contraction_graph(G, M))
        z = tuple(Fraction(1) if e in M else third for e in range(G.m))
        for Mi in classes:
            w = mu / NCLASSES
            parts = []
            for e in sorted(Mi):
                for s in G.edges[e]:
                    parts.append(tuple(h for h in G.inc[s] if h != e))
            trees = decompose(G, z, Family.rainbow(root, parts))
            p = tuple(Fraction(1, 2) if e in M and e not in Mi else sixth for e in range(G.m))
            cache = {}
            for lam, T in trees:
                O = odd_vertices(G, T)
                if O not in cache:
                    cache[O] = ojoin_with_degree_cap(G, p, O)
                for psi, J in cache[O]:
                    wt = w * lam * psi
                    terms.append((wt, tuple(a + b for a, b in zip(T, J))))
                    for e in range(G.m):
                        if J[e]:
                            inJ[e] += wt
                            if e in M:
                                inJ_M[e] += wt
                        if T[e]:
                            inT[e] += wt
    if audit is not None:
        audit.join_given_M = tuple(q / quarter for q in inJ_M)
        audit.join = tuple(inJ)
        audit.tree = tuple(inT)
        audit.matchings = len(mats)
    return merge_terms(G, terms)


def uniform_target(G: Graph, value) -> tuple:
    return (Fraction(value),) * G.m


def value_is(c: Combination, value) -> bool:
    return combination_value(c) == uniform_target(c.host, value)


def tours_ok(c: Combination) -> bool:
    return all(is_tour(c.host, F) for _, F in c)
