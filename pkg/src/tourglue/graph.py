"""Exact multigraph substrate.

A host graph is a vertex count plus an indexed edge list.  Everything that
lives on a host (tours, trees, joins, matchings) is a dense tuple of
nonnegative multiplicities indexed by host edge, and every point x, y, z is a
dense tuple of Fractions.  Keeping both dense makes per-edge bookkeeping
trivial and the tuples are hashable, which the merging code relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Multi = tuple  # tuple[int, ...] of length host.m
Vec = tuple  # tuple[Fraction, ...] of length host.m


class InputError(ValueError):
    """Malformed or out-of-contract input."""


def frac(s) -> Fraction:
    """Parse 'a/b', 'a', an int or a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {s!r}") from exc


def fmt(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Graph:
    """Host multigraph with stable edge indices.  Loops are not allowed."""
    n: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge {u}-{v} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def inc(self) -> tuple:
        """inc[u] = tuple of edge indices at u, increasing."""
        out = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            out[u].append(i)
            out[v].append(i)
        return tuple(tuple(a) for a in out)

    def other(self, e: int, u: int) -> int:
        a, b = self.edges[e]
        return b if a == u else a

    def degree(self, u: int) -> int:
        return len(self.inc[u])

    def delta(self, U) -> list:
        """Edge indices with exactly one end in U."""
        U = set(U)
        return [i for i, (a, b) in enumerate(self.edges) if (a in U) != (b in U)]

    def find_edge(self, u: int, v: int, skip=()) -> int:
        for i in self.inc[u]:
            if self.other(i, u) == v and i not in skip:
                return i
        raise KeyError((u, v))

    def zero(self) -> Multi:
        return (0,) * self.m

    def indicator(self, S: Iterable[int], mult: int = 1) -> Multi:
        out = [0] * self.m
        for e in S:
            out[e] += mult
        return tuple(out)


def deg_in(G: Graph, F: Sequence[int], u: int) -> int:
    return sum(F[e] for e in G.inc[u])


def components(n: int, pairs: Iterable[tuple]) -> list:
    """Union-find labels for vertices 0..n-1 under the given pairs."""
    par = list(range(n))

    def find(a):
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            par[ra] = rb
    return [find(a) for a in range(n)]


def is_connected_on(G: Graph, F: Sequence[int], verts=None) -> bool:
    """Is the support of F connected on `verts` (default all vertices)?
    Edges leaving `verts` are ignored."""
    vs = set(range(G.n)) if verts is None else set(verts)
    if not vs:
        return True
    lab = components(G.n, (G.edges[e] for e in range(G.m)
                           if F[e] and G.edges[e][0] in vs and G.edges[e][1] in vs))
    return len({lab[u] for u in vs}) == 1


def is_tour(G: Graph, F: Sequence[int]) -> bool:
    """Spanning, connected, all degrees even (parallel copies counted)."""
    if G.n == 1:
        return True
    for u in range(G.n):
        d = deg_in(G, F, u)
        if d == 0 or d % 2:
            return False
    return is_connected_on(G, F)


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    pseudo: int
    edge_map: tuple   # new edge index -> host edge index
    vertex_map: tuple  # new vertex id -> host vertex id (pseudo -> -1)


def contract(G: Graph, U) -> Contraction:
    """Keep U, identify V minus U into one pseudovertex (the last id)."""
    U = sorted(set(U))
    if not U or len(U) >= G.n:
        raise InputError("contract needs a nonempty proper vertex subset")
    pos = {u: i for i, u in enumerate(U)}
    p = len(U)
    edges, emap = [], []
    for i, (a, b) in enumerate(G.edges):
        ia, ib = pos.get(a, p), pos.get(b, p)
        if ia == p and ib == p:
            continue
        edges.append((ia, ib))
        emap.append(i)
    return Contraction(Graph(p + 1, tuple(edges)), p, tuple(emap), tuple(U) + (-1,))


def min_cut_value(G: Graph, w: Sequence) -> Fraction:
    """Exact global minimum cut (Stoer-Wagner); 0 if the support is disconnected."""
    n = G.n
    if n < 2:
        return Fraction(0)
    W = [[Fraction(0)] * n for _ in range(n)]
    for i, (a, b) in enumerate(G.edges):
        W[a][b] += w[i]
        W[b][a] += w[i]
    alive = list(range(n))
    best = None
    while len(alive) > 1:
        added = [alive[0]]
        rest = set(alive[1:])
        conn = {v: W[alive[0]][v] for v in rest}
        prev = alive[0]
        while rest:
            nxt = max(sorted(rest), key=lambda v: conn[v])
            rest.discard(nxt)
            if not rest:
                cut = conn[nxt]
                if best is None or cut < best:
                    best = cut
                # merge nxt into prev
                for v in alive:
                    W[prev][v] += W[nxt][v]
                    W[v][prev] = W[prev][v]
                W[prev][prev] = Fraction(0)
                alive.remove(nxt)
                break
            for v in rest:
                conn[v] += W[nxt][v]
            added.append(nxt)
            prev = nxt
    return Fraction(best)


def canonical_side(n: int, U) -> tuple:
    """Smaller side of the cut, ties to the lexicographically smaller tuple."""
    A = tuple(sorted(U))
    B = tuple(sorted(set(range(n)) - set(U)))
    if len(A) != len(B):
        return A if len(A) < len(B) else B
    return min(A, B)


def bridges(G: Graph, removed=frozenset()) -> list:
    """Bridges of G minus the edge indices in `removed` (iterative lowlink)."""
    n = G.n
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(G.inc[root]))]
        while stack:
            u, pe, it = stack[-1]
            for e in it:
                if e == pe or e in removed:
                    continue
                w = G.other(e, u)
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(G.inc[w])))
                    break
                low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        out.append(pe)
    return out


def enumerate_cuts_upto(G: Graph, k: int, proper: bool = True) -> list:
    """All cuts U with |delta(U)| <= k, one canonical side each.

    If delta(U) = D then every e in D is a bridge of G - (D - e), so it is
    enough to remove k - 1 edges and look for bridges with a larger index.
    For each such D, every union of components of G - D whose coboundary is
    exactly D is a cut.  proper=True keeps cuts with both sides of size >= 2.
    """
    n, m = G.n, G.m
    found = set()
    for size in range(0, k):
        for Dp in combinations(range(m), size):
            rem = frozenset(Dp)
            lo = Dp[-1] if Dp else -1
            for b in bridges(G, rem):
                if b <= lo:
                    continue
                Ds = rem | {b}
                lab = components(n, (G.edges[e] for e in range(m) if e not in Ds))
                roots = sorted(set(lab))
                members = {r: [u for u in range(n) if lab[u] == r] for r in roots}
                r0 = lab[0]
                others = [r for r in roots if r != r0]
                for mask in range(1, 1 << len(others)):
                    U = [u for j, r in enumerate(others) if mask >> j & 1 for u in members[r]]
                    if proper and (len(U) < 2 or n - len(U) < 2):
                        continue
                    if set(G.delta(U)) == Ds:
                        found.add(canonical_side(n, U))
    return sorted(found, key=lambda s: (len(s), s))


def enumerate_cuts_bruteforce(G: Graph, k: int, proper: bool = True) -> list:
    """Reference version over all vertex subsets (small n only)."""
    found = set()
    for mask in range(1, (1 << G.n) - 1):
        U = [u for u in range(G.n) if mask >> u & 1]
        if proper and (len(U) < 2 or G.n - len(U) < 2):
            continue
        if len(G.delta(U)) <= k:
            found.add(canonical_side(G.n, U))
    return sorted(found, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class Combination:
    """Convex combination of multigraphs of one host."""
    host: Graph
    terms: tuple = field(default=())  # ((Fraction, Multi), ...)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def combination_value(c: Combination) -> Vec:
    out = [Fraction(0)] * c.host.m
    for lam, F in c.terms:
        for e, k in enumerate(F):
            if k:
                out[e] += lam * k
    return tuple(out)


def edge_list(host: Graph, F) -> tuple:
    """(u, v, mult) for the edges of F in host edge order."""
    return tuple((*host.edges[e], k) for e, k in enumerate(F) if k)


def merge_terms(host: Graph, terms: Iterable[tuple]) -> Combination:
    """Sum multipliers of identical multigraphs; canonical order
    (descending multiplier, then lexicographic edge list)."""
    acc: dict = {}
    for lam, F in terms:
        if lam:
            F = tuple(F)
            acc[F] = acc.get(F, Fraction(0)) + lam
    items = sorted(((lam, F) for F, lam in acc.items()),
                   key=lambda t: (-t[0], edge_list(host, t[1]), t[1]))
    return Combination(host, tuple(items))


@dataclass
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_convex_combination(c: Combination, target: Sequence, mode: str = "equal",
                              tight=None) -> Verdict:
    """Check multipliers and the value against target.

    mode 'equal' needs equality everywhere; 'dominated' needs value <= target
    with equality on the edge indices listed in `tight`.
    """
    total = Fraction(0)
    for j, (lam, F) in enumerate(c.terms):
        if lam <= 0:
            return Verdict(False, f"multiplier {j} is {fmt(lam)}, not positive")
        if len(F) != c.host.m or any(k < 0 for k in F):
            return Verdict(False, f"term {j} is not a multigraph of the host")
        total += lam
    if total != 1:
        return Verdict(False, f"multipliers sum to {fmt(total)}")
    val = combination_value(c)
    tight = set(range(c.host.m)) if tight is None else set(tight)
    for e in range(c.host.m):
        t = Fraction(target[e])
        if mode == "equal" or e in tight:
            if val[e] != t:
                return Verdict(False, f"edge {e} {c.host.edges[e]}: value {fmt(val[e])} != {fmt(t)}")
        elif val[e] > t:
            return Verdict(False, f"edge {e} {c.host.edges[e]}: value {fmt(val[e])} > {fmt(t)}")
    return Verdict(True)


def all_tours(c: Combination) -> Verdict:
    for j, (_, F) in enumerate(c.terms):
        if not is_tour(c.host, F):
            return Verdict(False, f"term {j} is not a tour")
    return Verdict(True)
