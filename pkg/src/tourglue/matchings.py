"""Partition of the 1-edges of a cubic base-case point into five induced
matchings that interact well with small cuts.

The recursion splits first over 2-edge cuts, then over non-triangular
3-edge cuts, and colors the contraction graph (one node per 1-edge, adjacent
when a fractional edge joins them) in the remaining 3-edge-connected pieces.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cyclic import CyclicPoint, critical_cuts
from .graph import Graph, InputError, Verdict, enumerate_cuts_upto

NPARTS = 5


@dataclass(frozen=True)
class MatchingPartition:
    parts: tuple  # 5 frozensets of host edge indices
    v: int
    ev_index: int  # index of the part holding e_v


# ---------------------------------------------------------------- coloring

def contraction_graph(G: Graph, W) -> dict:
    """Adjacency between 1-edges that a non-1-edge joins."""
    owner = {}
    for e in W:
        for u in G.edges[e]:
            owner[u] = e
    adj = {e: set() for e in W}
    for i, (a, b) in enumerate(G.edges):
        if i in W:
            continue
        ea, eb = owner[a], owner[b]
        if ea != eb:
            adj[ea].add(eb)
            adj[eb].add(ea)
    return adj


def dsatur(adj: dict) -> dict:
    col = {}
    nodes = sorted(adj)
    while len(col) < len(nodes):
        def key(u):
            sat = len({col[t] for t in adj[u] if t in col})
            return (-sat, -len(adj[u]), u)
        u = min((u for u in nodes if u not in col), key=key)
        used = {col[t] for t in adj[u] if t in col}
        col[u] = next(c for c in range(len(nodes) + 1) if c not in used)
    return col


def _kempe_swap(adj, col, start, a, b):
    chain, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for t in adj[u]:
            if t not in chain and col[t] in (a, b):
                chain.add(t)
                stack.append(t)
    for u in chain:
        col[u] = b if col[u] == a else a


def kempe_reduce(adj: dict, col: dict, k: int) -> bool:
    """Try to remove colors >= k by Kempe swaps.  Mutates col; True on success."""
    for u in sorted(adj):
        if col[u] < k:
            continue
        used = {col[t] for t in adj[u]}
        free = [c for c in range(k) if c not in used]
        if free:
            col[u] = free[0]
            continue
        done = False
        for a, b in combinations(range(k), 2):
            for t in sorted(adj[u]):
                if col[t] != a:
                    continue
                saved = dict(col)
                _kempe_swap(adj, col, t, a, b)
                if a not in {col[s] for s in adj[u]}:
                    col[u] = a
                    done = True
                    break
                col.clear()
                col.update(saved)
            if done:
                break
        if not done:
            return False
    return True


def backtrack_color(adj: dict, k: int):
    nodes = sorted(adj, key=lambda u: (-len(adj[u]), u))
    col = {}

    def go(i):
        if i == len(nodes):
            return True
        u = nodes[i]
        used = {col[t] for t in adj[u] if t in col}
        for c in range(k):
            if c not in used:
                col[u] = c
                if go(i + 1):
                    return True
                del col[u]
        return False

    return dict(col) if go(0) else None


def is_complete(adj: dict) -> bool:
    return all(len(adj[u]) == len(adj) - 1 for u in adj)


def brooks_coloring(adj: dict) -> dict:
    """At most max(4, max-degree) colors on these graphs; 5 for K5."""
    if is_complete(adj):
        return {u: i for i, u in enumerate(sorted(adj))}
    k = 4
    col = dsatur(adj)
    if max(col.values(), default=0) < k:
        return col
    if kempe_reduce(adj, col, k):
        return col
    col = backtrack_color(adj, k)
    if col is None:
        raise RuntimeError("no coloring within the Brooks bound")
    return col


# ---------------------------------------------------------------- recursion

def _neighbours(G: Graph, W, v):
    """(e_v, [e_w1, e_w2]) in G."""
    ev = next(e for e in G.inc[v] if e in W)
    ws = [G.other(e, v) for e in G.inc[v] if e not in W]
    ews = [next(e for e in G.inc[w] if e in W) for w in ws]
    return ev, ews


def _base(G: Graph, W, v) -> dict:
    adj = contraction_graph(G, W)
    col = brooks_coloring(adj)
    ev, ews = _neighbours(G, W, v)
    if len(ews) == 2 and ews[0] != ews[1] and col[ews[0]] == col[ews[1]]:
        free = next(c for c in range(NPARTS) if c not in set(col.values()))
        col[ews[0]] = free
    return col


def _induced(G: Graph, vs, extra):
    """Subgraph on vertex list vs plus extra edges (pairs of original ids).
    Returns (graph, edge origin list, vertex origin list)."""
    vid = {u: i for i, u in enumerate(vs)}
    edges, origin = [], []
    for i, (a, b) in enumerate(G.edges):
        if a in vid and b in vid:
            edges.append((vid[a], vid[b]))
            origin.append(i)
    for a, b in extra:
        edges.append((vid[a], vid[b]))
        origin.append(None)
    return Graph(len(vs), tuple(edges)), origin


def _remap(col_sub, perm):
    return {e: perm[c] for e, c in col_sub.items()}


def _perm_from(pairs):
    """Bijection of range(NPARTS) extending the partial map pairs (a -> b)."""
    perm = dict(pairs)
    free_dst = [c for c in range(NPARTS) if c not in perm.values()]
    for c in range(NPARTS):
        if c not in perm:
            perm[c] = free_dst.pop(0)
    return perm


def color_ones(G: Graph, W, v: int) -> dict:
    """Color (0..4) of every 1-edge of G."""
    W = frozenset(W)
    cuts2 = enumerate_cuts_upto(G, 2)
    if cuts2:
        U = set(cuts2[0])
        if v not in U:
            U = set(range(G.n)) - U
        D = G.delta(U)
        if any(e not in W for e in D):
            raise InputError("2-edge cut containing a fractional edge")
        (e1, e2) = D
        s = [a if a in U else b for a, b in (G.edges[e] for e in D)]
        t = [b if a in U else a for a, b in (G.edges[e] for e in D)]
        c1 = _split_side(G, W, sorted(U), [(s[0], s[1])], v)
        rest = sorted(set(range(G.n)) - U)
        c2 = _split_side(G, W, rest, [(t[0], t[1])], t[0])
        a = c1.pop(None)
        b = c2.pop(None)
        perm = _perm_from([(b, a)])
        col = dict(c1)
        col.update(_remap(c2, perm))
        col[e1] = col[e2] = a
        return col
    bad = [U for U in enumerate_cuts_upto(G, 3)
           if len(G.delta(U)) == 3 and 3 < len(U) < G.n - 3]
    if bad:
        U = set(bad[0])
        if v not in U:
            U = set(range(G.n)) - U
        D = G.delta(U)
        if any(e not in W for e in D):
            raise InputError("non-triangular 3-edge cut with a fractional edge")
        s = [a if a in U else b for a, b in (G.edges[e] for e in D)]
        t = [b if a in U else a for a, b in (G.edges[e] for e in D)]
        tri_t = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
        tri_s = [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])]
        # G2 keeps U (and v) plus the far endpoints closed by a triangle
        c2 = _split_side(G, W, sorted(U | set(t)), tri_t, v, extra_w=False)
        c1 = _split_side(G, W, sorted((set(range(G.n)) - U) | set(s)), tri_s, t[0],
                         extra_w=False)
        perm = _perm_from([(c1[e], c2[e]) for e in D])
        col = dict(c2)
        for e, c in _remap(c1, perm).items():
            if e in col and col[e] != c:
                raise RuntimeError("cut edge colors disagree after alignment")
            col[e] = c
        return col
    return _base(G, W, v)


def _split_side(G, W, vs, extra, v, extra_w=True):
    """Color a side graph; returns colors keyed by original edge index, with
    the (single) added 1-edge keyed by None when extra_w."""
    sub, origin = _induced(G, vs, extra)
    vid = {u: i for i, u in enumerate(vs)}
    subW = set()
    for i, o in enumerate(origin):
        if (o is None and extra_w) or (o is not None and o in W):
            subW.add(i)
    col = color_ones(sub, subW, vid[v])
    out = {}
    for i, c in col.items():
        out[origin[i]] = c
    return out


def partition_induced_matchings(p: CyclicPoint, v: int, check_critical: bool = True) -> MatchingPartition:
    if not p.is_cubic():
        raise InputError("partition needs a cubic point")
    if check_critical and critical_cuts(p):
        raise InputError("point has a critical cut")
    col = color_ones(p.host, p.W, v)
    parts = [set() for _ in range(NPARTS)]
    for e, c in col.items():
        parts[c].add(e)
    ev = p.e(v)
    return MatchingPartition(tuple(frozenset(P) for P in parts), v, col[ev])


def is_induced_matching(G: Graph, M) -> bool:
    ends = set()
    for e in M:
        a, b = G.edges[e]
        if a in ends or b in ends:
            return False
        ends.update((a, b))
    for i, (a, b) in enumerate(G.edges):
        if i not in M and a in ends and b in ends:
            return False
    return True


def verify_partition(p: CyclicPoint, v: int, mp: MatchingPartition, strict_i: bool = True) -> Verdict:
    """Check partition, induced-ness and conditions (i)-(iii).  With
    strict_i=False a violation of (i) is reported only if it can be avoided
    (i.e. it is not forced by (iii))."""
    G = p.host
    seen = set()
    for P in mp.parts:
        if seen & P:
            return Verdict(False, "parts overlap")
        seen |= P
    if seen != set(p.W):
        return Verdict(False, "parts do not cover the 1-edges exactly")
    if len(mp.parts) != NPARTS:
        return Verdict(False, "partition does not have five parts")
    for i, P in enumerate(mp.parts):
        if not is_induced_matching(G, P):
            return Verdict(False, f"part {i} is not an induced matching")
    if p.e(v) not in mp.parts[mp.ev_index]:
        return Verdict(False, "ev_index does not hold e_v")
    trio = [p.e(v), p.e(G.other(p.f(v), v)), p.e(G.other(p.g(v), v))]
    cuts = enumerate_cuts_upto(G, 3, proper=False)
    forced = forced_pair(p, v)
    for i, P in enumerate(mp.parts):
        k = len(set(trio) & P)
        if k > 1 and (strict_i or not forced):
            return Verdict(False, f"(i) fails for part {i}")
    for U in cuts:
        D = G.delta(U)
        for i, P in enumerate(mp.parts):
            k = len(set(D) & P)
            if len(D) == 3 and k > 1:
                return Verdict(False, f"(ii) fails at cut {U} part {i}")
            if len(D) == 2 and k % 2:
                return Verdict(False, f"(iii) fails at cut {U} part {i}")
    return Verdict(True)


def forced_pair(p: CyclicPoint, v: int) -> bool:
    """True when e_w1 and e_w2 form a 2-edge cut, so (iii) forces them into
    one part and (i) cannot hold."""
    G = p.host
    a = p.e(G.other(p.f(v), v))
    b = p.e(G.other(p.g(v), v))
    if a == b:
        return False
    for U in enumerate_cuts_upto(G, 2):
        if set(G.delta(U)) == {a, b}:
            return True
    return False
