"""Combinatorial pricing oracles.

Each oracle maximizes an integer weight vector over one family, restricted to
the edges flagged in `allowed`, and returns a 0/1 tuple over the host edges
(or None when the family is empty on the allowed edges).
"""
from __future__ import annotations

import heapq

import networkx as nx

from .graph import Graph, components


def max_vtree(G: Graph, v: int, w, allowed):
    """Max-weight v-tree: greedy over the direct sum of the graphic matroid
    of G - v and the rank-2 uniform matroid on delta(v)."""
    order = sorted((e for e in range(G.m) if allowed[e]), key=lambda e: (-w[e], e))
    par = list(range(G.n))

    def find(a):
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        return a

    chosen, atv = [], 0
    for e in order:
        a, b = G.edges[e]
        if a == v or b == v:
            if atv < 2:
                atv += 1
                chosen.append(e)
            continue
        ra, rb = find(a), find(b)
        if ra != rb:
            par[ra] = rb
            chosen.append(e)
    if len(chosen) != G.n:
        return None
    return G.indicator(chosen)


def max_rainbow_vtree(G: Graph, v: int, w, allowed, parts):
    """Max-weight common base of the v-tree matroid and the partition
    matroid (one edge per part, the remaining n - |parts| edges free).

    Successive shortest augmenting paths in the exchange graph; lengths
    -w on new elements and +w on current ones, ties broken by arc count.
    """
    if not parts:
        return max_vtree(G, v, w, allowed)
    n = G.n
    E = [e for e in range(G.m) if allowed[e]]
    block = {e: -1 for e in E}
    for i, P in enumerate(parts):
        for e in P:
            if e in block:
                block[e] = i
    cap = {i: 1 for i in range(len(parts))}
    cap[-1] = n - len(parts)
    if cap[-1] < 0:
        return None
    atv = {e for e in E if v in G.edges[e]}
    I: set = set()

    for _ in range(n):
        # M1 structure: forest on G - v and the edges used at v
        forest_adj = {u: [] for u in range(n)}
        for e in I:
            if e not in atv:
                a, b = G.edges[e]
                forest_adj[a].append((b, e))
                forest_adj[b].append((a, e))
        comp = components(n, (G.edges[e] for e in I if e not in atv))
        I_at_v = [e for e in I if e in atv]
        used = {}
        for e in I:
            used[block[e]] = used.get(block[e], 0) + 1

        arcs = {e: [] for e in E}
        X1, X2 = set(), set()
        out_of_I = [e for e in E if e not in I]
        tree_paths = {}
        for x in out_of_I:
            if x in atv:
                if len(I_at_v) < 2:
                    X1.add(x)
                else:
                    for y in I_at_v:
                        arcs[y].append(x)
            else:
                a, b = G.edges[x]
                if comp[a] != comp[b]:
                    X1.add(x)
                else:
                    key = (a, b)
                    if key not in tree_paths:
                        tree_paths[key] = _forest_path(forest_adj, a, b)
                    for y in tree_paths[key]:
                        arcs[y].append(x)
            bx = block[x]
            if used.get(bx, 0) < cap[bx]:
                X2.add(x)
            else:
                for y in I:
                    if block[y] == bx:
                        arcs[x].append(y)
        if not X1:
            return None
        # Bellman-Ford on (length, hops)
        length = {e: (w[e] if e in I else -w[e]) for e in E}
        dist = {x: (length[x], 0) for x in X1}
        pred = {x: None for x in X1}
        changed = True
        rounds = 0
        while changed:
            changed = False
            rounds += 1
            if rounds > len(E) + 2:
                raise RuntimeError("negative cycle in exchange graph")
            for a in sorted(dist):
                da = dist[a]
                for b in arcs[a]:
                    cand = (da[0] + length[b], da[1] + 1)
                    if b not in dist or cand < dist[b]:
                        dist[b] = cand
                        pred[b] = a
                        changed = True
        ends = [x for x in X2 if x in dist]
        if not ends:
            return None
        t = min(ends, key=lambda x: (dist[x], x))
        path = []
        while t is not None:
            path.append(t)
            t = pred[t]
        I.symmetric_difference_update(path)
    return G.indicator(sorted(I))


def _forest_path(adj, a, b):
    """Edges on the forest path from a to b."""
    prev = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            break
        for t, e in adj[u]:
            if t not in prev:
                prev[t] = (u, e)
                stack.append(t)
    out = []
    u = b
    while prev[u] is not None:
        u, e = prev[u]
        out.append(e)
    return out


def _dijkstra(G: Graph, src: int, cost, allowed):
    dist = {src: 0}
    pe = {src: None}
    pq = [(0, src)]
    done = set()
    while pq:
        d, u = heapq.heappop(pq)
        if u in done:
            continue
        done.add(u)
        for e in G.inc[u]:
            if not allowed[e]:
                continue
            t = G.other(e, u)
            nd = d + cost[e]
            if t not in dist or nd < dist[t]:
                dist[t] = nd
                pe[t] = e
                heapq.heappush(pq, (nd, t))
    return dist, pe


def max_ojoin(G: Graph, O, w, allowed):
    """Max-weight O-join (odd-degree set exactly O) on the allowed edges."""
    O = set(O)
    cost = [-w[e] for e in range(G.m)]
    neg = {e for e in range(G.m) if allowed[e] and cost[e] < 0}
    odd = set()
    for e in neg:
        for u in G.edges[e]:
            odd ^= {u}
    T = sorted(O ^ odd)
    acost = [abs(c) for c in cost]
    if not T:
        return G.indicator(sorted(neg))
    lab = components(G.n, (G.edges[e] for e in range(G.m) if allowed[e]))
    cnt = {}
    for u in T:
        cnt[lab[u]] = cnt.get(lab[u], 0) + 1
    if any(c % 2 for c in cnt.values()):
        return None
    sp = {u: _dijkstra(G, u, acost, allowed) for u in T}
    K = nx.Graph()
    big = 1 + sum(acost[e] for e in range(G.m) if allowed[e])
    for i, a in enumerate(T):
        for b in T[i + 1:]:
            if b in sp[a][0]:
                K.add_edge(a, b, weight=big - sp[a][0][b])
    mate = nx.max_weight_matching(K, maxcardinality=True)
    if 2 * len(mate) != len(T):
        return None
    J = set(neg)
    for a, b in sorted(tuple(sorted(p)) for p in mate):
        pe = sp[a][1]
        u = b
        while pe[u] is not None:
            e = pe[u]
            J ^= {e}
            u = G.other(e, u)
    return G.indicator(sorted(J))


def max_perfect_matching(G: Graph, w, allowed):
    K = nx.Graph()
    K.add_nodes_from(range(G.n))
    best = {}
    for e in range(G.m):
        if not allowed[e]:
            continue
        key = tuple(sorted(G.edges[e]))
        if key not in best or w[e] > w[best[key]]:
            best[key] = e
    if not best:
        return None if G.n else G.zero()
    shift = 1 + max(abs(w[e]) for e in best.values())
    for (a, b), e in best.items():
        K.add_edge(a, b, weight=w[e] + shift, idx=e)
    mate = nx.max_weight_matching(K, maxcardinality=True)
    if 2 * len(mate) != G.n:
        return None
    return G.indicator(sorted(K[a][b]["idx"] for a, b in mate))


def max_two_factor_cubic(G: Graph, w, allowed):
    """Max-weight 2-factor of a cubic graph as the complement of a
    min-weight perfect matching.  Edges outside `allowed` must be in the
    matching."""
    forced = [e for e in range(G.m) if not allowed[e]]
    big = 1 + sum(abs(a) for a in w)
    neg = [(-w[e] + (big * 4 * G.m if not allowed[e] else 0)) for e in range(G.m)]
    M = max_perfect_matching(G, neg, [True] * G.m)
    if M is None:
        return None
    if any(M[e] == 0 for e in forced):
        return None
    return tuple(1 - k for k in M)
