"""Brute-force ground truth for small instances.

Every tour with multiplicities at most 2 on the support of a vector is an
even subgraph (the edges used once) plus a set of doubled edges, so it is
enough to walk the cycle space of the support and, for each even subgraph,
every subset of the remaining edges.  Membership of the vector in the hull
is then decided exactly: a feasible answer carries an exact combination, an
infeasible one an exact Farkas vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .graph import Combination, Graph, InputError, merge_terms
from .lp import MembershipError, exact_phase1, exact_solve

MAX_N = 10


@dataclass
class OracleResult:
    feasible: bool
    tours: int
    combination: Combination | None = None
    farkas: tuple | None = None  # (y over edges, y0): y.a + y0 <= 0 for all tours, y.b + y0 > 0
    method: str = ""


def _even_subgraphs(n, edges):
    """Bitmasks (over the given edge list) of all even subgraphs."""
    m = len(edges)
    par = list(range(n))

    def find(a):
        while par[a] != a:
            par[a] = par[par[a]]
            a = par[a]
        return a

    tree, rest = [], []
    for j, (a, b) in enumerate(edges):
        ra, rb = find(a), find(b)
        if ra != rb:
            par[ra] = rb
            tree.append(j)
        else:
            rest.append(j)
    adj = [[] for _ in range(n)]
    for j in tree:
        a, b = edges[j]
        adj[a].append((b, j))
        adj[b].append((a, j))
    # fundamental cycle of each non-tree edge: tree path xor the edge
    parent = [None] * n
    depth = [0] * n
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w, j in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = (u, j)
                    depth[w] = depth[u] + 1
                    stack.append(w)
    basis = []
    for j in rest:
        a, b = edges[j]
        mask = 1 << j
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            u, t = parent[a]
            mask ^= 1 << t
            a = u
        basis.append(mask)
    out = [0]
    for bm in basis:
        out += [c ^ bm for c in out]
    return out


def enumerate_tours(G: Graph, support) -> list:
    """All tours of G using only edges in `support` with multiplicity <= 2,
    as tuples over host edges."""
    if G.n > MAX_N:
        raise InputError(f"oracle refuses n={G.n} > {MAX_N}")
    S = sorted(support)
    edges = [G.edges[e] for e in S]
    k = len(S)
    inc = [0] * G.n
    for j, (a, b) in enumerate(edges):
        inc[a] |= 1 << j
        inc[b] |= 1 << j
    full = (1 << k) - 1
    out = []

    def connected(mask):
        reach = 1
        frontier = [0]
        while frontier:
            u = frontier.pop()
            em = inc[u] & mask
            while em:
                low = em & -em
                j = low.bit_length() - 1
                em ^= low
                a, b = edges[j]
                w = b if a == u else a
                if not reach >> w & 1:
                    reach |= 1 << w
                    frontier.append(w)
        return reach == (1 << G.n) - 1

    for C in _even_subgraphs(G.n, edges):
        free = [j for j in range(k) if not C >> j & 1]
        for bits in range(1 << len(free)):
            D = 0
            for i, j in enumerate(free):
                if bits >> i & 1:
                    D |= 1 << j
            used = C | D
            if any(not inc[u] & used for u in range(G.n)):
                continue
            if G.n > 1 and not connected(used):
                continue
            F = [0] * G.m
            for j in range(k):
                if C >> j & 1:
                    F[S[j]] = 1
                elif D >> j & 1:
                    F[S[j]] = 2
            out.append(tuple(F))
    out.sort()
    return out


def decide(G: Graph, y) -> OracleResult:
    """Is y an exact convex combination of tours of G (multiplicity <= 2)?"""
    y = tuple(Fraction(q) for q in y)
    if len(y) != G.m:
        raise InputError("vector length differs from the edge count")
    if any(q < 0 for q in y):
        return OracleResult(False, 0, method="negative entry")
    S = [e for e in range(G.m) if y[e] > 0]
    tours = enumerate_tours(G, S)
    if not tours:
        return OracleResult(False, 0, method="no tour on the support")
    # rows: every host edge plus the convexity row
    b = list(y) + [Fraction(1)]
    cols = [tuple(F) + (1,) for F in tours]
    A = np.array(cols, dtype=float).T
    r = A.shape[0]
    Aeq = np.hstack([A, np.eye(r), -np.eye(r)])
    c = np.concatenate([np.zeros(len(cols)), np.ones(2 * r)])
    res = linprog(c, A_eq=Aeq, b_eq=np.array([float(q) for q in b]), bounds=(0, None),
                  method="highs")
    if res.status == 0 and res.fun < 1e-9:
        sup = [j for j in range(len(cols)) if res.x[j] > 1e-12]
        lam = exact_solve([cols[j] for j in sup], b)
        if lam is not None and all(q >= 0 for q in lam):
            comb = merge_terms(G, [(q, tours[j]) for q, j in zip(lam, sup) if q > 0])
            return OracleResult(True, len(tours), comb, method="exact support solve")
    elif res.status == 0:
        yv = [Fraction(float(t)).limit_denominator(10 ** 6) for t in res.eqlin.marginals]
        if _farkas_ok(yv, cols, b):
            return OracleResult(False, len(tours), farkas=(tuple(yv[:-1]), yv[-1]),
                                method="exact Farkas vector")
    # exact simplex over the whole pool settles anything left
    try:
        lam, pool = exact_phase1(b, cols, None)
    except MembershipError:
        return OracleResult(False, len(tours), method="exact phase 1")
    comb = merge_terms(G, [(q, a[:-1]) for q, a in zip(lam, pool) if q > 0])
    return OracleResult(True, len(tours), comb, method="exact phase 1")


def _farkas_ok(yv, cols, b) -> bool:
    if sum(q * t for q, t in zip(yv, b)) <= 0:
        return False
    for a in cols:
        if sum(q * t for q, t in zip(yv, a) if t) > 0:
            return False
    return True
