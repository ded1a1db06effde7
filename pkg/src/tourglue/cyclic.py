"""theta-cyclic points: validation, cubic reduction, tight-cut classification."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graph import (Contraction, Graph, InputError, components, contract,
                    enumerate_cuts_upto, fmt, min_cut_value)


class CyclicError(InputError):
    """Rejection of a candidate cyclic point; `clause` names the failed condition."""

    def __init__(self, clause: str, msg: str):
        super().__init__(f"{clause}: {msg}")
        self.clause = clause


@dataclass(frozen=True)
class CyclicPoint:
    theta: Fraction
    host: Graph
    x: tuple
    W: frozenset
    H: frozenset

    # the cubic accessors below assume a cubic point (W a perfect matching)
    @cached_property
    def e_at(self) -> tuple:
        out = []
        for u in range(self.host.n):
            ws = [e for e in self.host.inc[u] if e in self.W]
            out.append(ws[0] if len(ws) == 1 else -1)
        return tuple(out)

    @cached_property
    def fg_at(self) -> tuple:
        """(f_u, g_u): f carries theta, g carries 1 - theta; ties by index."""
        out = []
        for u in range(self.host.n):
            hs = [e for e in self.host.inc[u] if e in self.H]
            if len(hs) != 2:
                out.append((-1, -1))
                continue
            a, b = hs
            if self.x[a] > self.x[b]:
                a, b = b, a
            out.append((a, b))
        return tuple(out)

    def e(self, u):
        return self.e_at[u]

    def f(self, u):
        return self.fg_at[u][0]

    def g(self, u):
        return self.fg_at[u][1]

    def is_cubic(self) -> bool:
        return all(self.host.degree(u) == 3 for u in range(self.host.n)) and \
            all(e >= 0 for e in self.e_at)

    def restrict(self, c: Contraction) -> "CyclicPoint":
        x = tuple(self.x[i] for i in c.edge_map)
        W = frozenset(j for j, i in enumerate(c.edge_map) if i in self.W)
        H = frozenset(j for j, i in enumerate(c.edge_map) if i in self.H)
        return CyclicPoint(self.theta, c.graph, x, W, H)


def validate_cyclic(theta, host: Graph, x) -> CyclicPoint:
    """Accept (theta, x) as a theta-cyclic point on the support `host` or raise
    CyclicError naming the first violated clause."""
    theta = Fraction(theta)
    if not (0 < theta <= Fraction(1, 2)):
        raise CyclicError("theta-range", f"theta={fmt(theta)} not in (0, 1/2]")
    x = tuple(Fraction(v) for v in x)
    if len(x) != host.m:
        raise CyclicError("value-set", "vector length differs from edge count")
    allowed = {theta, 1 - theta, Fraction(1)}
    for i, v in enumerate(x):
        if v not in allowed:
            raise CyclicError("value-set", f"edge {host.edges[i]} has value {fmt(v)}")
    for u in range(host.n):
        if host.degree(u) > 3:
            raise CyclicError("subcubic", f"vertex {u} has degree {host.degree(u)}")
    W = frozenset(i for i, v in enumerate(x) if v == 1)
    H = frozenset(range(host.m)) - W
    for u in range(host.n):
        if not any(e in W for e in host.inc[u]):
            raise CyclicError("one-edge", f"vertex {u} has no 1-edge")
    for u in range(host.n):
        s = sum(x[e] for e in host.inc[u])
        if s != 2:
            raise CyclicError("degree", f"x(delta({u})) = {fmt(s)}")
    if host.n > 1:
        c = min_cut_value(host, x)
        if c < 2:
            raise CyclicError("cut", f"minimum cut value {fmt(c)} < 2")
    if theta < Fraction(1, 2):
        for cyc in h_cycles(host, H):
            if len(cyc) % 2:
                raise CyclicError("odd-cycle", f"fractional cycle of length {len(cyc)}")
    return CyclicPoint(theta, host, x, W, H)


def h_cycles(host: Graph, H) -> list:
    """Edge lists of the cycles formed by H (every H-vertex has H-degree 2)."""
    seen, out = set(), []
    for start in sorted(H):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        u, cur = host.edges[start][1], start
        while True:
            nxt = [e for e in host.inc[u] if e in H and e != cur and e not in seen]
            if not nxt:
                break
            cur = nxt[0]
            seen.add(cur)
            cyc.append(cur)
            u = host.other(cur, u)
        out.append(cyc)
    return out


@dataclass(frozen=True)
class CubicReduction:
    original: CyclicPoint
    reduced: CyclicPoint
    vertex_map: tuple  # reduced vertex -> original vertex
    paths: tuple  # reduced edge -> tuple of original edge indices


def to_cubic(p: CyclicPoint) -> CubicReduction:
    """Contract every maximal path of 1-edges to a single 1-edge."""
    G = p.host
    if not p.H:
        raise InputError("point has no fractional edges; nothing to reduce")
    wdeg = [sum(1 for e in G.inc[u] if e in p.W) for u in range(G.n)]
    ends = [u for u in range(G.n) if wdeg[u] == 1]
    vid = {u: i for i, u in enumerate(ends)}
    red_edges = []  # (key, (a, b), path, value)
    used = set()
    for u in ends:
        e = next(e for e in G.inc[u] if e in p.W)
        if e in used:
            continue
        path, cur, w = [e], e, G.other(e, u)
        while wdeg[w] == 2:
            cur = next(f for f in G.inc[w] if f in p.W and f != cur)
            path.append(cur)
            w = G.other(cur, w)
        used.update(path)
        red_edges.append((min(path), (vid[u], vid[w]), tuple(path), Fraction(1)))
    if len(used) != len(p.W):
        raise InputError("1-edges contain a cycle; point is not reducible")
    for e in p.H:
        a, b = G.edges[e]
        red_edges.append((e, (vid[a], vid[b]), (e,), p.x[e]))
    red_edges.sort()
    R = Graph(len(ends), tuple(t[1] for t in red_edges))
    x = tuple(t[3] for t in red_edges)
    W = frozenset(i for i, t in enumerate(red_edges) if t[3] == 1)
    rp = CyclicPoint(p.theta, R, x, W, frozenset(range(R.m)) - W)
    return CubicReduction(p, rp, tuple(ends), tuple(t[2] for t in red_edges))


def expand_tour(r: CubicReduction, F) -> tuple:
    out = [0] * r.original.host.m
    for i, k in enumerate(F):
        if i in r.reduced.W and k == 0:
            raise InputError(f"reduced tour misses 1-edge {i}")
        for e in r.paths[i]:
            out[e] += k
    return tuple(out)


@dataclass(frozen=True)
class CutClass:
    U: tuple
    kind: str  # vertex | critical | degenerate | other-tight | non-tight
    value: Fraction
    size: int


def _kind3(p: CyclicPoint, U, D) -> str:
    G = p.host
    n = G.n
    val = sum(p.x[e] for e in D)
    if val != 2:
        return "non-tight"
    if len(D) != 3:
        return "other-tight"
    ws = [e for e in D if e in p.W]
    if len(ws) != 1:
        return "other-tight"
    Us = set(U)
    inside = [a if a in Us else b for a, b in (G.edges[e] for e in D)]
    outside = [b if a in Us else a for a, b in (G.edges[e] for e in D)]
    if len(set(inside)) == 3 and len(set(outside)) == 3:
        return "critical"
    if len(U) > 3 and n - len(U) > 3:
        return "degenerate"
    return "other-tight"


def classify_cuts(p: CyclicPoint, with_vertices: bool = True) -> list:
    G = p.host
    out = []
    if with_vertices:
        for u in range(G.n):
            out.append(CutClass((u,), "vertex", sum(p.x[e] for e in G.inc[u]), G.degree(u)))
    for U in enumerate_cuts_upto(G, 3):
        D = G.delta(U)
        out.append(CutClass(U, _kind3(p, U, D), sum(p.x[e] for e in D), len(D)))
    return out


def critical_cuts(p: CyclicPoint) -> list:
    return [c.U for c in classify_cuts(p, with_vertices=False) if c.kind == "critical"]


def minimal_critical_cut(p: CyclicPoint):
    """Critical cut side of least size (then lexicographic), or None."""
    n = p.host.n
    sides = []
    for U in critical_cuts(p):
        sides.append(tuple(U))
        sides.append(tuple(sorted(set(range(n)) - set(U))))
    if not sides:
        return None
    return min(sides, key=lambda s: (len(s), s))


def point_from_contraction(p: CyclicPoint, U) -> tuple:
    """Contract the complement of U; returns (point, Contraction)."""
    c = contract(p.host, U)
    return p.restrict(c), c


def h_component_count(p: CyclicPoint) -> int:
    lab = components(p.host.n, (p.host.edges[e] for e in p.H))
    return len(set(lab))
