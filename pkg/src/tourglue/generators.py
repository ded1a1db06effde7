"""Instance generators.  Each returns (theta, Graph, x) for cyclic points or a
plain Graph for the uniform pipelines."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .cyclic import CyclicError, validate_cyclic
from .graph import Graph, InputError

HALF = Fraction(1, 2)


def k4half():
    """K4 with the 4-cycle 0-1-2-3 at 1/2 and the diagonals 02, 13 at 1."""
    edges = ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3))
    x = (HALF,) * 4 + (Fraction(1),) * 2
    return HALF, Graph(4, edges), x


def prism(theta=HALF):
    """Two copies of K4H glued at one vertex: a 6-cycle of fractional edges
    with three rungs at 1.  Has exactly one critical cut."""
    theta = Fraction(theta)
    # fractional 6-cycle 0-1-2-5-4-3-0, rungs 02, 14, 35
    cyc = [(0, 1), (1, 2), (2, 5), (5, 4), (4, 3), (3, 0)]
    edges = cyc + [(0, 2), (1, 4), (3, 5)]
    x = [theta if i % 2 == 0 else 1 - theta for i in range(6)] + [Fraction(1)] * 3
    return theta, Graph(6, tuple(edges)), tuple(x)


def lowerbound(eps):
    """Two fractional triangles joined by three paths of 1-edges, each path
    holding ceil(1/eps + 1) vertices including its two triangle corners."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    k = math.ceil(1 / eps + 1)
    edges, x = [], []
    for a, b in ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)):
        edges.append((a, b))
        x.append(HALF)
    nxt = 6
    for i in range(3):
        chain = [i] + list(range(nxt, nxt + k - 2)) + [3 + i]
        nxt += k - 2
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b))
            x.append(Fraction(1))
    return HALF, Graph(nxt, tuple(edges)), tuple(x)


def k4graph():
    return Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def octahedron():
    """K_{2,2,2}: vertex i is non-adjacent to i + 3."""
    edges = tuple((a, b) for a in range(6) for b in range(a + 1, 6) if b != a + 3)
    return Graph(6, edges)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def prism_graph(k=3):
    """Circular ladder C_k x K2 (cubic)."""
    edges = [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph(2 * k, tuple(edges))


def _cycle_lengths(n, rng, even):
    out, rest = [], n
    lo = 4 if even else 3
    while rest:
        opts = [L for L in range(lo, rest + 1)
                if (not even or L % 2 == 0) and (rest - L == 0 or rest - L >= lo)]
        L = rng.choice(opts)
        out.append(L)
        rest -= L
    return out


def random_cyclic(n: int, theta, seed: int, max_tries: int = 2000):
    """Random cubic theta-cyclic point: fractional cycles covering all
    vertices plus a perfect matching of 1-edges, resampled until valid."""
    theta = Fraction(theta)
    if n < 4 or n % 2:
        raise InputError("random-cyclic needs an even n >= 4")
    rng = random.Random(seed)
    even = theta != HALF
    for _ in range(max_tries):
        verts = list(range(n))
        rng.shuffle(verts)
        edges, x, pos, used = [], [], 0, set()
        for L in _cycle_lengths(n, rng, even):
            cyc = verts[pos:pos + L]
            pos += L
            for i in range(L):
                a, b = cyc[i], cyc[(i + 1) % L]
                edges.append((min(a, b), max(a, b)))
                x.append(theta if i % 2 == 0 else 1 - theta)
                used.add(frozenset((a, b)))
        rest = list(range(n))
        rng.shuffle(rest)
        ok = True
        W = []
        while rest:
            a = rest.pop()
            cands = [b for b in rest if frozenset((a, b)) not in used]
            if not cands:
                ok = False
                break
            b = rng.choice(cands)
            rest.remove(b)
            W.append((min(a, b), max(a, b)))
        if not ok:
            continue
        edges += W
        x += [Fraction(1)] * len(W)
        G = Graph(n, tuple(edges))
        try:
            validate_cyclic(theta, G, x)
        except CyclicError:
            continue
        return theta, G, tuple(x)
    raise InputError("random-cyclic: no valid instance found")


def glue_instances(a, u, b, w):
    """Remove vertex u of cubic point a and w of cubic point b and join the
    dangling edges by value (the 1-edge to the 1-edge, theta to theta).
    The new instance has a critical cut between the two remnants."""
    ta, Ga, xa = a
    tb, Gb, xb = b
    if ta != tb:
        raise InputError("theta differs")

    def dangling(G, x, u):
        out = sorted(G.inc[u], key=lambda e: (-(x[e] == 1), x[e], e))
        return [(G.other(e, u), x[e]) for e in out]

    da, db = dangling(Ga, xa, u), dangling(Gb, xb, w)
    if [v for _, v in da] != [v for _, v in db]:
        raise InputError("edge values at the glued vertices differ")
    amap = {v: i for i, v in enumerate(t for t in range(Ga.n) if t != u)}
    off = Ga.n - 1
    bmap = {v: off + i for i, v in enumerate(t for t in range(Gb.n) if t != w)}
    edges, x = [], []
    for e, (p, q) in enumerate(Ga.edges):
        if u not in (p, q):
            edges.append((amap[p], amap[q]))
            x.append(xa[e])
    for e, (p, q) in enumerate(Gb.edges):
        if w not in (p, q):
            edges.append((bmap[p], bmap[q]))
            x.append(xb[e])
    for (pa, val), (pb, _) in zip(da, db):
        edges.append((amap[pa], bmap[pb]))
        x.append(val)
    return ta, Graph(off + Gb.n - 1, tuple(edges)), tuple(x)
