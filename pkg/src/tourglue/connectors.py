"""Connectors with controlled degree at a vertex v.

Start from a decomposition of x into rainbow v-trees whose parts pair the
two fractional edges at every endpoint of M, then move mass Lambda of the
trees to degree 1 and degree 3 at v by dropping or adding one fractional
edge at v.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclic import CyclicPoint
from .decomp import Family, decompose
from .graph import Combination, InputError, Verdict, deg_in, is_connected_on, merge_terms
from .matchings import is_induced_matching


@dataclass(frozen=True)
class PSpec:
    v: int
    M: frozenset
    Lambda: Fraction = Fraction(0)
    protect: tuple = ()  # vertices kept at degree 2 where a part fits


def rainbow_parts(p: CyclicPoint, M, protect=(), v=None) -> list:
    parts = []
    ends = set()
    for e in sorted(M):
        for s in p.host.edges[e]:
            parts.append((p.f(s), p.g(s)))
            ends.add(s)
    # extra pairs are only added when disjoint from every part so far
    used = {h for P in parts for h in P}
    for u in protect:
        if u == v or u in ends:
            continue
        P = (p.f(u), p.g(u))
        if used.isdisjoint(P):
            parts.append(P)
            used.update(P)
    return parts


def far_ones(p: CyclicPoint, v: int) -> tuple:
    """(e_w1, e_w2) for the far ends w1 of f_v and w2 of g_v."""
    G = p.host
    return p.e(G.other(p.f(v), v)), p.e(G.other(p.g(v), v))


def shift_allowed(p: CyclicPoint, v: int, M) -> bool:
    """Whether mass can be moved off degree 2 at v for matching M."""
    if p.e(v) in M:
        return False
    a, b = far_ones(p, v)
    return not (a in M and b in M)


def check_spec(p: CyclicPoint, spec: PSpec):
    M = frozenset(spec.M)
    if not M <= p.W:
        raise InputError("M is not a set of 1-edges")
    if not is_induced_matching(p.host, M):
        raise InputError("M is not an induced matching")
    if spec.Lambda < 0 or spec.Lambda > p.theta:
        raise InputError(f"Lambda={spec.Lambda} outside [0, theta]")
    if spec.Lambda > 0 and not shift_allowed(p, spec.v, M):
        raise InputError("Lambda > 0 needs e_v outside M and not both far 1-edges in M")


def _take(family, amount):
    """Greedy pick of total multiplier `amount` from [(lam, T)], largest
    first; splits one term.  Returns (picked, rest)."""
    picked, rest = [], []
    left = amount
    for lam, T in sorted(family, key=lambda t: (-t[0], t[1])):
        if left <= 0:
            rest.append((lam, T))
        elif lam <= left:
            picked.append((lam, T))
            left -= lam
        else:
            picked.append((left, T))
            rest.append((lam - left, T))
            left = Fraction(0)
    if left:
        raise InputError("not enough tree mass to move")
    return picked, rest


def connectors_with_P(p: CyclicPoint, spec: PSpec) -> Combination:
    check_spec(p, spec)
    G, v, M, L = p.host, spec.v, frozenset(spec.M), Fraction(spec.Lambda)
    trees = decompose(G, p.x, Family.rainbow(v, rainbow_parts(p, M, spec.protect, v)))
    if L == 0:
        return trees
    f, g = p.f(v), p.g(v)
    Tf = [(lam, T) for lam, T in trees if T[f] and not T[g]]
    Tg = [(lam, T) for lam, T in trees if T[g] and not T[f]]
    if len(Tf) + len(Tg) != len(trees):
        raise RuntimeError("v-tree without exactly one fractional edge at v")
    f1, f0 = _take(Tf, L)
    g1, g0 = _take(Tg, L)
    ew1, _ = far_ones(p, v)

    def edit(T, e, d):
        T = list(T)
        T[e] += d
        assert T[e] in (0, 1)
        return tuple(T)

    if ew1 not in M:
        new = [(lam, edit(T, f, -1)) for lam, T in f1] + [(lam, edit(T, f, +1)) for lam, T in g1]
    else:
        new = [(lam, edit(T, g, +1)) for lam, T in f1] + [(lam, edit(T, g, -1)) for lam, T in g1]
    return merge_terms(G, f0 + g0 + new)


def verify_property_P(c: Combination, p: CyclicPoint, spec: PSpec) -> Verdict:
    G, v = p.host, spec.v
    M = frozenset(spec.M)
    val = [Fraction(0)] * G.m
    mass = {1: Fraction(0), 2: Fraction(0), 3: Fraction(0)}
    rest = [u for u in range(G.n) if u != v]
    total = Fraction(0)
    for j, (lam, T) in enumerate(c.terms):
        if lam <= 0:
            return Verdict(False, f"term {j} multiplier not positive")
        total += lam
        if any(k not in (0, 1) for k in T):
            return Verdict(False, f"term {j} has a doubled edge")
        if any(T[e] != 1 for e in p.W):
            return Verdict(False, f"term {j} misses a 1-edge")
        if not is_connected_on(G, T) or any(deg_in(G, T, u) == 0 for u in range(G.n)):
            return Verdict(False, f"term {j} is not a connector")
        Tm = tuple(0 if e in G.inc[v] else T[e] for e in range(G.m))
        if not is_connected_on(G, Tm, rest):
            return Verdict(False, f"term {j} minus delta(v) is disconnected")
        for e in M:
            for s in G.edges[e]:
                if deg_in(G, T, s) != 2:
                    return Verdict(False, f"term {j}: M-endpoint {s} has degree {deg_in(G, T, s)}")
        d = deg_in(G, T, v)
        if d not in mass:
            return Verdict(False, f"term {j}: degree {d} at v")
        mass[d] += lam
        for e in range(G.m):
            if T[e]:
                val[e] += lam
    if total != 1:
        return Verdict(False, "multipliers do not sum to 1")
    if tuple(val) != tuple(p.x):
        return Verdict(False, "value differs from x")
    L = Fraction(spec.Lambda)
    if mass[1] != L or mass[3] != L or mass[2] != 1 - 2 * L:
        return Verdict(False, f"degree masses at v are {mass[1]}, {mass[2]}, {mass[3]}")
    return Verdict(True)
