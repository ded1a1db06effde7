"""Exact convex decompositions into rainbow v-trees, O-joins, perfect
matchings and 2-factors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import oracles
from .graph import (Combination, Graph, InputError, components, deg_in,
                    merge_terms)
from .lp import MembershipError, column_generation, int_weights


@dataclass(frozen=True)
class RainbowSpec:
    v: int
    parts: tuple = ()


@dataclass(frozen=True)
class Family:
    kind: str  # rainbow-v-tree | o-join | perfect-matching | two-factor
    spec: RainbowSpec | None = None
    O: frozenset = frozenset()

    @staticmethod
    def rainbow(v, parts=()):
        return Family("rainbow-v-tree", RainbowSpec(v, tuple(tuple(P) for P in parts)))

    @staticmethod
    def ojoin(O):
        return Family("o-join", O=frozenset(O))

    @staticmethod
    def matching():
        return Family("perfect-matching")

    @staticmethod
    def two_factor():
        return Family("two-factor")

    def oracle(self, G: Graph, w, allowed):
        if self.kind == "rainbow-v-tree":
            return oracles.max_rainbow_vtree(G, self.spec.v, w, allowed, self.spec.parts)
        if self.kind == "o-join":
            return oracles.max_ojoin(G, self.O, w, allowed)
        if self.kind == "perfect-matching":
            return oracles.max_perfect_matching(G, w, allowed)
        if self.kind == "two-factor":
            return oracles.max_two_factor_cubic(G, w, allowed)
        raise InputError(f"unknown family {self.kind}")

    def contains(self, G: Graph, F) -> bool:
        if any(k not in (0, 1) for k in F):
            return False
        if self.kind == "rainbow-v-tree":
            return is_rainbow_vtree(G, F, self.spec)
        if self.kind == "o-join":
            return {u for u in range(G.n) if deg_in(G, F, u) % 2} == set(self.O)
        if self.kind == "perfect-matching":
            return all(deg_in(G, F, u) == 1 for u in range(G.n))
        if self.kind == "two-factor":
            return all(deg_in(G, F, u) == 2 for u in range(G.n))
        return False


def is_vtree(G: Graph, F, v: int) -> bool:
    if deg_in(G, F, v) != 2 or sum(F) != G.n:
        return False
    rest = [u for u in range(G.n) if u != v]
    lab = components(G.n, (G.edges[e] for e in range(G.m) if F[e] and v not in G.edges[e]))
    return len({lab[u] for u in rest}) <= 1


def is_rainbow_vtree(G: Graph, F, spec: RainbowSpec) -> bool:
    if not is_vtree(G, F, spec.v):
        return False
    return all(sum(F[e] for e in P) == 1 for P in spec.parts)


def decompose(G: Graph, target, family: Family, cap_factor: int = 2) -> Combination:
    """Exact convex combination of family members equal to `target`."""
    target = tuple(Fraction(t) for t in target)
    if any(t < 0 for t in target):
        raise InputError("negative target entry")
    S = [e for e in range(G.m) if target[e] > 0]
    allowed = [t > 0 for t in target]

    def price(wS):
        w = [0] * G.m
        for j, e in enumerate(S):
            w[e] = wS[j]
        w = int_weights(w)
        F = family.oracle(G, w, allowed)
        if F is None:
            raise MembershipError(f"no {family.kind} on the support of the target")
        return [tuple(F[e] for e in S)]

    pairs = column_generation([target[e] for e in S], price, seeds=())
    terms = []
    for lam, a in pairs:
        F = [0] * G.m
        for j, e in enumerate(S):
            F[e] = a[j]
        F = tuple(F)
        if not family.contains(G, F):
            raise MembershipError(f"engine produced a non-member of {family.kind}")
        terms.append((lam, F))
    c = merge_terms(G, terms)
    if len(c) > max(1, cap_factor * len(S)) + 1:
        raise MembershipError(f"combination has {len(c)} terms, over the cap")
    return c


def ojoin_with_degree_cap(G: Graph, z, O) -> Combination:
    """O-join decomposition of z where z(delta(u)) <= 1 everywhere, so every
    join meets each u in O in exactly one edge."""
    z = tuple(Fraction(t) for t in z)
    for u in range(G.n):
        if sum(z[e] for e in G.inc[u]) > 1:
            raise InputError(f"z(delta({u})) exceeds 1")
    if len(O) % 2:
        raise InputError("odd set O has odd size")
    if not O and not any(z):
        return Combination(G, ((Fraction(1), G.zero()),))
    c = decompose(G, z, Family.ojoin(O))
    for lam, J in c:
        for u in O:
            if deg_in(G, J, u) != 1:
                raise MembershipError(f"join meets {u} in {deg_in(G, J, u)} edges")
    return c
