"""Parity vectors z^M and O-join membership certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclic import CyclicPoint, critical_cuts, h_cycles
from .decomp import ojoin_with_degree_cap
from .graph import Combination, InputError, deg_in, enumerate_cuts_upto

EXHAUSTIVE_MAX_N = 16


@dataclass(frozen=True)
class ParityVector:
    z: tuple
    M: frozenset


def parity_vector(p: CyclicPoint, M) -> ParityVector:
    M = frozenset(M)
    if not M <= p.W:
        raise InputError("M must consist of 1-edges")
    half = Fraction(1, 2)
    z = []
    for e in range(p.host.m):
        if e in M:
            z.append((1 - p.theta) / 2)
        elif e in p.W:
            z.append(half)
        else:
            z.append(p.x[e] / 2)
    return ParityVector(tuple(z), M)


@dataclass
class Certificate:
    ok: bool
    method: str
    checked: int = 0
    U: tuple | None = None
    A: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def exhaustive_ojoin_check(G, z, O) -> Certificate:
    """Every constraint z(delta(U) - A) - z(A) >= 1 - |A| with |U & O| + |A|
    odd, over all U (one side each) and the worst A, in exact integers."""
    n, m = G.n, G.m
    O = set(O)
    if len(O) % 2:
        return Certificate(False, "exhaustive", reason="|O| is odd")
    for e in range(m):
        if not 0 <= z[e] <= 1:
            return Certificate(False, "exhaustive", reason=f"z[{e}] outside [0,1]")
    if n < 2:
        return Certificate(True, "exhaustive")
    D = 1
    for q in z:
        D = D * Fraction(q).denominator // math.gcd(D, Fraction(q).denominator)
    zi = np.array([int(Fraction(q) * D) for q in z], dtype=np.int64)
    ce = D - 2 * zi
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)  # vertex n-1 stays outside
    bits = np.array([(masks >> u) & 1 for u in range(n)], dtype=np.int64)  # n x K
    cross = np.array([bits[a] ^ bits[b] for a, b in G.edges], dtype=np.int64)  # m x K
    zd = zi @ cross
    oin = np.zeros(len(masks), dtype=np.int64)
    for u in O:
        oin += bits[u]
    need_odd = (oin % 2) == 0
    negc = np.minimum(ce, 0)
    base = negc @ cross
    nneg = (ce < 0).astype(np.int64) @ cross
    big = np.int64(1 << 40)
    absmin = np.where(cross == 1, np.abs(ce)[:, None], big).min(axis=0)
    wrong = (nneg % 2 == 1) != need_odd
    best = base + np.where(wrong, absmin, 0)
    lhs = zd + best
    bad = np.nonzero(lhs < D)[0]
    if len(bad):
        k = int(bad[0])
        U = tuple(u for u in range(n) if bits[u][k])
        dl = [e for e in range(m) if cross[e][k]]
        A = [e for e in dl if ce[e] < 0]
        if bool(wrong[k]) and dl:
            flip = min(dl, key=lambda e: abs(int(ce[e])))
            A = sorted(set(A) ^ {flip})
        return Certificate(False, "exhaustive", len(masks), U, tuple(A),
                           "constraint violated")
    return Certificate(True, "exhaustive", len(masks))


def case_check(p: CyclicPoint, pv: ParityVector, O) -> Certificate:
    """Check the hypotheses under which membership holds for every cut."""
    G = p.host
    O = set(O)
    M = pv.M
    if critical_cuts(p):
        return Certificate(False, "cases", reason="point has a critical cut")
    if len(O) % 2:
        return Certificate(False, "cases", reason="|O| is odd")
    for e in M:
        for s in G.edges[e]:
            if s in O:
                return Certificate(False, "cases", reason=f"M-endpoint {s} in O")
    cuts = enumerate_cuts_upto(G, 3)
    for U in cuts:
        D = G.delta(U)
        k = len(set(D) & M)
        if len(D) == 3 and k > 1:
            return Certificate(False, "cases", U=U, reason="3-edge cut with two M-edges")
        if len(D) == 2 and (k % 2 or len(set(U) & O) % 2):
            return Certificate(False, "cases", U=U, reason="2-edge cut parity")
    if p.theta < Fraction(1, 2):
        if any(len(c) % 2 for c in h_cycles(G, p.H)):
            return Certificate(False, "cases", reason="odd fractional cycle")
    return Certificate(True, "cases", len(cuts))


def certify_ojoin_membership(p: CyclicPoint, pv: ParityVector, O,
                             threshold: int = EXHAUSTIVE_MAX_N) -> Certificate:
    if p.host.n <= threshold:
        return exhaustive_ojoin_check(p.host, pv.z, O)
    return case_check(p, pv, O)


def odd_vertices(G, F) -> frozenset:
    return frozenset(u for u in range(G.n) if deg_in(G, F, u) % 2)


def parity_correct(p: CyclicPoint, T, pv: ParityVector) -> Combination:
    """O_T-join decomposition of z; each join meets every odd vertex of T once."""
    return ojoin_with_degree_cap(p.host, pv.z, odd_vertices(p.host, T))
