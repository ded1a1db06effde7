"""Patterns, base-case tours, gluing over critical cuts, and the top-level
recursion for theta-cyclic points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connectors import PSpec, connectors_with_P, shift_allowed
from .cyclic import (CyclicPoint, expand_tour, minimal_critical_cut,
                     point_from_contraction, to_cubic)
from .graph import (Combination, Contraction, InputError, combination_value,
                    deg_in, fmt, is_connected_on, is_tour, merge_terms)
from .matchings import partition_induced_matchings
from .parity import odd_vertices, parity_vector
from .decomp import ojoin_with_degree_cap

ALPHA = Fraction(1, 5)

# pattern name -> multiplicities of (e_u, f_u, g_u)
PATTERNS = {
    "2e": (2, 0, 0),
    "ef": (1, 1, 0),
    "eg": (1, 0, 1),
    "2e2f": (2, 2, 0),
    "2e2g": (2, 0, 2),
    "2efg": (2, 1, 1),
    "e2fg": (1, 2, 1),
    "ef2g": (1, 1, 2),
}
BY_MULT = {m: name for name, m in PATTERNS.items()}
ORDER = tuple(PATTERNS)


class NotHandpicked(ValueError):
    pass


class ZetaOutOfRange(ValueError):
    pass


class ProfileMismatch(ValueError):
    pass


class ConnectivityViolation(ValueError):
    pass


# ---------------------------------------------------------------- patterns

def pattern_of(p: CyclicPoint, F, u: int) -> str:
    key = (F[p.e(u)], F[p.f(u)], F[p.g(u)])
    if key not in BY_MULT:
        raise NotHandpicked(f"tour {F} has pattern {key} at vertex {u}")
    return BY_MULT[key]


def profile_of(c: Combination, p: CyclicPoint, u: int) -> dict:
    prof = {name: Fraction(0) for name in ORDER}
    for lam, F in c.terms:
        prof[pattern_of(p, F, u)] += lam
    return prof


def phi2(c: Combination) -> tuple:
    out = [Fraction(0)] * c.host.m
    for lam, F in c.terms:
        for e, k in enumerate(F):
            if k == 2:
                out[e] += lam
    return tuple(out)


def target_y(p: CyclicPoint, alpha=ALPHA) -> tuple:
    wval = Fraction(3, 2) - alpha * p.theta / 2
    return tuple(wval if e in p.W else Fraction(3, 2) * p.x[e] for e in range(p.host.m))


def target_phi2(p: CyclicPoint, alpha=ALPHA) -> tuple:
    wval = Fraction(1, 2) - alpha * p.theta / 2
    return tuple(wval if e in p.W else p.x[e] ** 2 / 2 for e in range(p.host.m))


# ---------------------------------------------------------------- pattern system

def _rref(rows):
    """Exact reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(map(Fraction, r)) for r in rows]
    piv = []
    r = 0
    ncol = len(A[0]) - 1 if A else 0
    for c in range(ncol):
        k = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        pv = A[r][c]
        A[r] = [a / pv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return A, piv


@dataclass
class PatternSolution:
    feasible: bool
    rank: int
    particular: dict | None
    null_basis: list
    forced: dict  # coordinates fixed across all solutions
    dependency_ok: bool


def pattern_rows(y, q, zeta):
    """The eight equations over the pattern frequencies, as [coeffs | rhs]."""
    ye, yf, yg = map(Fraction, y)
    qe, qf, qg = map(Fraction, q)
    rows = []

    def row(pred, rhs):
        rows.append([Fraction(int(pred(PATTERNS[n]))) for n in ORDER] + [Fraction(rhs)])

    row(lambda m: m[0] == 2, qe)
    row(lambda m: m[1] == 2, qf)
    row(lambda m: m[2] == 2, qg)
    row(lambda m: m[0] == 1, ye - 2 * qe)
    row(lambda m: m[1] == 1, yf - 2 * qf)
    row(lambda m: m[2] == 1, yg - 2 * qg)
    row(lambda m: True, 1)
    row(lambda m: m == (2, 0, 0), zeta)
    return rows


def solve_pattern_system(y, q, zeta) -> PatternSolution:
    rows = pattern_rows(y, q, zeta)
    dep = all(a + b == c for a, b, c in zip(rows[0], rows[3], rows[6]))
    A, piv = _rref(rows)
    nv = len(ORDER)
    rank = len(piv)
    for r in A[rank:]:
        if r[nv] != 0:
            return PatternSolution(False, rank, None, [], {}, dep)
    part = [Fraction(0)] * nv
    for i, c in enumerate(piv):
        part[c] = A[i][nv]
    free = [c for c in range(nv) if c not in piv]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * nv
        vec[fc] = Fraction(1)
        for i, c in enumerate(piv):
            vec[c] = -A[i][fc]
        basis.append(dict(zip(ORDER, vec)))
    forced = {n: part[j] for j, n in enumerate(ORDER) if all(b[n] == 0 for b in basis)}
    return PatternSolution(True, rank, dict(zip(ORDER, part)), basis, forced, dep)


def profile_equations_hold(prof: dict, y, q, zeta) -> bool:
    for r in pattern_rows(y, q, zeta):
        if sum(r[j] * prof[n] for j, n in enumerate(ORDER)) != r[-1]:
            return False
    return True


# ---------------------------------------------------------------- base case

@dataclass
class BaseCaseInfo:
    partition: tuple
    lambdas: tuple
    zeta: Fraction


def zeta_max(theta, alpha=ALPHA) -> Fraction:
    return (1 - alpha) * Fraction(theta) / 2


def base_case_tours(p: CyclicPoint, v: int, zeta=Fraction(0), info: list | None = None,
                    check: bool = True, protect=()) -> Combination:
    """Handpicked tours with value y and phi({2e_v}) = zeta on a cubic point
    without critical cuts.  Vertices in `protect` are kept at degree 2 in the
    connectors of every matching where that is possible, which lowers their
    own phi({2e})."""
    zeta = Fraction(zeta)
    if zeta < 0 or zeta > zeta_max(p.theta):
        raise ZetaOutOfRange(f"zeta={fmt(zeta)} outside [0, {fmt(zeta_max(p.theta))}]")
    mp = partition_induced_matchings(p, v, check_critical=check)
    parts = [mp.parts[mp.ev_index]] + [P for i, P in enumerate(mp.parts) if i != mp.ev_index]
    h = len(parts)
    alpha = Fraction(1, h)
    open_ = [i for i in range(1, h) if shift_allowed(p, v, parts[i])]
    lambdas = [Fraction(0)] * h
    if zeta:
        if not open_:
            raise ZetaOutOfRange(f"zeta={fmt(zeta)} > 0 but no matching admits a shift at {v}")
        share = 2 * zeta / (alpha * len(open_))
        if share > p.theta:
            raise ZetaOutOfRange(f"zeta={fmt(zeta)} needs Lambda={fmt(share)} > theta "
                                 f"with {len(open_)} open matchings at {v}")
        for i in open_:
            lambdas[i] = share
    if info is not None:
        info.append(BaseCaseInfo(tuple(parts), tuple(lambdas), zeta))
    G = p.host
    terms = []
    for i, M in enumerate(parts):
        conn = connectors_with_P(p, PSpec(v, M, lambdas[i], tuple(protect)))
        pv = parity_vector(p, M)
        cache = {}
        for sig, T in conn.terms:
            O = odd_vertices(G, T)
            if O not in cache:
                cache[O] = ojoin_with_degree_cap(G, pv.z, O)
            for psi, J in cache[O].terms:
                F = tuple(a + b for a, b in zip(T, J))
                terms.append((alpha * sig * psi, F))
    c = merge_terms(G, terms)
    if check:
        if combination_value(c) != target_y(p, alpha):
            raise RuntimeError("base case value differs from y")
        got = profile_of(c, p, v)["2e"]
        if got != zeta:
            raise RuntimeError(f"measured phi(2e_v)={fmt(got)} differs from zeta={fmt(zeta)}")
    return c


# ---------------------------------------------------------------- gluing

@dataclass
class GlueTask:
    host_point: CyclicPoint
    U: tuple
    base_point: CyclicPoint  # keeps U
    base_cut: Contraction
    base: Combination
    rec_point: CyclicPoint  # keeps V - U
    rec_cut: Contraction
    rec: Combination


def _side_key(F, cut: Contraction, cut_edges):
    inv = {h: j for j, h in enumerate(cut.edge_map)}
    return tuple(F[inv[e]] for e in cut_edges)


def glue_over_cut(task: GlueTask) -> Combination:
    p = task.host_point
    G = p.host
    U = set(task.U)
    D = sorted(G.delta(U))
    ca, cb = task.base_cut, task.rec_cut
    # condition (ii): base side minus the pseudovertex edges stays connected on U
    pa = ca.pseudo
    kept = [j for j in range(ca.graph.n) if j != pa]
    for lam, F in task.base.terms:
        Fm = tuple(0 if pa in ca.graph.edges[j] else F[j] for j in range(ca.graph.m))
        if not is_connected_on(ca.graph, Fm, kept):
            raise ConnectivityViolation(f"base-side tour disconnected on U after removing "
                                        f"pseudovertex edges (U={tuple(sorted(U))})")
    groups_a, groups_b = {}, {}
    for lam, F in task.base.terms:
        groups_a.setdefault(_side_key(F, ca, D), []).append([lam, F])
    for lam, F in task.rec.terms:
        groups_b.setdefault(_side_key(F, cb, D), []).append([lam, F])
    for key in sorted(set(groups_a) | set(groups_b)):
        sa = sum(t[0] for t in groups_a.get(key, []))
        sb = sum(t[0] for t in groups_b.get(key, []))
        if sa != sb:
            raise ProfileMismatch(f"cut {tuple(sorted(U))}: cut multiplicities {key} have "
                                  f"frequency {fmt(sa)} on the base side and {fmt(sb)} "
                                  f"on the recursive side")
    out = []
    for key in sorted(groups_a):
        A = sorted(groups_a[key], key=lambda t: (-t[0], t[1]))
        B = sorted(groups_b[key], key=lambda t: (-t[0], t[1]))
        i = j = 0
        while i < len(A) and j < len(B):
            w = min(A[i][0], B[j][0])
            F = [0] * G.m
            for k, h in enumerate(ca.edge_map):
                F[h] = A[i][1][k]
            for k, h in enumerate(cb.edge_map):
                F[h] = B[j][1][k]
            F = tuple(F)
            if not is_tour(G, F):
                raise ConnectivityViolation("glued multigraph is not a tour")
            out.append((w, F))
            A[i][0] -= w
            B[j][0] -= w
            if A[i][0] == 0:
                i += 1
            if B[j][0] == 0:
                j += 1
            # resort is unnecessary: largest-first order is kept within a class
    return merge_terms(G, out)


@dataclass
class SolveReport:
    cuts: list  # (U, zeta*) per glued cut, innermost first
    base_cases: int = 0
    root: int | None = None  # root of the innermost base case, None if a pseudovertex


def solve_cubic(p: CyclicPoint, report: SolveReport | None = None, prefer=(),
                zeta=Fraction(0)) -> Combination:
    """Recursion over minimal critical cuts of a cubic point.

    `prefer` lists vertices whose phi({2e}) should stay small because an
    enclosing base case has to absorb it.  The recursive side always puts its
    own pseudovertex first: the innermost base case is rooted there with
    zeta = 0, and the others keep it at degree 2 where they can.  `zeta` is
    used only at the root of the innermost base case of the top call.
    """
    if report is None:
        report = SolveReport([])
    prefer = tuple(prefer)
    U = minimal_critical_cut(p)
    if U is None:
        report.base_cases += 1
        root = prefer[0] if prefer else 0
        return base_case_tours(p, root, zeta, check=False, protect=prefer[1:])
    rest = tuple(sorted(set(range(p.host.n)) - set(U)))
    base_pt, base_cut = point_from_contraction(p, U)
    rec_pt, rec_cut = point_from_contraction(p, rest)
    pos_b = {h: j for j, h in enumerate(base_cut.vertex_map) if h >= 0}
    pos_r = {h: j for j, h in enumerate(rec_cut.vertex_map) if h >= 0}
    rec = solve_cubic(rec_pt, report,
                      (rec_cut.pseudo,) + tuple(pos_r[u] for u in prefer if u in pos_r), zeta)
    zeta = profile_of(rec, rec_pt, rec_cut.pseudo)["2e"]
    report.cuts.append((U, zeta))
    report.base_cases += 1
    base = base_case_tours(base_pt, base_cut.pseudo, zeta, check=False,
                           protect=tuple(pos_b[u] for u in prefer if u in pos_b))
    prof_a = profile_of(base, base_pt, base_cut.pseudo)
    prof_b = profile_of(rec, rec_pt, rec_cut.pseudo)
    if prof_a != prof_b:
        diff = [n for n in ORDER if prof_a[n] != prof_b[n]]
        raise ProfileMismatch(f"cut {U}: profiles differ at {diff}: base "
                              f"{[fmt(prof_a[n]) for n in ORDER]} vs recursive "
                              f"{[fmt(prof_b[n]) for n in ORDER]}")
    task = GlueTask(p, U, base_pt, base_cut, base, rec_pt, rec_cut, rec)
    return glue_over_cut(task)


def solve_cyclic(p: CyclicPoint, report: SolveReport | None = None,
                 zeta=Fraction(0)) -> Combination:
    """Tours of the original support whose combination equals y."""
    if report is None:
        report = SolveReport([])
    zeta = Fraction(zeta)
    if p.is_cubic():
        if minimal_critical_cut(p) is None:
            report.root = 0
        return solve_cubic(p, report, zeta=zeta)
    r = to_cubic(p)
    if minimal_critical_cut(r.reduced) is None:
        report.root = r.vertex_map[0]
    c = solve_cubic(r.reduced, report, zeta=zeta)
    return merge_terms(p.host, ((lam, expand_tour(r, F)) for lam, F in c.terms))


def is_handpicked(p: CyclicPoint, F) -> bool:
    try:
        for u in range(p.host.n):
            pattern_of(p, F, u)
    except NotHandpicked:
        return False
    return True


def handpicked_everywhere(c: Combination, p: CyclicPoint) -> bool:
    """Tour at every vertex, pattern in the allowed set at every cubic
    vertex, and multiplicity at most 2."""
    for lam, F in c.terms:
        if not is_tour(p.host, F) or any(k > 2 for k in F):
            return False
        for u in range(p.host.n):
            if p.host.degree(u) == 3 and p.e(u) >= 0:
                try:
                    pattern_of(p, F, u)
                except NotHandpicked:
                    return False
    return True


def degree_ok(c: Combination) -> bool:
    G = c.host
    return all(deg_in(G, F, u) % 2 == 0 for _, F in c.terms for u in range(G.n))

