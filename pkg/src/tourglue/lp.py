"""Linear algebra for the decomposition engine.

A float master (HiGHS through scipy) drives column generation; the final
support is then re-solved in exact integer arithmetic.  If that exact solve
fails, an exact phase-1 revised simplex with Bland's rule takes over, with
exact pricing.  Nothing returned from here is ever a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

import highspy
import numpy as np

SCALE = 1 << 40
TOL = 1e-9


class MembershipError(ValueError):
    """Target is not a convex combination of the family (or the engine gave up)."""


def int_weights(w) -> list:
    """Scale weights to integers for the combinatorial oracles."""
    if all(isinstance(a, (int, Fraction)) for a in w):
        den = 1
        for a in w:
            if isinstance(a, Fraction):
                den = den * a.denominator // math.gcd(den, a.denominator)
        return [int(a * den) for a in w]
    return [int(round(float(a) * SCALE)) for a in w]


def exact_solve(cols: Sequence[Sequence[int]], b: Sequence[Fraction]):
    """Exact solution lam of sum_j lam_j cols[j] = b, or None.

    Fraction-free (Bareiss) elimination on the augmented integer matrix.
    Returns None if the system is inconsistent or the columns are dependent.
    """
    r, k = len(b), len(cols)
    den = 1
    for q in b:
        den = den * q.denominator // math.gcd(den, q.denominator)
    M = [[int(cols[j][i]) for j in range(k)] + [int(b[i] * den)] for i in range(r)]
    piv_rows = []
    prev = 1
    row = 0
    for c in range(k):
        p = next((i for i in range(row, r) if M[i][c] != 0), None)
        if p is None:
            return None
        M[row], M[p] = M[p], M[row]
        pv = M[row][c]
        for i in range(row + 1, r):
            a = M[i][c]
            Mi, Mr = M[i], M[row]
            for j in range(c, k + 1):
                Mi[j] = (pv * Mi[j] - a * Mr[j]) // prev
        prev = pv
        piv_rows.append(row)
        row += 1
    for i in range(row, r):
        if M[i][k] != 0:
            return None
    lam = [Fraction(0)] * k
    for c in range(k - 1, -1, -1):
        i = piv_rows[c]
        s = Fraction(M[i][k])
        for j in range(c + 1, k):
            s -= M[i][j] * lam[j]
        lam[c] = s / M[i][c]
    return [q / den for q in lam]


class _FloatMaster:
    """Phase-1 master min 1.(s+ + s-) s.t. A lam + s+ - s- = b, kept alive in
    HiGHS so that each added column warm-starts from the previous basis."""

    def __init__(self, b: np.ndarray):
        self.r = r = len(b)
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        inf = highspy.kHighsInf
        for q in b:
            h.addRow(float(q), float(q), 0, np.array([], dtype=np.int32), np.array([]))
        for i in range(r):
            for sgn in (1.0, -1.0):
                h.addCol(1.0, 0.0, inf, 1, np.array([i], dtype=np.int32), np.array([sgn]))
        self.h = h
        self.k = 0

    def add(self, a):
        idx = np.array([i for i, t in enumerate(a) if t], dtype=np.int32)
        val = np.array([float(a[i]) for i in idx])
        self.h.addCol(0.0, 0.0, highspy.kHighsInf, len(idx), idx, val)
        self.k += 1

    def solve(self):
        h = self.h
        h.run()
        if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
            raise MembershipError(f"float master failed: {h.modelStatusToString(h.getModelStatus())}")
        sol = h.getSolution()
        obj = h.getInfo().objective_function_value
        lam = np.array(sol.col_value[2 * self.r:])
        return obj, lam, np.array(sol.row_dual)


def exact_phase1(b: Sequence[Fraction], pool: list, price: Callable | None, max_pivots=20000):
    """Exact phase-1 revised simplex over columns `pool` (integer tuples that
    already include the convexity entry).  `price(y)` may return a new column
    with y.a > 0 for exact duals y.  Returns (lam list aligned with pool) or
    raises MembershipError."""
    r = len(b)
    b = [Fraction(q) for q in b]
    ART = 1 << 60
    basis = [ART + i for i in range(r)]
    Binv = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    xB = list(b)
    pool = list(pool)
    index = {tuple(c): j for j, c in enumerate(pool)}

    def col(j):
        return pool[j]

    for _ in range(max_pivots):
        if all(xB[i] == 0 for i in range(r) if basis[i] >= ART):
            lam = [Fraction(0)] * len(pool)
            for i, jb in enumerate(basis):
                if jb < ART:
                    lam[jb] = xB[i]
            return lam, pool
        cB = [1 if jb >= ART else 0 for jb in basis]
        y = [sum(cB[i] * Binv[i][t] for i in range(r) if cB[i]) for t in range(r)]
        enter = None
        inb = set(basis)
        for j in range(len(pool)):
            if j in inb:
                continue
            if sum(y[t] * c for t, c in enumerate(col(j)) if c) > 0:
                enter = j
                break
        if enter is None and price is not None:
            a = price(y)
            if a is not None and sum(y[t] * c for t, c in enumerate(a) if c) > 0:
                a = tuple(a)
                if a not in index:
                    index[a] = len(pool)
                    pool.append(a)
                enter = index[a]
                if enter in inb:
                    enter = None
        if enter is None:
            raise MembershipError("exact phase 1 stalled with positive infeasibility")
        a = col(enter)
        u = [sum(Binv[i][t] * a[t] for t in range(r) if a[t]) for i in range(r)]
        best = None
        for i in range(r):
            if u[i] > 0:
                key = (xB[i] / u[i], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise MembershipError("unbounded phase 1 (cannot happen)")
        _, p = best
        piv = u[p]
        Binv[p] = [q / piv for q in Binv[p]]
        xB[p] = xB[p] / piv
        for i in range(r):
            if i != p and u[i] != 0:
                f = u[i]
                Bi, Bp = Binv[i], Binv[p]
                Binv[i] = [Bi[t] - f * Bp[t] for t in range(r)]
                xB[i] -= f * xB[p]
        basis[p] = enter
    raise MembershipError("exact phase 1 pivot limit")


def column_generation(b: Sequence[Fraction], price: Callable, seeds: Sequence,
                      max_iter: int = 2000) -> list:
    """Write b as sum lam_j a_j with lam >= 0, sum lam = 1, a_j from the family.

    `b` is the per-row target (without the convexity row).  `price(w)` must
    return family columns (integer tuples of len(b)) maximizing w.a for the
    given weights (floats or Fractions).  Returns [(lam, a)] with exact lam.
    """
    r = len(b)
    bt = [Fraction(q) for q in b] + [Fraction(1)]
    bf = np.array([float(q) for q in bt])
    pool, seen = [], set()

    def add(a):
        a = tuple(int(t) for t in a)
        if a not in seen:
            seen.add(a)
            pool.append(a)
            return True
        return False

    for a in seeds:
        add(a)
    if not pool:
        for a in price([float(q) for q in b]):
            add(a)
    master = _FloatMaster(bf)
    for a in pool:
        master.add(a + (1,))
    obj = None
    for _ in range(max_iter):
        obj, lamf, y = master.solve()
        new = False
        for a in price(list(y[:r])):
            if float(np.dot(y[:r], a)) + y[r] > TOL and add(a):
                master.add(pool[-1] + (1,))
                new = True
        if not new:
            break
    else:
        raise MembershipError("column generation iteration limit")
    if obj > 1e-7:
        raise MembershipError(f"target outside the family hull (residual {obj:.3g})")
    support = [j for j in range(len(pool)) if lamf[j] > 1e-12]
    cols = [pool[j] + (1,) for j in support]
    lam = exact_solve(cols, bt)
    if lam is not None and all(q >= 0 for q in lam):
        return [(q, pool[j]) for q, j in zip(lam, support) if q > 0]

    def exact_price(yex):
        best = None
        for a in price(yex[:r]):
            val = sum(yex[t] * c for t, c in enumerate(a) if c) + yex[r]
            if val > 0 and (best is None or val > best[0]):
                best = (val, tuple(a) + (1,))
        return None if best is None else best[1]

    lam, cols = exact_phase1(bt, [a + (1,) for a in pool], exact_price)
    return [(q, a[:-1]) for q, a in zip(lam, cols) if q > 0]
