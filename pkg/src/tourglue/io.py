"""Text formats for instances, edge vectors and tour combinations.

Instance:    "n m theta_num theta_den", then m lines "u v num den".
             theta_den = 0 marks a plain graph (uniform commands).
Vector:      "m", then m lines "num den" in edge order.
Combination: "n k", then per term "lam_num lam_den m_i" and m_i lines
             "u v mult", edges in host order.  Parallel host edges are
             matched in order of appearance; a "u v 0" line stands for an
             unused copy ahead of a used one.
Blank lines and anything after '#' are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Combination, Graph, InputError, merge_terms


@dataclass(frozen=True)
class Instance:
    graph: Graph
    x: tuple
    theta: Fraction | None = None  # None for plain graphs


def _lines(text: str):
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if s:
            yield s.split()


def _ints(tok, k, what):
    if len(tok) != k:
        raise InputError(f"{what}: expected {k} fields, got {len(tok)}")
    try:
        return [int(t) for t in tok]
    except ValueError as exc:
        raise InputError(f"{what}: non-integer field in {' '.join(tok)}") from exc


def _rat(num, den, what) -> Fraction:
    if den <= 0:
        raise InputError(f"{what}: denominator {den} must be positive")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise InputError(f"{what}: {num}/{den} is not in lowest terms")
    return q


def parse_instance(text: str) -> Instance:
    it = _lines(text)
    try:
        head = next(it)
    except StopIteration:
        raise InputError("empty instance") from None
    n, m, tn, td = _ints(head, 4, "instance header")
    if n < 1 or m < 0:
        raise InputError("instance header: bad sizes")
    theta = None if td == 0 else _rat(tn, td, "theta")
    edges, x = [], []
    for j in range(m):
        try:
            tok = next(it)
        except StopIteration:
            raise InputError(f"instance has {j} edge lines, header says {m}") from None
        u, v, a, b = _ints(tok, 4, f"edge line {j}")
        edges.append((u, v))
        x.append(_rat(a, b, f"edge line {j}"))
    if next(it, None) is not None:
        raise InputError("trailing lines after the edge list")
    return Instance(Graph(n, tuple(edges)), tuple(x), theta)


def format_instance(inst: Instance) -> str:
    G = inst.graph
    th = (0, 0) if inst.theta is None else (inst.theta.numerator, inst.theta.denominator)
    out = [f"{G.n} {G.m} {th[0]} {th[1]}"]
    for (u, v), q in zip(G.edges, inst.x):
        q = Fraction(q)
        out.append(f"{u} {v} {q.numerator} {q.denominator}")
    return "\n".join(out) + "\n"


def plain_instance(G: Graph) -> Instance:
    return Instance(G, (Fraction(1),) * G.m, None)


def parse_vector(text: str, m: int | None = None) -> tuple:
    it = _lines(text)
    try:
        (k,) = _ints(next(it), 1, "vector header")
    except StopIteration:
        raise InputError("empty vector file") from None
    if m is not None and k != m:
        raise InputError(f"vector has {k} entries, instance has {m} edges")
    out = []
    for j in range(k):
        try:
            a, b = _ints(next(it), 2, f"vector line {j}")
        except StopIteration:
            raise InputError("vector file too short") from None
        out.append(_rat(a, b, f"vector line {j}"))
    if next(it, None) is not None:
        raise InputError("trailing lines in vector file")
    return tuple(out)


def format_vector(y) -> str:
    ys = [Fraction(q) for q in y]
    return "\n".join([str(len(ys))] + [f"{q.numerator} {q.denominator}" for q in ys]) + "\n"


def format_combination(c: Combination) -> str:
    G = c.host
    out = [f"{G.n} {len(c.terms)}"]
    copies = {}
    for e, (u, v) in enumerate(G.edges):
        copies.setdefault((min(u, v), max(u, v)), []).append(e)
    for lam, F in c.terms:
        lines = []
        for e, (u, v) in enumerate(G.edges):
            if F[e]:
                lines.append((u, v, F[e]))
            elif any(F[h] for h in copies[(min(u, v), max(u, v))] if h > e):
                lines.append((u, v, 0))
        out.append(f"{lam.numerator} {lam.denominator} {len(lines)}")
        out.extend(f"{u} {v} {k}" for u, v, k in lines)
    return "\n".join(out) + "\n"


def parse_combination(text: str, host: Graph) -> Combination:
    it = _lines(text)
    try:
        n, k = _ints(next(it), 2, "combination header")
    except StopIteration:
        raise InputError("empty combination file") from None
    if n != host.n:
        raise InputError(f"combination is on {n} vertices, instance has {host.n}")
    slots = {}
    for e, (u, v) in enumerate(host.edges):
        slots.setdefault((min(u, v), max(u, v)), []).append(e)
    terms = []
    for t in range(k):
        try:
            a, b, mi = _ints(next(it), 3, f"term {t} header")
        except StopIteration:
            raise InputError(f"combination has {t} terms, header says {k}") from None
        lam = _rat(a, b, f"term {t} multiplier")
        F = [0] * host.m
        used = {}
        for j in range(mi):
            try:
                u, v, mult = _ints(next(it), 3, f"term {t} edge {j}")
            except StopIteration:
                raise InputError(f"term {t} is truncated") from None
            key = (min(u, v), max(u, v))
            pos = used.get(key, 0)
            if key not in slots or pos >= len(slots[key]):
                raise InputError(f"term {t}: {u}-{v} is not an edge of the instance")
            if mult < 0:
                raise InputError(f"term {t}: negative multiplicity {mult}")
            F[slots[key][pos]] = mult
            used[key] = pos + 1
        terms.append((lam, tuple(F)))
    if next(it, None) is not None:
        raise InputError("trailing lines in combination file")
    return Combination(host, tuple(terms))


def canonical(c: Combination) -> Combination:
    return merge_terms(c.host, c.terms)


def read_text(path: str) -> str:
    import sys
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def write_text(path: str | None, text: str):
    import sys
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)
