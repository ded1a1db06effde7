from fractions import Fraction

import pytest

from tourglue.connectors import (PSpec, connectors_with_P, far_ones, rainbow_parts,
                                 shift_allowed, verify_property_P)
from tourglue.graph import InputError, deg_in
from tourglue.matchings import partition_induced_matchings

from suite import base_case_instances

BASE = base_case_instances(8, nmax=14)


def test_k4half_far_ones(k4h):
    # both fractional neighbours of 0 sit on the 1-edge 13
    assert far_ones(k4h, 0) == (5, 5)
    assert not shift_allowed(k4h, 0, {5})
    assert not shift_allowed(k4h, 0, {4})
    assert shift_allowed(k4h, 0, set())


@pytest.mark.parametrize("L", [Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)])
def test_k4half_empty_matching(k4h, L):
    spec = PSpec(0, frozenset(), L)
    c = connectors_with_P(k4h, spec)
    assert verify_property_P(c, k4h, spec)


def test_k4half_blocked_shift(k4h):
    with pytest.raises(InputError):
        connectors_with_P(k4h, PSpec(0, frozenset({5}), Fraction(1, 4)))
    spec = PSpec(0, frozenset({5}))
    assert verify_property_P(connectors_with_P(k4h, spec), k4h, spec)


def test_spec_rejections(k4h):
    with pytest.raises(InputError):
        connectors_with_P(k4h, PSpec(0, frozenset({0})))  # not a 1-edge
    with pytest.raises(InputError):
        connectors_with_P(k4h, PSpec(0, frozenset({4, 5})))  # not induced
    with pytest.raises(InputError):
        connectors_with_P(k4h, PSpec(0, frozenset(), Fraction(3, 4)))


@pytest.mark.parametrize("idx", range(len(BASE)))
def test_property_P_on_partition_parts(idx):
    _, p = BASE[idx]
    for v in (0, p.host.n - 1):
        mp = partition_induced_matchings(p, v)
        for M in mp.parts:
            L = p.theta / 2 if shift_allowed(p, v, M) else Fraction(0)
            spec = PSpec(v, M, L)
            c = connectors_with_P(p, spec)
            v_ = verify_property_P(c, p, spec)
            assert v_, v_.reason


def test_protect_keeps_degree_two():
    _, p = BASE[0]
    v = 0
    M = partition_induced_matchings(p, v).parts[0]
    parts = rainbow_parts(p, M, protect=range(p.host.n), v=v)
    extra = parts[2 * len(M):]
    assert extra
    c = connectors_with_P(p, PSpec(v, M, Fraction(0), tuple(range(p.host.n))))
    for (f, g) in extra:
        u = set(p.host.edges[f]) & set(p.host.edges[g])
        (u,) = u
        assert all(deg_in(p.host, T, u) == 2 for _, T in c)
