import random
from fractions import Fraction

import pytest

from tourglue.connectors import PSpec, connectors_with_P
from tourglue.decomp import Family, decompose
from tourglue.graph import combination_value
from tourglue.lp import MembershipError
from tourglue.matchings import partition_induced_matchings
from tourglue.parity import (case_check, certify_ojoin_membership, exhaustive_ojoin_check,
                             odd_vertices, parity_correct, parity_vector)

from suite import base_case_instances

BASE = base_case_instances(10, nmax=14)


def test_parity_vector_values(k4h):
    pv = parity_vector(k4h, {5})
    half, q = Fraction(1, 2), Fraction(1, 4)
    assert pv.z == (q, q, q, q, half, q)


@pytest.mark.parametrize("idx", range(len(BASE)))
def test_certificates_agree_with_decomposition(idx):
    _, p = BASE[idx]
    mp = partition_induced_matchings(p, 0)
    for M in mp.parts:
        pv = parity_vector(p, M)
        conn = connectors_with_P(p, PSpec(0, M))
        for O in sorted({odd_vertices(p.host, T) for _, T in conn}, key=sorted)[:3]:
            ex = exhaustive_ojoin_check(p.host, pv.z, O)
            assert ex, (ex.U, ex.A)
            assert case_check(p, pv, O)
            c = parity_correct(p, [T for _, T in conn if odd_vertices(p.host, T) == O][0], pv)
            assert combination_value(c) == pv.z
            assert all(odd_vertices(p.host, J) == O for _, J in c)


@pytest.mark.parametrize("seed", range(6))
def test_violation_found_by_both_routes(seed):
    # shrink z until some odd-set constraint breaks; both routes must say no
    _, p = BASE[seed]
    rng = random.Random(seed)
    O = frozenset(rng.sample(range(p.host.n), 4))
    z = tuple(Fraction(1, 6) for _ in range(p.host.m))
    ex = exhaustive_ojoin_check(p.host, z, O)
    assert not ex and ex.U is not None
    # the reported constraint is really violated
    D = p.host.delta(ex.U)
    A = set(ex.A)
    assert sum(z[e] for e in D if e not in A) - sum(z[e] for e in A) < 1 - len(A)
    with pytest.raises(MembershipError):
        decompose(p.host, z, Family.ojoin(O))


def test_odd_O_rejected(k4h):
    pv = parity_vector(k4h, set())
    assert not exhaustive_ojoin_check(k4h.host, pv.z, {0})
    assert not case_check(k4h, pv, {0})


def test_dispatch_threshold(k4h):
    pv = parity_vector(k4h, set())
    assert certify_ojoin_membership(k4h, pv, {0, 1}).method == "exhaustive"
    assert certify_ojoin_membership(k4h, pv, {0, 1}, threshold=2).method == "cases"
