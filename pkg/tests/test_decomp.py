from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from tourglue import generators as gen
from tourglue.decomp import Family, decompose, ojoin_with_degree_cap
from tourglue.graph import InputError, combination_value, deg_in
from tourglue.lp import MembershipError

from stress import KINDS, reconstruct

SETTINGS = settings(max_examples=100, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])


@pytest.mark.parametrize("kind", KINDS)
def test_reconstruction(kind):
    @SETTINGS
    @given(st.integers(0, 10 ** 9))
    def run(seed):
        ok, msg = reconstruct(kind, seed)
        assert ok, msg
    run()


def test_two_factor_of_prism():
    G = gen.prism_graph(3)
    target = (Fraction(2, 3),) * G.m
    c = decompose(G, target, Family.two_factor())
    assert combination_value(c) == target
    assert all(all(deg_in(G, F, u) == 2 for u in range(G.n)) for _, F in c)


def test_non_member_rejected():
    G = gen.k4graph()
    # 1/2 everywhere has degree 3/2, no convex combination of perfect matchings
    with pytest.raises(MembershipError):
        decompose(G, (Fraction(1, 2),) * G.m, Family.matching())
    with pytest.raises(InputError):
        decompose(G, (Fraction(-1, 2),) + (Fraction(1, 2),) * 5, Family.matching())


def test_ojoin_with_degree_cap():
    G = gen.k4graph()
    z = (Fraction(1, 3),) * G.m
    c = ojoin_with_degree_cap(G, z, {0, 1})
    assert combination_value(c) == z
    for _, J in c:
        assert deg_in(G, J, 0) == 1 and deg_in(G, J, 1) == 1
    with pytest.raises(InputError):
        ojoin_with_degree_cap(G, (Fraction(1, 2),) * G.m, {0, 1})
    with pytest.raises(InputError):
        ojoin_with_degree_cap(G, z, {0})
