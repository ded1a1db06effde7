from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tourglue import generators as gen
from tourglue.graph import Combination, Graph, InputError
from tourglue.io import (Instance, canonical, format_combination, format_instance,
                         format_vector, parse_combination, parse_instance, parse_vector,
                         plain_instance)

rats = st.fractions(min_value=0, max_value=3, max_denominator=50)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(2, 7))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, min_size=1, max_size=12))
    return Graph(n, tuple(edges))


@st.composite
def instances(draw):
    G = draw(multigraphs())
    x = tuple(draw(st.lists(rats, min_size=G.m, max_size=G.m)))
    th = draw(st.none() | st.fractions(min_value=Fraction(1, 50), max_value=Fraction(1, 2),
                                       max_denominator=50))
    return Instance(G, x, th)


@st.composite
def combinations(draw):
    G = draw(multigraphs())
    k = draw(st.integers(1, 5))
    terms = []
    for _ in range(k):
        F = tuple(draw(st.lists(st.integers(0, 2), min_size=G.m, max_size=G.m)))
        lam = draw(st.fractions(min_value=Fraction(1, 100), max_value=1, max_denominator=100))
        terms.append((lam, F))
    return Combination(G, tuple(terms))


@settings(max_examples=200, deadline=None)
@given(instances())
def test_instance_round_trip(inst):
    text = format_instance(inst)
    assert parse_instance(text) == inst
    assert format_instance(parse_instance(text)) == text


@settings(max_examples=200, deadline=None)
@given(combinations())
def test_combination_round_trip(c):
    back = parse_combination(format_combination(c), c.host)
    assert back.terms == tuple((lam, F) for lam, F in c.terms)
    assert format_combination(back) == format_combination(c)
    assert canonical(back) == canonical(c)


@given(st.lists(rats, min_size=0, max_size=20))
def test_vector_round_trip(y):
    assert parse_vector(format_vector(y)) == tuple(y)


def test_parallel_second_copy():
    G = Graph(2, ((0, 1), (0, 1)))
    c = Combination(G, ((Fraction(1), (0, 2)),))
    text = format_combination(c)
    assert "0 1 0" in text
    assert parse_combination(text, G).terms[0][1] == (0, 2)


def test_instance_errors():
    th, G, x = gen.k4half()
    text = format_instance(Instance(G, x, th))
    assert parse_instance("# comment\n" + text.replace("\n", "  # tail\n", 1)).theta == th
    with pytest.raises(InputError):
        parse_instance("")
    with pytest.raises(InputError):
        parse_instance(text.replace("1 2\n", "2 4\n", 1))  # not in lowest terms
    with pytest.raises(InputError):
        parse_instance(text + "0 1 1 2\n")
    with pytest.raises(InputError):
        parse_instance("4 6 1 2\n0 1 1 2\n")
    with pytest.raises(InputError):
        parse_instance("4 1 1 2\n0 0 1 1\n")  # loop
    with pytest.raises(InputError):
        parse_instance("4 1 1 2\n0 1 a 1\n")


def test_combination_errors():
    G = gen.k4graph()
    with pytest.raises(InputError):
        parse_combination("5 1\n1 1 0\n", G)
    with pytest.raises(InputError):
        parse_combination("4 1\n1 1 1\n0 9 1\n", G)
    with pytest.raises(InputError):
        parse_combination("4 2\n1 1 1\n0 1 1\n", G)
    with pytest.raises(InputError):
        parse_combination("4 1\n1 1 1\n0 1 -1\n", G)


def test_vector_errors():
    with pytest.raises(InputError):
        parse_vector("2\n1 2\n", 2)
    with pytest.raises(InputError):
        parse_vector("1\n1 2\n", 2)
    with pytest.raises(InputError):
        parse_vector("1\n1 0\n")


def test_plain_instance():
    inst = plain_instance(gen.octahedron())
    assert inst.theta is None
    back = parse_instance(format_instance(inst))
    assert back.theta is None and back.graph.m == 12
