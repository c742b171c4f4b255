from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ppaq import generate as G
from ppaq.circuits import (circuit_from_function, circuit_to_system, compose_power, eliminate_const_gates,
                           eval_circuit, format_circuit, identity_circuit, parse_circuit, preprocess_lonely,
                           translate_circuit)
from ppaq.domains import (BitStrings, Interval, Product, QaryStrings, Range, Sequences, Subsets, Union,
                          domain_from_dict)

SAMPLE = """circuit p=3 n=2
0 INPUT 0
1 INPUT 1
2 CONST1
3 ADD 1 0
4 MUL 3 3
5 MUL 1 0
6 MUL 0 3
outputs 3 4
"""


def points(p, n):
    return product(range(p), repeat=n)


def test_sample_circuit_values():
    C = parse_circuit(SAMPLE)
    # outputs (x0 + x1, (x0 + x1)^2) mod 3
    for x in points(3, 2):
        s = (x[0] + x[1]) % 3
        assert eval_circuit(C, x) == (s, s * s % 3)
    assert parse_circuit(format_circuit(C)) == C


def test_identity_and_power():
    I = identity_circuit(3, 2)
    assert all(eval_circuit(I, x) == x for x in points(3, 2))
    C = circuit_from_function(3, 1, lambda v: ((v[0] + 1) % 3,))
    C3 = compose_power(C, 3)
    assert all(eval_circuit(C3, x) == x for x in points(3, 1))
    assert eval_circuit(compose_power(C, 2), (0,)) == (2,)


def circuits():
    return st.integers(0, 10 ** 6).map(lambda s: G.random_circuit(G.rng_for(f"t-circ:{s}"),
                                                                  G.rng_for(s).choice([2, 3]), 2, gates=5))


@given(circuits())
@settings(max_examples=40, deadline=None)
def test_rewrites_preserve_function(C):
    E = eliminate_const_gates(C)
    d = tuple(1 for _ in range(C.n_inputs))
    T = translate_circuit(C, d)
    p = C.p
    for x in points(p, C.n_inputs):
        # const elimination is exact away from the origin and fixes the origin
        want = eval_circuit(C, x) if any(x) else x
        assert eval_circuit(E, x) == want
        xs = tuple((a + b) % p for a, b in zip(x, d))
        assert eval_circuit(T, x) == tuple((a - b) % p for a, b in zip(eval_circuit(C, xs), d))


@given(circuits())
@settings(max_examples=40, deadline=None)
def test_preprocessed_circuit_is_a_union_of_p_cycles(C):
    P = preprocess_lonely(C)
    p = C.p
    for x in points(p, C.n_inputs):
        y = eval_circuit(P, x)
        if y == x:
            continue
        orbit = [x]
        while len(orbit) <= p:
            orbit.append(eval_circuit(P, orbit[-1]))
        assert orbit[p] == x and len(set(orbit[:p])) == p


@given(circuits())
@settings(max_examples=25, deadline=None)
def test_circuit_system_roots_are_the_graph(C):
    C = eliminate_const_gates(C)
    S, gv = circuit_to_system(C)
    n, p = C.n_inputs, C.p
    from ppaq.gfpoly import roots
    graph = {}
    for z in roots(S):
        x = tuple(z[i] for i in gv.x)
        y = tuple(z[i] for i in gv.y)
        graph.setdefault(x, set()).add(y)
    assert set(graph) == set(points(p, n))
    for x, ys in graph.items():
        assert ys == {eval_circuit(C, x)}


DOMAINS = [
    Range(5),
    Interval(3, 9),
    QaryStrings(3, 2),
    BitStrings(3),
    Subsets(Range(6), 3),
    Subsets(QaryStrings(2, 2), 2),
    Product((Range(2), QaryStrings(3, 1))),
    Union((Range(2), Subsets(Range(4), 2))),
    Sequences(Range(3), 2),
]


@pytest.mark.parametrize("D", DOMAINS, ids=lambda D: type(D).__name__)
def test_rank_is_a_bijection(D):
    seen = [D.unrank(r) for r in range(D.size)]
    assert len(set(seen)) == D.size
    assert [D.rank(v) for v in seen] == list(range(D.size))
    assert list(D) == seen
    assert domain_from_dict(D.to_dict()) == D
    with pytest.raises(ValueError):
        D.unrank(D.size)


def test_subset_colex_order():
    D = Subsets(Range(4), 2)
    assert [D.unrank(r) for r in range(D.size)] == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert D.size == comb(4, 2)


def test_sequence_sizes():
    assert Sequences(Range(3), 2).size == 3 + 9
    assert len(Sequences(Range(3), 2).unrank(5)) == 2
