"""Polynomials over F_p, CW factors and the congruence |V| = |M| mod p."""

from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ppaq import generate as G
from ppaq.gfpoly import (CoefficientPolynomial, PolynomialSystem, binomial_mod_p, check_cw_lemma,
                         count_max_degree, cw_factors, enumerate_max_degree, fold_exponent, format_polynomial,
                         is_prime, mono_fold, parse_polynomial, roots, system_from_dict, system_to_dict)


def system(p, n, texts):
    return PolynomialSystem.of(n, p, [parse_polynomial(t, n, p) for t in texts])


def brute_roots(S):
    return [x for x in product(range(S.p), repeat=S.n_vars) if S.is_root(x)]


# hand-checked counts; each is also re-derived by brute force below
FROZEN = [
    (3, 2, ["x1 + x2", "x1^2"], 1, 4),
    (3, 3, ["x2*x3 - x1^2"], 9, None),
    (2, 3, ["x1*x2 + x3"], 4, None),
    (5, 2, ["x1^4 + x2^4"], 1, None),
]


@pytest.mark.parametrize("p,n,texts,nroots,M", FROZEN)
def test_frozen_root_counts(p, n, texts, nroots, M):
    S = system(p, n, texts)
    assert len(roots(S)) == nroots
    assert len(brute_roots(S)) == nroots
    if M is not None:
        assert count_max_degree(S) == M


def test_paper_example_factor_sizes():
    S = system(3, 2, ["x1 + x2", "x1^2"])
    sizes = [len(f) for f in cw_factors(S)]
    assert sizes == [6, 3]
    assert sizes[0] * sizes[1] == 18
    rep = check_cw_lemma(S)
    assert (rep.count_V, rep.count_M, rep.congruent) == (1, 4, True)


def test_example_one_has_five_with_x1_zero():
    R = roots(system(3, 3, ["x2*x3 - x1^2"]))
    assert sum(1 for x in R if x[0] == 0) == 5


def test_parse_format_roundtrip():
    f = parse_polynomial("x1^2*x2 + 2*x1 - x3", 3, 5)
    assert format_polynomial(f) == "4*x3 + 2*x1 + x1^2*x2"
    assert parse_polynomial(format_polynomial(f), 3, 5) == f
    assert f.degree() == 3


def test_exponent_folding():
    # x^p = x, x^0 = 1
    assert fold_exponent(5, 3) == 1
    assert fold_exponent(3, 3) == 1
    assert fold_exponent(0, 3) == 0
    assert mono_fold(((0, 5), (1, 3)), 3) == ((0, 1), (1, 1))


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_system_dict_roundtrip():
    S = system(5, 3, ["x1*x2 + 3*x3^2", "x2 - x3"])
    assert system_to_dict(system_from_dict(system_to_dict(S))) == system_to_dict(S)


@st.composite
def polys(draw, p=None, n=None):
    p = p or draw(st.sampled_from([2, 3, 5]))
    n = n or draw(st.integers(1, 3))
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        mono = tuple((i, draw(st.integers(1, 3))) for i in sorted(draw(st.sets(st.integers(0, n - 1), max_size=n))))
        terms[mono] = draw(st.integers(0, p - 1))
    return CoefficientPolynomial(n, p, terms)


@st.composite
def poly_pair(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 3))
    return draw(polys(p, n)), draw(polys(p, n)), draw(st.tuples(*[st.integers(0, p - 1)] * n))


def ev(f, x):
    return PolynomialSystem.of(f.n_vars, f.p, [f]).eval(x)[0]


@given(poly_pair())
@settings(max_examples=150, deadline=None)
def test_ring_ops_agree_with_evaluation(t):
    f, g, x = t
    p = f.p
    assert ev(f + g, x) == (ev(f, x) + ev(g, x)) % p
    assert ev(f - g, x) == (ev(f, x) - ev(g, x)) % p
    assert ev(f * g, x) == ev(f, x) * ev(g, x) % p
    assert ev(-f, x) == -ev(f, x) % p


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_cw_congruence_random_zecote(seed):
    r = G.rng_for(f"t-cw:{seed}")
    p = r.choice([2, 3, 5])
    n = r.randint(1, 3 if p == 5 else 4)
    S = G.random_system(r, p, n, r.randint(1, 3), max_deg=3, max_terms=3)
    rep = check_cw_lemma(S)
    assert rep.congruent
    assert rep.count_V == len(brute_roots(S))
    assert rep.count_M == len(enumerate_max_degree(S))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lucas_exhaustive(p):
    for n in range(61):
        for k in range(n + 1):
            assert binomial_mod_p(n, k, p) == comb(n, k) % p


@given(st.integers(0, 500).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.sampled_from([2, 3, 5, 7]))
def test_lucas_property(nk, p):
    n, k = nk
    assert binomial_mod_p(n, k, p) == comb(n, k) % p


def test_lucas_rejects_k_above_n():
    with pytest.raises(ValueError):
        binomial_mod_p(3, 5, 3)
