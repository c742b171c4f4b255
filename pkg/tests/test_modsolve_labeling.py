from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ppaq import generate as G
from ppaq.acceptance import chain_labeling_system, violated_conditions
from ppaq.errors import PreconditionError
from ppaq.gfpoly import count_max_degree
from ppaq.labeling import labeled_degree, proper_labeling_check, system_monomials, trivial_labeling
from ppaq.modsolve import (bis_to_chevalley, check_solution, format_matrix, kernel_mod_p, kernel_vector_f2,
                           kernel_vector_f3, n_of, read_matrix, sis_required_n, sis_to_chevalley,
                           solve_bis_pow2, solve_sis_2k3l)
from ppaq.problems import BisInstance, SisInstance, bis_condition, sis_condition


def test_kernel_examples():
    assert kernel_mod_p([[1, 1, 0]], 2) == (1, 1, 0)
    assert kernel_vector_f3([[1, 1, 1]]) == (1, -1, 0)
    assert kernel_mod_p([[0, 0], [0, 0]], 5) == (1, 0)
    assert kernel_mod_p([[1, 0], [0, 1]], 3) is None
    with pytest.raises(PreconditionError):
        kernel_vector_f2([[1, 0], [0, 1]])


def test_n_of():
    assert n_of(12).factors == ((2, 2), (3, 1))
    assert n_of(12).N == 3
    assert n_of(7).N == 1
    assert n_of(1).N == 0


def test_parameter_conditions():
    # BIS_4 with m = 1 needs (1+1)^2 * 3 = 12 columns
    assert bis_condition(1, 12, 4) and not bis_condition(1, 11, 4)
    # SIS_6 with m = 1: ((1+1)/2)^2 * 5 = 5
    assert sis_condition(1, 5, 6) and not sis_condition(1, 4, 6)


def test_sis2_is_not_total_at_the_condition():
    # A = I_3 satisfies n >= (m+1)/2 but only x = 0 solves it
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert sis_condition(3, 3, 2)
    assert not any(check_solution(A, x, 2, (-1, 0, 1)) for x in product((-1, 0, 1), repeat=3))
    assert sis_required_n(3, 1, 0) == 4
    with pytest.raises(PreconditionError):
        solve_sis_2k3l(A, 1, 0)


def test_bis4_regression_vector():
    x = solve_bis_pow2([[1] * 12], 2)
    assert x == (1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_bis_pow2_property(seed, k, m):
    q = 2 ** k
    r = G.rng_for(f"t-bis:{seed}")
    A = G.random_matrix(r, m, (m + 1) ** k * (q - 1), q)
    x = solve_bis_pow2(A, k)
    assert check_solution(A, x, q, (0, 1))


@given(st.integers(0, 10 ** 6), st.sampled_from([(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (3, 0)]),
       st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_sis_2k3l_property(seed, kl, m):
    k, l = kl
    q = 2 ** k * 3 ** l
    r = G.rng_for(f"t-sis:{seed}")
    A = G.random_matrix(r, m, sis_required_n(m, k, l), q)
    x = solve_sis_2k3l(A, k, l)
    assert check_solution(A, x, q, (-1, 0, 1))


@pytest.mark.parametrize("p", [3, 5])
def test_linear_to_chevalley_roundtrip(p):
    for i in range(6):
        r = G.rng_for(f"t-chev:{p}:{i}")
        b = G.random_bis(r, p, m=1)
        red = bis_to_chevalley(b)
        assert sum(red.target.system.degrees()) < red.target.system.n_vars
        assert b.verify(red.back_map(red.target.brute_solve()))
        s = G.random_sis(r, p, m=1)
        red = sis_to_chevalley(s)
        assert s.verify(red.back_map(red.target.brute_solve()))


def test_linear_to_chevalley_preconditions():
    with pytest.raises(PreconditionError):
        bis_to_chevalley([[1, 2, 3]], p=4)
    with pytest.raises(PreconditionError):
        sis_to_chevalley([[1, 1, 1]], p=2)
    with pytest.raises(PreconditionError):
        bis_to_chevalley([[1, 2]], p=3)


def test_matrix_file_roundtrip():
    A = [[1, 2, 3], [4, 5, 6]]
    assert read_matrix(format_matrix(A, 7)) == (A, 7)
    with pytest.raises(ValueError):
        read_matrix("2 3 7\n1 2 3\n")


def test_generated_linear_instances_meet_conditions():
    for i in range(20):
        r = G.rng_for(f"t-lin:{i}")
        b = G.random_bis(r, 4, m=1)
        s = G.random_sis(r, 6, m=2)
        assert isinstance(b, BisInstance) and bis_condition(len(b.A), len(b.A[0]), 4)
        assert isinstance(s, SisInstance) and sis_condition(len(s.A), len(s.A[0]), 6)


# ---------------------------------------------------------------- labelings

def test_example_two_labeling():
    S, L = chain_labeling_system()
    assert proper_labeling_check(S, L) is None
    assert sum(labeled_degree(f, row) for f, row in zip(S.polys, L)) < S.n_vars
    assert count_max_degree(S) % 2 == 0


def test_trivial_labeling_on_random_systems():
    for i in range(50):
        r = G.rng_for(f"t-triv:{i}")
        S = G.random_system(r, r.choice([2, 3]), r.randint(1, 4), r.randint(1, 3), max_deg=3, max_terms=3)
        assert proper_labeling_check(S, trivial_labeling(S)) is None


@pytest.mark.parametrize("cond", [1, 2, 3, 4, 5, 6])
def test_mutations_are_caught(cond):
    for i in range(40):
        r = G.rng_for(f"t-mut:{cond}:{i}")
        S, L = G.random_labeled_system(r, r.choice([2, 3]) if cond != 3 else 3, mutate=cond)
        assert proper_labeling_check(S, L) == cond
        assert cond in violated_conditions(S, L)


def test_unmutated_labelings_are_proper():
    for i in range(40):
        r = G.rng_for(f"t-ok:{i}")
        S, L = G.random_labeled_system(r, r.choice([2, 3]))
        assert proper_labeling_check(S, L) is None
        assert not violated_conditions(S, L)
        assert len(L) == len(system_monomials(S))
