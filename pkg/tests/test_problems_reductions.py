import pytest
from hypothesis import given, settings, strategies as st

from ppaq import generate as G
from ppaq.acceptance import pairing_golden_check
from ppaq.budget import BudgetExceeded
from ppaq.domains import Range
from ppaq.problems import ChevalleyInstance, ChevSolution, LonelyInstance, TotalityError
from ppaq.reductions import REGISTRY, get_reduction, verify_reduction
from ppaq.reductions.turing import compile_turing
from ppaq.suites import run_one, run_suite, suite_instance


def lonely(edges, designated, size=9, q=3, **kw):
    where = {v: e for e in edges for v in e}
    return LonelyInstance.from_edges(q, Range(size), lambda v: where.get(v, ()), designated, **kw)


def test_lonely_solutions_by_hand():
    L = lonely([(1, 2, 3), (4, 5, 6)], (0,))
    assert L.all_solutions() == [7, 8]
    assert not L.verify(0) and not L.verify(4) and not L.verify(99)
    # a designated vertex inside a hyperedge is itself a solution
    L2 = lonely([(0, 2, 3)], (0,), size=6)
    assert L2.all_solutions() == [0, 1, 4, 5]


def test_premises_are_validated():
    with pytest.raises(ValueError):
        lonely([(1, 2, 3)], (0,), size=8)
    with pytest.raises(ValueError):
        lonely([(1, 2, 3)], (), size=9)


def test_lonely_without_solution_raises_totality():
    # |V| = 4 is not a multiple of 3, so the counting argument does not apply
    L = lonely([(1, 2, 3)], (0,), size=4, check=False)
    with pytest.raises(TotalityError):
        L.brute_solve()


def test_budget_is_enforced():
    L = lonely([(1, 2, 3)], (0,))
    with pytest.raises(BudgetExceeded):
        L.brute_solve(budget=2)


def test_chevalley_rejects_zero_root():
    S = G.random_chevalley(G.rng_for(3), 3, n=4, m=2)
    assert not S.verify(ChevSolution("root", (0,) * 4))
    sol = S.brute_solve()
    assert S.verify(sol) and any(sol.value)


def test_generated_chevalley_meets_degree_condition():
    for s in range(30):
        inst = G.random_chevalley(G.rng_for(s), 3, n=4, m=2)
        assert isinstance(inst, ChevalleyInstance)
        assert sum(inst.system.degrees()) < inst.system.n_vars


def test_registry_has_every_reduction():
    assert len(REGISTRY) >= 14
    for rid, spec in REGISTRY.items():
        assert spec.id == rid
        assert spec.generator is not None


@pytest.mark.parametrize("rid", sorted(REGISTRY))
def test_small_suite(rid):
    res = run_suite(rid, count=12, seed=7)
    assert res["failed"] == 0, res["failures"]


@pytest.mark.parametrize("rid", sorted(REGISTRY))
def test_corrupted_back_map_is_noticed(rid):
    # over a modest batch at least one instance must expose a perturbed back-map
    assert any(run_one(rid, 11, i)["corrupt_detected"] for i in range(40))


def test_suites_are_seed_deterministic():
    a = [suite_instance("A.3b:lonely->leaf", 5, i).all_solutions() for i in range(5)]
    b = [suite_instance("A.3b:lonely->leaf", 5, i).all_solutions() for i in range(5)]
    assert a == b
    r1 = run_suite("3.2:lonely_pk->lonely_p", count=10, seed=3)
    r2 = run_suite("3.2:lonely_pk->lonely_p", count=10, seed=3, jobs=2)
    r1.pop("seconds")
    r2.pop("seconds")
    assert r1 == r2


@given(st.integers(0, 10 ** 6), st.sampled_from([4, 8, 9]))
@settings(max_examples=25, deadline=None)
def test_prime_power_reduction_property(seed, q):
    src = G.random_lonely(G.rng_for(f"pk:{seed}"), q, size={4: 8, 8: 16, 9: 18}[q])
    red = get_reduction("3.2:lonely_pk->lonely_p").build(src)
    assert verify_reduction(src, red).ok


def test_figure_golden_matches():
    ok, bad = pairing_golden_check()
    assert ok, bad


def test_endofline_short_circuit_is_rare_and_sound():
    spec = get_reduction("5.1:endofline->lonely")
    short = 0
    for i in range(60):
        src = G.random_endofline(G.rng_for(f"eol:{i}"))
        red = spec.build(src)
        short += red.short_circuit
        assert verify_reduction(src, red).ok
    assert short < 20


def test_turing_isolated_vertices_decode():
    for i in range(10):
        r = G.rng_for(f"t-tur:{i}")
        src = G.random_turing(r, r.choice([2, 3]))
        red = compile_turing(src)
        sols = red.target.all_solutions()
        assert sols
        for v in sols:
            assert src.verify(red.back_map(v))


def test_hardness_labeling_is_proper():
    from ppaq.labeling import proper_labeling_check
    from ppaq.reductions.chevalley import lonely_to_chevsym
    for i in range(8):
        r = G.rng_for(f"t-hard:{i}")
        src = G.random_lonely_circuit(r, r.choice([2, 3]), n=1, max_gates=3)
        red = lonely_to_chevsym(src)
        g = red.target.g
        assert proper_labeling_check(g, red.info["labeling"]) is None
