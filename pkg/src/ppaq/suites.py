"""Seeded desk-scale instance suites for every registered reduction.

Instance i of a suite for reduction ``rid`` under seed s is drawn from
``random.Random(f"{rid}:{s}:{i}")``, so suites are reproducible and
independent of scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from . import generate as G
from .reductions import REGISTRY, verify_reduction

__all__ = ["SUITE_GENERATORS", "suite_rng", "suite_instance", "run_one", "run_suite"]


def _pk(r):
    q = r.choice([4, 8, 9])
    return G.random_lonely(r, q, size={4: 8, 8: 16, 9: 18}[q])


def _small_p(r):
    return r.choice([2, 3, 5])


SUITE_GENERATORS = {
    "A.1a:leaf->leafprime": lambda r: G.random_leaf(r, _small_p(r)),
    "A.1b:leafprime->leaf": lambda r: G.random_leafprime(r, _small_p(r)),
    "A.2a:leafprime->bipartite": lambda r: G.random_leafprime(r, _small_p(r)),
    "A.2b:bipartite->leafprime": lambda r: G.random_bipartite(r, _small_p(r)),
    "A.3a:leaf->lonely": lambda r: G.random_leaf(r, _small_p(r)),
    "A.3b:lonely->leaf": lambda r: G.random_lonely(r, _small_p(r)),
    "A.4a:bipartite->succbipartite": lambda r: G.random_bipartite(r, _small_p(r)),
    "A.4b:succbipartite->twomatchings": lambda r: G.random_succbipartite(r, _small_p(r)),
    "A.4c:twomatchings->lonely": lambda r: G.random_twomatchings(r, _small_p(r)),
    "A.2:lonely->lonely_k": lambda r: G.random_lonely(r, _small_p(r)),
    "A.2:lonely->mod": lambda r: G.random_lonely(r, _small_p(r)),
    "A.2:mod->lonely": lambda r: G.random_mod(r, _small_p(r)),
    "3.1a:amp->lonely_qr": lambda r: G.random_amp(r, r.choice([(2, 3), (3, 2), (2, 5)])),
    "3.1b:bipartite_qr->amp": lambda r: G.random_bipartite(r, r.choice([6, 10])),
    "3.2:lonely_pk->lonely_p": _pk,
    "4:chevalley->general": lambda r: G.random_chevalley(r, r.choice([2, 3])),
    "4:general->chevsym": lambda r: G.random_general(r, r.choice([2, 3])),
    "4:chevsym->succbipartite": lambda r: G.random_chevsym(r, r.choice([2, 3])),
    "4:lonely->chevsym": lambda r: G.random_lonely_circuit(r, r.choice([2, 3]), n=1, max_gates=3),
    "5.1:endofline->lonely": G.random_endofline,
    "5.3:turing->lonely": lambda r: G.random_turing(r, r.choice([2, 3])),
    "6:bis->chevalley": lambda r: G.random_bis(r, 3, m=1),
    "6:sis->chevalley": lambda r: G.random_sis(r, r.choice([3, 5]), m=1),
}

for _rid, _gen in SUITE_GENERATORS.items():
    REGISTRY[_rid].generator = _gen


def suite_rng(rid, seed, i):
    return G.rng_for(f"{rid}:{seed}:{i}")


def suite_instance(rid, seed, i):
    return REGISTRY[rid].generator(suite_rng(rid, seed, i))


def run_one(rid, seed, i, budget=None):
    """Round-trip one suite instance; returns a plain dict."""
    spec = REGISTRY[rid]
    src = suite_instance(rid, seed, i)
    red = spec.build(src)
    rt = verify_reduction(src, red, budget)
    bad = verify_reduction(src, red, budget, corrupt=True)
    return {"index": i, "ok": rt.ok, "checked": rt.checked, "exhaustive": rt.exhaustive,
            "short_circuit": rt.short_circuit, "corrupt_detected": not bad.ok,
            "failures": rt.as_dict()["failures"]}


def _star(args):
    return run_one(*args)


def run_suite(rid, count=200, seed=0, budget=None, jobs=1):
    """Soundness suite: every target solution must back-map; corruption must be noticed somewhere."""
    if rid not in REGISTRY:
        raise KeyError(f"unknown reduction id {rid!r}")
    t0 = time.perf_counter()
    args = [(rid, seed, i, budget) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_star, args, chunksize=max(1, count // (4 * jobs))))
    else:
        rows = [run_one(*a) for a in args]
    rows.sort(key=lambda r: r["index"])
    passed = sum(r["ok"] for r in rows)
    return {
        "id": rid,
        "count": count,
        "seed": seed,
        "prng": G.PRNG_NAME,
        "passed": passed,
        "failed": count - passed,
        "exhaustive": sum(r["exhaustive"] for r in rows),
        "short_circuit": sum(r["short_circuit"] for r in rows),
        "corrupt_detected": sum(r["corrupt_detected"] for r in rows),
        "ok": passed == count and any(r["corrupt_detected"] for r in rows),
        "seconds": round(time.perf_counter() - t0, 3),
        "failures": [r for r in rows if not r["ok"]][:5],
    }
