"""The ten acceptance criteria as runnable checks.

Each ``criterion_k()`` returns a :class:`Criterion` with a pass flag, the
measured numbers and the wall time.  ``run_all`` runs them in order.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import comb
from pathlib import Path

from . import generate as G
from .domains import QaryStrings
from .gfpoly import (PolynomialSystem, binomial_mod_p, check_cw_lemma,
                     count_max_degree, cw_factors, enumerate_max_degree, parse_polynomial, roots)
from .labeling import labeled_degree, proper_labeling_check, system_monomials, trivial_labeling
from .modsolve import (check_solution, kernel_vector_f2, kernel_vector_f3, sis_required_n,
                       solve_bis_pow2, solve_sis_2k3l)
from .oracles import TableOracle
from .problems import LonelyInstance, SisInstance
from .reductions import REGISTRY, verify_reduction
from .reductions.chevalley import lonely_to_chevsym
from .reductions.primes import lonely_pk_to_lonely_p
from .reductions.turing import compile_turing
from .suites import run_suite

__all__ = ["Criterion", "CRITERIA", "run_all", "violated_conditions", "pairing_golden_check",
           "chain_labeling_system"] + [f"criterion_{i}" for i in range(1, 11)]

GOLDEN_PAIRS = Path(__file__).with_name("data") / "pairing_golden.json"


@dataclass
class Criterion:
    number: int
    title: str
    ok: bool = False
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'} criterion {self.number}: {self.title} ({self.seconds:.2f}s) {json.dumps(self.details, sort_keys=True, default=str)}"

    def as_dict(self):
        return {"criterion": self.number, "title": self.title, "ok": self.ok,
                "seconds": round(self.seconds, 3), "details": self.details}


def _timed(number, title):
    def deco(fn):
        def run(**kw):
            c = Criterion(number, title)
            t0 = time.perf_counter()
            fn(c, **kw)
            c.seconds = time.perf_counter() - t0
            return c
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


# ---------------------------------------------------------------- 1-3

@_timed(1, "CW lemma on 500 random zecote systems in < 30 s")
def criterion_1(c, count=500, seed=0, limit=30.0):
    t0 = time.perf_counter()
    bad = []
    for i in range(count):
        r = G.rng_for(f"cw:{seed}:{i}")
        p = r.choice([2, 3, 5])
        n = r.randint(1, 4)
        m = r.randint(1, 3)
        rep = check_cw_lemma(G.random_system(r, p, n, m, max_deg=3, max_terms=3))
        if not rep.congruent:
            bad.append(i)
    el = time.perf_counter() - t0
    c.details = {"systems": count, "incongruent": len(bad), "elapsed": round(el, 2), "limit": limit}
    c.ok = not bad and el < limit


def _sys(p, n, texts):
    return PolynomialSystem.of(n, p, [parse_polynomial(t, n, p) for t in texts])


@_timed(2, "worked system (x1+x2, x1^2) at p=3")
def criterion_2(c):
    S = _sys(3, 2, ["x1 + x2", "x1^2"])
    sizes = [len(f) for f in cw_factors(S)]
    tuples = sizes[0] * sizes[1]
    M = count_max_degree(S)
    V = len(roots(S))
    c.details = {"factor_sizes": sizes, "tuples": tuples, "M": M, "V": V}
    c.ok = sizes == [6, 3] and tuples == 18 and M == 4 and V == 1 and V % 3 == M % 3


@_timed(3, "x21*x22 - x1^2 over F_3 has 9 roots, 5 with x1 = 0")
def criterion_3(c):
    S = _sys(3, 3, ["x2*x3 - x1^2"])
    R = roots(S)
    zero = [x for x in R if x[0] == 0]
    c.details = {"roots": len(R), "x1_zero": len(zero)}
    c.ok = len(R) == 9 and len(zero) == 5


# ---------------------------------------------------------------- 4

def violated_conditions(system, labeling):
    """All failed labeling conditions, computed from the g/h and g+/g- split."""
    monos = system_monomials(system)
    out = set()
    minus_vars, plus_vars, zero_vars = {}, {}, {}
    for i, (ms, row) in enumerate(zip(monos, labeling)):
        labs = set(row)
        if labs & {0} and labs - {0}:
            out.add(1)
        mv = {v for m, lab in zip(ms, row) if lab == -1 for v, _ in m}
        pv = {v for m, lab in zip(ms, row) if lab == 1 for v, _ in m}
        zv = {v for m, lab in zip(ms, row) if lab == 0 for v, _ in m}
        if mv & pv:
            out.add(2)
        if any(lab == -1 and any(e != 1 for _, e in m) for m, lab in zip(ms, row)):
            out.add(3)
        if labs - {0} and not mv:
            out.add(5)
        minus_vars[i], plus_vars[i], zero_vars[i] = mv, pv, zv
    for i, mv in minus_vars.items():
        for j in minus_vars:
            if j != i and (mv & minus_vars[j] or mv & zero_vars[j]):
                out.add(4)
    # cycle search on f_i -> x (minus) and x -> f_i (plus)
    succ = {}
    for i in minus_vars:
        succ.setdefault(("f", i), set()).update(("x", v) for v in minus_vars[i])
        for v in plus_vars[i]:
            succ.setdefault(("x", v), set()).add(("f", i))
    state = {}

    def cyclic(u):
        state[u] = 1
        for w in succ.get(u, ()):
            s = state.get(w, 0)
            if s == 1 or (s == 0 and cyclic(w)):
                return True
        state[u] = 2
        return False

    if any(state.get(u, 0) == 0 and cyclic(u) for u in list(succ)):
        out.add(6)
    return out


def chain_labeling_system():
    """(x1 x2 - x3, x1 x3 - x4) over F_2 with labels +1 on the products, -1 on x3 and x4."""
    S = _sys(2, 4, ["x1*x2 - x3", "x1*x3 - x4"])
    want = {((0, 1), (1, 1)): 1, ((2, 1),): -1, ((0, 1), (2, 1)): 1, ((3, 1),): -1}
    return S, [[want[m] for m in ms] for ms in system_monomials(S)]


@_timed(4, "proper labeling: two-link chain, trivial labelings, single-condition mutations")
def criterion_4(c, count=100, seed=0):
    S, L = chain_labeling_system()
    chain_ok = proper_labeling_check(S, L) is None
    lsum = sum(labeled_degree(f, row) for f, row in zip(S.polys, L))
    chain_m = count_max_degree(S)
    triv_bad = 0
    for i in range(count):
        r = G.rng_for(f"triv:{seed}:{i}")
        T = G.random_system(r, r.choice([2, 3, 5]), r.randint(1, 4), r.randint(1, 3), max_deg=3)
        triv_bad += proper_labeling_check(T, trivial_labeling(T)) is not None
    wrong = []
    per = {k: 0 for k in range(1, 7)}
    for i in range(count):
        target = i % 6 + 1
        r = G.rng_for(f"mut:{seed}:{i}")
        p = 3 if target == 3 else r.choice([2, 3])
        T, L2 = G.random_labeled_system(r, p, mutate=target)
        got = proper_labeling_check(T, L2)
        viol = violated_conditions(T, L2)
        expect = {2, 6} if target == 2 else {target}
        if got != target or viol != expect:
            wrong.append((i, target, got, sorted(viol)))
        per[target] += 1
    c.details = {"chain_proper": chain_ok, "chain_labeled_sum": lsum, "chain_M": chain_m,
                 "trivial_rejected": triv_bad, "mutations": count, "mutations_per_condition": per,
                 "misreported": wrong[:5]}
    c.ok = chain_ok and lsum == 2 and chain_m == 0 and triv_bad == 0 and not wrong


# ---------------------------------------------------------------- 5

@_timed(5, "labeled CWT on 50 hardness systems from random circuits in < 60 s")
def criterion_5(c, count=50, seed=0, limit=60.0):
    t0 = time.perf_counter()
    bad = []
    sizes = []
    for i in range(count):
        r = G.rng_for(f"hard:{seed}:{i}")
        p = r.choice([2, 3])
        src = G.random_lonely_circuit(r, p, n=r.randint(1, 2), max_gates=6)
        red = lonely_to_chevsym(src, check=False)
        g, lab = red.target.g, red.info["labeling"]
        proper = proper_labeling_check(g, lab) is None
        lsum = sum(labeled_degree(f, row) for f, row in zip(g.polys, lab))
        empty = not enumerate_max_degree(g)
        sizes.append(g.n_vars)
        if not (proper and lsum < g.n_vars and empty):
            bad.append({"index": i, "proper": proper, "sum": lsum, "N": g.n_vars, "M_empty": empty})
    el = time.perf_counter() - t0
    c.details = {"circuits": count, "failed": len(bad), "max_N": max(sizes), "elapsed": round(el, 2),
                 "limit": limit, "examples": bad[:3]}
    c.ok = not bad and el < limit


# ---------------------------------------------------------------- 6-7

@_timed(6, "every reduction id round-trips on 200 seeded instances, corruption caught, < 2 min")
def criterion_6(c, count=200, seed=0, limit=120.0, jobs=1):
    t0 = time.perf_counter()
    rows = [run_suite(rid, count, seed, jobs=jobs) for rid in REGISTRY]
    el = time.perf_counter() - t0
    c.details = {"ids": len(rows), "failed_ids": [r["id"] for r in rows if not r["ok"]],
                 "instances": sum(r["count"] for r in rows),
                 "failures": sum(r["failed"] for r in rows),
                 "corruption_missed": [r["id"] for r in rows if not r["corrupt_detected"]],
                 "elapsed": round(el, 2), "limit": limit}
    c.ok = len(rows) >= 14 and all(r["ok"] for r in rows) and el < limit


def _golden_instance(gold):
    name = {k: tuple(v) for k, v in gold["vertices"].items()}
    dom = QaryStrings(gold["q"], gold["n"])
    table = {}
    for e in gold["hyperedges"]:
        vs = [name[x] for x in e]
        for a, b in zip(vs, vs[1:] + vs[:1]):
            table[a] = b
    src = LonelyInstance(gold["q"], dom, TableOracle(table), [name[x] for x in gold["designated"]])
    return src, name


def pairing_golden_check(path=GOLDEN_PAIRS):
    """Compare the reduction's pairings with the golden file; returns (ok, mismatches)."""
    gold = json.loads(Path(path).read_text())
    src, name = _golden_instance(gold)
    red = lonely_pk_to_lonely_p(src)
    tgt = red.target
    bad = []

    def pair(xs):
        return tuple(sorted((name[x] for x in xs), key=src.domain.rank))

    for a, b in gold["pairs"]:
        e = tgt.hyperedge(pair(a))
        if e is None or set(e) != {pair(a), pair(b)}:
            bad.append({"pair": [a, b], "got": e})
    for a in gold["lonely"]:
        if not tgt.is_solution(pair(a)):
            bad.append({"lonely": a})
    for a in gold["designated_pairs"]:
        if pair(a) not in tgt.designated or not tgt.is_isolated(pair(a)):
            bad.append({"designated": a})
    if red.info.get("subset_size") != gold["subset_size"]:
        bad.append({"subset_size": red.info.get("subset_size")})
    return not bad, bad


@_timed(7, "prime powers: (p,k) in {(2,2),(2,3),(3,2)} and the figure's pairings")
def criterion_7(c, count=200, seed=0):
    ok_fig, bad = pairing_golden_check()
    out = {}
    for (p, k), size in (((2, 2), 8), ((2, 3), 16), ((3, 2), 18)):
        q = p ** k
        fails = det = 0
        for i in range(count):
            src = G.random_lonely(G.rng_for(f"pk:{q}:{seed}:{i}"), q, size=size)
            red = lonely_pk_to_lonely_p(src)
            fails += not verify_reduction(src, red).ok
            det += not verify_reduction(src, red, corrupt=True).ok
        out[f"{p}^{k}"] = {"failures": fails, "corrupt_detected": det}
    c.details = {"figure_match": ok_fig, "figure_mismatches": bad[:3], "suites": out}
    c.ok = ok_fig and all(v["failures"] == 0 and v["corrupt_detected"] > 0 for v in out.values())


# ---------------------------------------------------------------- 8

@_timed(8, "BIS/SIS solvers and their Chevalley reductions")
def criterion_8(c, seed=0):
    base_bad = 0
    for i in range(1000):
        r = G.rng_for(f"base:{seed}:{i}")
        if i % 2:
            inst = G.random_bis(r, 2, m=r.randint(1, 4))
            x = kernel_vector_f2(inst.A)
        else:
            inst = G.random_sis(r, 3, m=r.randint(1, 4))
            x = kernel_vector_f3(inst.A)
        base_bad += not inst.verify(x)
    pow2 = {}
    for k in (1, 2, 3):
        bad = 0
        for i in range(100):
            r = G.rng_for(f"bis2k:{k}:{seed}:{i}")
            inst = G.random_bis(r, 2 ** k, m=r.randint(1, 2))
            x = solve_bis_pow2(inst.A, k)
            bad += not (inst.verify(x) and check_solution(inst.A, x, 2 ** k))
        pow2[k] = bad
    sis = {}
    for k in range(4):
        for l in range(4 - k):
            if k + l == 0:
                continue
            q, bad = 2 ** k * 3 ** l, 0
            for i in range(100):
                r = G.rng_for(f"sis:{k}:{l}:{seed}:{i}")
                m = r.randint(1, 2)
                inst = SisInstance(G.random_matrix(r, m, sis_required_n(m, k, l), q), q)
                x = solve_sis_2k3l(inst.A, k, l)
                bad += not (inst.verify(x) and check_solution(inst.A, x, q, (-1, 0, 1)))
            sis[f"{k},{l}"] = bad
    chev = {}
    for rid, gen in (("6:bis->chevalley", G.random_bis), ("6:sis->chevalley", G.random_sis)):
        for p in (3, 5):
            bad = 0
            for i in range(20):
                src = gen(G.rng_for(f"chev:{rid}:{p}:{seed}:{i}"), p, m=1)
                red = REGISTRY[rid].build(src)
                bad += not verify_reduction(src, red).ok
                bad += red.target.system.total_degree() >= red.target.n_vars
            chev[f"{rid.split(':')[1]}@{p}"] = bad
    c.details = {"base_failures": base_bad, "bis_pow2_failures": pow2, "sis_2k3l_failures": sis,
                 "chevalley_failures": chev}
    c.ok = (base_bad == 0 and not any(pow2.values()) and not any(sis.values())
            and not any(chev.values()))


# ---------------------------------------------------------------- 9-10

@_timed(9, "Turing compiler: 50 two-query algorithms decode from every lonely vertex")
def criterion_9(c, count=50, seed=0):
    bad = 0
    lonely = 0
    for i in range(count):
        r = G.rng_for(f"turing:{seed}:{i}")
        src = G.random_turing(r, r.choice([2, 3]))
        red = compile_turing(src)
        tgt = red.target
        for v in tgt.domain:
            if v in tgt.designated or not tgt.is_isolated(v):
                continue
            lonely += 1
            try:
                ans = red.back_map(v)
                ok = len(ans) == 2 and src.verify(ans)
            except ValueError:
                ok = False
            bad += not ok
    c.details = {"algorithms": count, "lonely_vertices": lonely, "undecodable": bad}
    c.ok = bad == 0 and lonely > 0


@_timed(10, "Lucas digits agree with exact binomials; the (c p^t choose p^t) criterion")
def criterion_10(c):
    mism = 0
    for p in (2, 3, 5):
        for n in range(61):
            for k in range(n + 1):
                mism += binomial_mod_p(n, k, p) != comb(n, k) % p
    iff_bad = 0
    for p in (2, 3, 5):
        for t in range(1, 4):
            for cc in range(1, 13):
                zero = binomial_mod_p(cc * p ** t, p ** t, p) == 0
                iff_bad += zero != (cc % p == 0)
                iff_bad += (comb(cc * p ** t, p ** t) % p == 0) != zero
    c.details = {"lucas_mismatches": mism, "iff_failures": iff_bad}
    c.ok = mism == 0 and iff_bad == 0


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(only=None, **kw):
    out = []
    for i, fn in enumerate(CRITERIA, 1):
        if only and i not in only:
            continue
        out.append(fn(**kw.get(i, {})))
    return out
