"""Seeded random instance generators.

All generators take a ``random.Random`` and return small instances whose
oracles are lookup tables, so they can be saved and reloaded exactly.
They deliberately mix in junk (broken cycles, one-sided listings, stray
groupings) so that reductions see messy inputs, not only tidy ones.
"""

from __future__ import annotations

import random

from .domains import BitStrings, QaryStrings, Range, Union
from .oracles import ListOracle, PairTable, TableOracle
from .problems import (AmpInstance, BipartiteInstance, BisInstance, EndOfLineInstance, LeafInstance,
                       LeafPrimeInstance, LonelyInstance, ModInstance, SisInstance,
                       SuccBipartiteInstance, TwoMatchingsInstance, n_of_q)

__all__ = ["rng_for", "PRNG_NAME", "random_lonely", "random_mod", "random_leaf",
           "random_leafprime", "random_bipartite", "random_succbipartite",
           "random_twomatchings", "random_endofline", "random_amp", "cycle_table",
           "random_poly", "random_system", "random_chevalley", "random_general", "random_sigma",
           "random_chevsym", "random_circuit", "random_lonely_circuit", "random_turing",
           "random_matrix", "random_bis", "random_sis",
           "random_labeled_system"]

PRNG_NAME = "python-random-mt19937"


def rng_for(seed):
    return random.Random(seed)


def cycle_table(edges):
    """C-table making each tuple of ``edges`` a cycle in the given order."""
    t = {}
    for e in edges:
        for i, v in enumerate(e):
            t[v] = e[(i + 1) % len(e)]
    return t


def _random_cover(rng, verts, q, density):
    """Disjoint q-subsets of ``verts`` covering roughly ``density`` of them."""
    pool = list(verts)
    rng.shuffle(pool)
    edges = []
    while len(pool) >= q and rng.random() < density:
        edges.append(tuple(pool.pop() for _ in range(q)))
    return edges


def _junk(rng, table, verts, amount):
    """Overwrite a few free entries with pointers that do not close a q-cycle."""
    free = [v for v in verts if v not in table]
    for v in rng.sample(free, min(amount, len(free))):
        table[v] = rng.choice(verts)


def random_lonely(rng, q, n=None, size=None, n_designated=None, density=0.8, junk=True,
                  designated_isolated=0.9):
    """Lonely_q on [q]^n (default) or Range(size)."""
    if size is None:
        n = n if n is not None else rng.randint(1, 2)
        dom = QaryStrings(q, n)
    else:
        if size % q:
            raise ValueError("size must be divisible by q")
        dom = Range(size)
    verts = list(dom)
    ell = n_designated or rng.randint(1, q - 1)
    des = rng.sample(verts, ell)
    if rng.random() < designated_isolated:
        cand = [v for v in verts if v not in des]
    else:
        cand = verts
    edges = _random_cover(rng, cand, q, density)
    table = cycle_table(edges)
    if junk and rng.random() < 0.5:
        _junk(rng, table, [v for v in verts if v not in des], rng.randint(1, 2))
    return LonelyInstance(q, dom, TableOracle(table), des)


def random_mod(rng, q, n=None, density=0.8):
    """MOD_q on {0,1}^n; one designated vertex when q is a power of two."""
    n = n if n is not None else rng.randint(2, 4)
    dom = BitStrings(n)
    verts = list(dom)
    des = [rng.choice(verts)] if q & (q - 1) == 0 else []
    edges = _random_cover(rng, [v for v in verts if v not in des], q, density)
    return ModInstance(q, n, TableOracle(cycle_table(edges)), des)


def _random_hyperedges(rng, verts, q, count, cap):
    deg = {v: 0 for v in verts}
    edges = []
    for _ in range(count):
        ok = [v for v in verts if deg[v] < cap]
        if len(ok) < q:
            break
        e = tuple(rng.sample(ok, q))
        key = frozenset(e)
        if key in {frozenset(x) for x in edges}:
            continue
        edges.append(e)
        for v in e:
            deg[v] += 1
    return edges


def _listing(rng, verts, edges, q, cap, junk=True):
    lists = {v: [] for v in verts}
    for e in edges:
        for v in e:
            lists[v].append(tuple(e))
    if junk:
        for v in rng.sample(verts, min(2, len(verts))):
            if len(lists[v]) < cap and len(verts) >= q:
                lists[v].append(tuple(rng.sample(verts, q)))       # one-sided
    for v in verts:
        rng.shuffle(lists[v])
    return ListOracle(lists)


def _pick_designated(rng, verts, edges, q, trivial=0.15):
    """Usually a vertex whose degree is nonzero mod q, so the instance is not trivially solved."""
    deg = {v: 0 for v in verts}
    for e in edges:
        for v in e:
            deg[v] += 1
    good = [v for v in verts if deg[v] % q]
    if good and rng.random() > trivial:
        return rng.choice(good)
    return rng.choice(verts)


def random_leafprime(rng, q, k=None, size=None):
    size = size or rng.choice([q * 2, q * 3, 7, 8])
    k = k or rng.randint(q, 2 * q)
    dom = Range(size)
    verts = list(dom)
    edges = _random_hyperedges(rng, verts, q, rng.randint(0, size), k)
    C = _listing(rng, verts, edges, q, k)
    return LeafPrimeInstance(q, k, dom, C, _pick_designated(rng, verts, edges, q))


def random_leaf(rng, q, size=None):
    size = size or rng.choice([q * 2, q * 3, 7])
    dom = Range(size)
    verts = list(dom)
    edges = _random_hyperedges(rng, verts, q, rng.randint(0, size), q)
    C = _listing(rng, verts, edges, q, q)
    return LeafInstance(q, dom, C, _pick_designated(rng, verts, edges, q))


def random_bipartite(rng, q, nV=None, nU=None, k=None):
    nV = nV or rng.randint(2, 5)
    nU = nU or rng.randint(2, 5)
    dom = Union((Range(nV), Range(nU)))
    lists = {}
    vs = rng.randrange(nV)
    for v in range(nV):
        for u in range(nU):
            r = rng.random()
            if v == vs and u == 0 and rng.random() < 0.8:
                r = 0.0   # keep v* from being isolated most of the time
            if r < 0.45:
                lists.setdefault((0, v), []).append((1, u))
                lists.setdefault((1, u), []).append((0, v))
            elif r < 0.5:
                lists.setdefault((0, v), []).append((1, u))   # one-sided
    for w in lists:
        rng.shuffle(lists[w])
    return BipartiteInstance(q, dom, ListOracle(lists), (0, vs), k=k)


def random_succbipartite(rng, p, nV=None, nU=None):
    """Random multiplicities with mostly consistent groupings at every vertex."""
    nV = nV or rng.randint(1, 3)
    nU = nU or rng.randint(1, 3)
    mult = {}
    for v in range(nV):
        for u in range(nU):
            if rng.random() < 0.6:
                mult[(v, u)] = rng.randint(1, p - 1)
    gv, gu = {}, {}
    for v in range(nV):
        cop = [(u, k) for u in range(nU) for k in range(1, mult.get((v, u), 0) + 1)]
        rng.shuffle(cop)
        for i in range(0, len(cop) - p + 1, p):
            grp = cop[i:i + p]
            if rng.random() < 0.85:
                for (u, k) in grp:
                    gv[(v, u, k)] = grp
    for u in range(nU):
        cop = [(v, k) for v in range(nV) for k in range(1, mult.get((v, u), 0) + 1)]
        rng.shuffle(cop)
        for i in range(0, len(cop) - p + 1, p):
            grp = cop[i:i + p]
            if rng.random() < 0.85:
                for (v, k) in grp:
                    gu[(v, u, k)] = grp
    edges = [(v, u, k) for (v, u), c in sorted(mult.items()) for k in range(1, c + 1)]
    des = rng.choice(edges) if edges and rng.random() < 0.9 else (0, 0, 1)
    return SuccBipartiteInstance(p, Range(nV), Range(nU), PairTable(mult, 0),
                                 PairTable(gv, ()), PairTable(gu, ()), des)


def random_twomatchings(rng, p, size=None):
    size = size or rng.choice([p * 2, p * 3, p * 2 + 1])
    dom = Range(size)
    verts = list(dom)
    m0 = _random_cover(rng, verts, p, 0.7)
    t0 = {v: e for e in m0 for v in e}
    if m0 and rng.random() < 0.85:
        vs = rng.choice(m0)[0]
        m1 = _random_cover(rng, [v for v in verts if v != vs], p, 0.7)
    else:
        vs = rng.choice(verts)
        m1 = _random_cover(rng, verts, p, 0.7)
    t1 = {v: e for e in m1 for v in e}
    return TwoMatchingsInstance(p, dom, ListOracle(t0), ListOracle(t1), vs)


def random_endofline(rng, n=None):
    """Random partial successor/predecessor tables on {0,1}^n."""
    n = n or rng.randint(2, 3)
    dom = BitStrings(n)
    verts = list(dom)
    rng.shuffle(verts)
    S, P = {}, {}
    i = 0
    while i < len(verts) - 1:
        ln = rng.randint(1, 3)
        path = verts[i:i + ln + 1]
        for a, b in zip(path, path[1:]):
            S[a] = b
            P[b] = a
        i += ln + 1
    # a little junk: a dangling successor pointer
    if rng.random() < 0.5:
        a = rng.choice(verts)
        if a not in S:
            S[a] = rng.choice(verts)
    sources = [v for v in verts if v in S and S[v] in P and P[S[v]] == v and v not in P]
    if sources and rng.random() < 0.85:
        vs = rng.choice(sources)
    else:
        vs = rng.choice(verts)
    return EndOfLineInstance(dom, TableOracle(S), TableOracle(P), vs)


def random_amp(rng, moduli=(2, 3), **kw):
    """Selector bit plus a Lonely payload for the selected modulus."""
    b = rng.randrange(2)
    return AmpInstance(b, random_lonely(rng, moduli[b], **kw), moduli, "lonely")


# ---------------------------------------------------------------- polynomial systems

def random_poly(rng, p, n, max_deg=2, max_terms=3, zecote=True):
    """Random CoefficientPolynomial with folded exponents and no constant term."""
    from .gfpoly import CoefficientPolynomial
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(1, max_deg)
        exps = {}
        for _ in range(d):
            v = rng.randrange(n)
            exps[v] = exps.get(v, 0) + 1
        mono = tuple(sorted((v, min(e, p - 1)) for v, e in exps.items()))
        coeffs[mono] = (coeffs.get(mono, 0) + rng.randrange(1, p)) % p
    if not zecote and rng.random() < 0.5:
        coeffs[()] = rng.randrange(1, p)
    poly = CoefficientPolynomial(n, p, coeffs)
    if poly.is_zero():
        return CoefficientPolynomial.variable(n, p, rng.randrange(n))
    return poly


def random_system(rng, p, n, m, max_deg=2, max_terms=3):
    from .gfpoly import PolynomialSystem
    return PolynomialSystem.of(n, p, [random_poly(rng, p, n, max_deg, max_terms) for _ in range(m)])


def random_chevalley(rng, p, n=None, m=None):
    """Zecote system with sum of degrees below n."""
    from .problems import ChevalleyInstance
    n = n or rng.randint(2, 4)
    if m is not None and m >= n:
        raise ValueError(f"m = {m} polynomials cannot have degree sum below n = {n}")
    fixed = m
    while True:
        m = fixed or rng.randint(1, max(1, n - 1))
        sysm = random_system(rng, p, n, m, max_deg=max(1, (n - 1) // m))
        if sysm.total_degree() < n:
            return ChevalleyInstance(sysm)


def random_general(rng, p, n=None, m=None):
    from .problems import GeneralChevalleyInstance
    n = n or rng.randint(1, 3)
    m = m or rng.randint(1, 2)
    return GeneralChevalleyInstance(random_system(rng, p, n, m))


def random_sigma(rng, p, n):
    """A permutation of order p: one or more disjoint p-cycles."""
    if n < p:
        raise ValueError("need at least p variables")
    pos = list(range(n))
    rng.shuffle(pos)
    sig = list(range(n))
    cycles = rng.randint(1, n // p)
    for c in range(cycles):
        cyc = pos[c * p:(c + 1) * p]
        for i, a in enumerate(cyc):
            sig[a] = cyc[(i + 1) % p]
    return tuple(sig)


def random_chevsym(rng, p, n=None, mg=None, mh=None, invariant=0.5):
    """g, h and sigma; with probability ``invariant`` g and h are made sigma-symmetric."""
    from .problems import ChevSymInstance
    n = n or rng.randint(p, p + 1)
    sigma = random_sigma(rng, p, n)
    g = random_system(rng, p, n, mg or rng.randint(1, 2), max_deg=2, max_terms=2)
    h = random_system(rng, p, n, mh if mh is not None else rng.randint(0, 1), max_deg=1, max_terms=2)
    if rng.random() < invariant:
        gs, hs = _symmetrize(g, sigma), _symmetrize(h, sigma)
        # keep the closure small so the CW expansion stays desk-sized
        if len(gs.polys) <= 3 and len(hs.polys) <= 3:
            g, h = gs, hs
    return ChevSymInstance(g, h, sigma)


def _symmetrize(system, sigma):
    """Close a system under the variable permutation (all images of every polynomial)."""
    from .gfpoly import CoefficientPolynomial, PolynomialSystem
    n, p = system.n_vars, system.p
    inv = [0] * n
    for j, s in enumerate(sigma):
        inv[s] = j
    out, seen = [], set()
    for f in system.polys:
        cur = dict(f.collect().items())
        for _ in range(p):
            key = tuple(sorted(cur.items()))
            if key not in seen:
                seen.add(key)
                out.append(CoefficientPolynomial(n, p, cur))
            cur = {tuple(sorted((inv[v], e) for v, e in m)): c for m, c in cur.items()}
    return PolynomialSystem.of(n, p, out)


# ---------------------------------------------------------------- circuits

def random_circuit(rng, p, n, gates, const=0.2):
    """Random (+, x, 1) circuit with ``gates`` ADD/MUL gates."""
    from .circuits import ArithmeticCircuit
    gl = [("INPUT", i, None) for i in range(n)]
    if rng.random() < const:
        gl.append(("CONST1", None, None))
    for _ in range(gates):
        op = rng.choice(("ADD", "MUL"))
        gl.append((op, rng.randrange(len(gl)), rng.randrange(len(gl))))
    outs = tuple(rng.randrange(len(gl)) for _ in range(n))
    return ArithmeticCircuit(p, n, tuple(gl), outs)


def random_lonely_circuit(rng, p, n=None, gates=None, max_gates=6):
    """Lonely_p on F_p^n given by a random circuit; the designated vertex is isolated when possible."""
    n = n or rng.randint(1, 2)
    gates = gates if gates is not None else rng.randint(0, max_gates)
    C = random_circuit(rng, p, n, gates)
    dom = QaryStrings(p, n)
    probe = LonelyInstance(p, dom, C, [(0,) * n], circuit=C)
    iso = [v for v in dom if probe.is_isolated(v)]
    if (0,) * n in iso and rng.random() < 0.7:
        d = (0,) * n
    elif iso:
        d = rng.choice(iso)
    else:
        d = (0,) * n
    return LonelyInstance(p, dom, C, [d], circuit=C)


# ---------------------------------------------------------------- adaptive algorithms

def random_turing(rng, p, n=None, t=2):
    """A toy t-query algorithm: each query is a random Lonely_p seeded by the answers so far.

    The solution it outputs is the tuple of answers, valid iff every
    answer is lonely in the query it was given for.
    """
    from .reductions.turing import AdaptiveOracleAlgorithm, TuringInstance

    n = n or rng.randint(1, 2)
    seed = rng.getrandbits(32)
    dom = QaryStrings(p, n)
    memo = {}

    def next_query(x, answers):
        key = tuple(answers)
        if key not in memo:
            r = random.Random(f"{seed}:{p}:{n}:{key!r}")
            memo[key] = random_lonely(r, p, n=n, n_designated=p - 1, designated_isolated=1.0)
        return memo[key]

    def verify(x, sol):
        sol = tuple(sol)
        if len(sol) != t:
            return False
        return all(next_query(x, sol[:i]).is_solution(sol[i]) for i in range(t))

    alg = AdaptiveOracleAlgorithm(p, t, dom, next_query, lambda x, ans: tuple(ans), verify)
    return TuringInstance(alg, seed)


# ---------------------------------------------------------------- BIS / SIS

def random_matrix(rng, m, n, q):
    return [[rng.randrange(q) for _ in range(n)] for _ in range(m)]


def random_bis(rng, q, m=None, n=None):
    """BIS_q at the smallest n the parameter condition allows (unless n is given)."""
    m = m or rng.randint(1, 2)
    n = n or (m + 1) ** n_of_q(q) * (q - 1)
    return BisInstance(random_matrix(rng, m, n, q), q)


def random_sis(rng, q, m=None, n=None):
    """SIS_q at the smallest n with n >= ((m+1)/2)^N(q) (q-1), unless n is given."""
    m = m or rng.randint(1, 2)
    if n is None:
        N = n_of_q(q)
        n = -(-((m + 1) ** N * (q - 1)) // 2 ** N)
    return SisInstance(random_matrix(rng, m, n, q), q)


# ---------------------------------------------------------------- labeled systems

def _mono(vs, e=1):
    return tuple(sorted((v, e) for v in vs))


def random_labeled_system(rng, p, mutate=None):
    """A chain system g_j = c (product) - c' x_j with a proper labeling, plus 0-labeled h's.

    With ``mutate`` in 1..6 the system or labeling is altered to break
    that condition.  Returns (system, labeling) with labels in the
    canonical monomial order of each polynomial.
    """
    from .gfpoly import CoefficientPolynomial, PolynomialSystem

    k = rng.randint(2 if mutate == 6 else 1, 3)
    b = rng.randint(1, 3)
    extra = rng.randint(0, 2)
    n = b + k + extra
    base = list(range(b))
    prod = [b + j for j in range(k)]
    free = list(range(b + k, n))
    gs = []
    for j in range(k):
        pool = base + prod[:j]
        plus = set(rng.sample(pool, rng.randint(1, min(2, len(pool)))))
        gs.append({"plus": plus, "minus": prod[j], "exp": 1, "lab": [1, -1]})
    hs = []
    for _ in range(rng.randint(0, 2)):
        pool = base + free
        hs.append([set(rng.sample(pool, rng.randint(1, min(2, len(pool))))) for _ in range(rng.randint(1, 2))])
    j = rng.randrange(k)
    g = gs[j]
    if mutate == 1:
        # zero-labeled products must avoid every -1 variable, or (4) breaks too
        g["plus"] = set(rng.sample(base, 1))
        g["lab"][0] = 0
    elif mutate == 2:
        g["plus"].add(g["minus"])
    elif mutate == 3:
        g["exp"] = 2
    elif mutate == 4:
        hs.append([{g["minus"]}] + ([set(rng.sample(base, 1))] if rng.random() < 0.5 else []))
    elif mutate == 5:
        g["lab"][1] = 1
    elif mutate == 6:
        i, l = sorted(rng.sample(range(k), 2))
        gs[l]["plus"].add(prod[i])
        gs[i]["plus"].add(prod[l])
    perm = list(range(n))
    rng.shuffle(perm)
    polys, labeling = [], []
    for g in gs:
        pm = _mono([perm[v] for v in g["plus"]])
        mm = _mono([perm[g["minus"]]], g["exp"])
        coeffs = {pm: rng.randrange(1, p), mm: -rng.randrange(1, p)}
        f = CoefficientPolynomial(n, p, coeffs)
        lab = dict(zip((pm, mm), g["lab"]))
        polys.append(f)
        labeling.append([lab[m] for m in f.monomials()])
    for h in hs:
        f = CoefficientPolynomial(n, p, {_mono([perm[v] for v in vs]): rng.randrange(1, p) for vs in h})
        polys.append(f)
        labeling.append([0] * len(f.monomials()))
    order = list(range(len(polys)))
    rng.shuffle(order)
    return (PolynomialSystem.of(n, p, [polys[i] for i in order]), [labeling[i] for i in order])
