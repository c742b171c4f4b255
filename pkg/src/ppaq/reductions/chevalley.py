"""Reductions in and out of the Chevalley problems.

* ``chevalley -> generalchevalley`` and ``generalchevalley -> chevsym`` are
  inclusions with light padding.
* ``chevsym -> succbipartite`` is the membership argument: assignments on
  one side, CW monomials and sigma-orbits on the other.
* ``lonely -> chevsym`` is the hardness argument: p chained copies of the
  circuit system, rotated by sigma.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..circuits import (circuit_from_function, circuit_polynomials, eliminate_const_gates,
                        preprocess_lonely, translate_circuit)
from ..domains import Product, QaryStrings, Range, Subsets, Union
from ..gfpoly import (CoefficientPolynomial, PolynomialSystem, count_max_degree, cw_factors,
                      fold_exponent, mono_eval, roots, var)
from ..labeling import labeled_degree, proper_labeling_check, system_monomials
from ..problems import (ChevSolution, ChevSymInstance, GeneralChevalleyInstance,
                        SuccBipartiteInstance, apply_sigma)
from .chain import _undesignated_problem, lonely_restrict
from .base import Reduction, register, short_circuit

__all__ = ["chevalley_to_general", "general_to_chevsym", "chevsym_to_succbipartite",
           "lonely_to_chevsym", "hardness_system", "HardnessSystem"]


# ---------------------------------------------------------------- inclusions

@register("4:chevalley->general", "chevalley", "generalchevalley",
          "Chevalley reduces to GeneralChevalley")
def chevalley_to_general(src):
    rid = "4:chevalley->general"
    tgt = GeneralChevalleyInstance(src.system)

    def back(sol):
        # sum of degrees < n rules out max-degree monomials, so only roots come back
        if sol[0] != "root":
            raise ValueError("a Chevalley system has no max-degree monomials")
        return ChevSolution("root", tuple(sol[1]))

    return Reduction(rid, tgt, back, "Chevalley reduces to GeneralChevalley")


@register("4:general->chevsym", "generalchevalley", "chevsym",
          "GeneralChevalley reduces to ChevalleyWithSymmetry")
def general_to_chevsym(src):
    """g = f (padded), h empty, sigma a p-cycle.

    With n < p there is no p-cycle on the variables, so p dummy variables
    are added together with the polynomials d_j = dummy_j, which pin them
    to 0 and keep the root set unchanged.
    """
    rid, prov = "4:general->chevsym", "GeneralChevalley reduces to ChevalleyWithSymmetry"
    f = src.system
    p, n = f.p, f.n_vars
    if n >= p:
        g = f
        N = n
        sigma = tuple(list(range(1, p)) + [0] + list(range(p, n)))
        pad = 0
    else:
        N = n + p
        lift = [CoefficientPolynomial(N, p, dict(q.collect().items())) for q in f.polys]
        dummies = [CoefficientPolynomial.variable(N, p, n + j) for j in range(p)]
        g = PolynomialSystem.of(N, p, lift + dummies)
        sigma = tuple(list(range(n)) + [n + (j + 1) % p for j in range(p)])
        pad = p
    h = PolynomialSystem(N, (), p)
    tgt = ChevSymInstance(g, h, sigma)
    m = len(f.polys)

    def back(sol):
        kind, v = sol
        if kind == "monomial":
            return ChevSolution("monomial", tuple(v)[:m])
        if kind == "root":
            return ChevSolution("root", tuple(v)[:n])
        raise ValueError("h is empty, so free-action witnesses cannot occur")

    return Reduction(rid, tgt, back, prov, info={"dummies": pad})


# ---------------------------------------------------------------- membership

def _chunk_of(items, key, p):
    """Expand (item, multiplicity) pairs into copies, cut into p-groups, return key's group."""
    copies = [(it, k) for it, c in items for k in range(1, c + 1)]
    i = copies.index(key)
    s = i - i % p
    return copies[s:s + p]


@register("4:chevsym->succbipartite", "chevsym", "succbipartite",
          "ChevalleyWithSymmetry is in PPA_p")
def chevsym_to_succbipartite(src):
    """Assignments x on the V side; CW monomial tuples and p-subsets on the U side.

    The multiplicity between x and a monomial tuple t is t(x); between x in
    W = V_g minus V_h and its sigma-orbit it is p-1.  The designated edge
    joins 0^n to the constant monomial.
    """
    rid, prov = "4:chevsym->succbipartite", "ChevalleyWithSymmetry is in PPA_p"
    g, h, sigma = src.g, src.h, src.sigma
    p, n = src.p, src.n_vars
    facs = cw_factors(g)
    X = QaryStrings(p, n)
    V1 = Product(tuple(Range(len(f)) for f in facs))
    V2 = Subsets(X, p)
    U = Union((V1, V2))
    const = (0,) * len(facs)

    def term(i, j, x):
        return mono_eval(facs[i].terms[j], x, p)

    def tval(t, x):
        v = 1
        for i, j in enumerate(t):
            v = v * term(i, j, x) % p
            if not v:
                return 0
        return v

    @lru_cache(maxsize=None)
    def in_Vg(x):
        return g.is_root(x)

    @lru_cache(maxsize=None)
    def in_W(x):
        return in_Vg(x) and not h.is_root(x)

    @lru_cache(maxsize=None)
    def orbit(x):
        out, y = [x], apply_sigma(sigma, x)
        while y != x:
            out.append(y)
            y = apply_sigma(sigma, y)
        return tuple(out)

    def orbit_vertex(x):
        """The V2 vertex joined to x, or None."""
        if in_W(x) and apply_sigma(sigma, x) != x:
            return V2.make(orbit(x))
        return None

    @lru_cache(maxsize=None)
    def first_zero_factor(x):
        for i, f in enumerate(facs):
            if f.eval(x) == 0:
                return i
        return None

    @lru_cache(maxsize=None)
    def t_exponents(t):
        exps = [0] * n
        for i, j in enumerate(t):
            for v, e in facs[i].terms[j]:
                exps[v] = fold_exponent(exps[v] + e, p)
        return tuple(exps)

    def free_var(t):
        for v, e in enumerate(t_exponents(t)):
            if e < p - 1:
                return v
        return None

    def count(x, u):
        tag, a = u
        if tag == 0:
            return tval(a, x)
        return p - 1 if orbit_vertex(x) == a else 0

    def adjacency(x):
        out = []
        live = [[j for j in range(len(f)) if term(i, j, x)] for i, f in enumerate(facs)]
        for t in itertools.product(*live):
            c = tval(t, x)
            if c:
                out.append(((0, t), c))
        ov = orbit_vertex(x)
        if ov is not None:
            out.append(((1, ov), p - 1))
        return out

    def phi_V(x, u, k):
        if not count(x, u):
            return []
        tag, a = u
        i0 = first_zero_factor(x)
        if i0 is not None:
            # x is not a root of g: vary the term of a factor that vanishes at x
            row = [((0, a[:i0] + (j,) + a[i0 + 1:]), tval(a[:i0] + (j,) + a[i0 + 1:], x))
                   for j in range(len(facs[i0]))]
            return _chunk_of(row, (u, k), p)
        ov = orbit_vertex(x)
        if tag == 1 or a == const:
            if ov is None:
                return []
            return [((0, const), 1)] + [((1, ov), kk) for kk in range(1, p)]
        i = next(i for i, j in enumerate(a) if j)
        row = [((0, a[:i] + (j,) + a[i + 1:]), tval(a[:i] + (j,) + a[i + 1:], x))
               for j in range(1, len(facs[i]))]
        return _chunk_of(row, (u, k), p)

    def phi_U(x, u, k):
        if not count(x, u):
            return []
        tag, a = u
        if tag == 0:
            v = free_var(a)
            if v is None:
                return []
            row = []
            for c in range(p):
                y = x[:v] + (c,) + x[v + 1:]
                row.append((y, tval(a, y)))
            return _chunk_of(row, (x, k), p)
        members = a
        if all(in_W(y) and orbit_vertex(y) == a for y in members):
            return [(y, k) for y in members]
        return []

    zero = (0,) * n
    tgt = SuccBipartiteInstance(p, X, U, count, phi_V, phi_U, (zero, (0, const), 1), adjacency)

    def back(e):
        x, u, _ = e
        tag, a = u
        if any(x) and in_Vg(x):
            if h.is_root(x):
                return ChevSolution("root", x)
            if apply_sigma(sigma, x) == x:
                return ChevSolution("free_action", x)
        if tag == 0:
            if free_var(a) is None:
                return ChevSolution("monomial", tuple(a))
            raise ValueError("edge has no bad endpoint")
        y = x
        for _ in range(p):
            z = apply_sigma(sigma, y)
            if not in_W(z):
                return ChevSolution("free_action", y)
            y = z
        raise ValueError("orbit lies entirely in W")

    return Reduction(rid, tgt, back, prov)


# ---------------------------------------------------------------- hardness

class HardnessSystem:
    """The chained system g, the check h, sigma and the labeling of g."""

    def __init__(self, C):
        p, n, s = C.p, C.n_inputs, C.size
        self.p, self.n, self.s = p, n, s
        N = (2 * n + s) * p
        self.N = N

        def xb(b):
            return tuple(range(b * n, (b + 1) * n))

        def zb(c):
            base = 2 * p * n + c * s
            return tuple(range(base, base + s))

        polys, intro = [], []
        for c in range(p):
            ps, outs, _ = circuit_polynomials(C, xb(2 * c), zb(c), xb(2 * c + 1), N)
            polys += ps
            intro += outs
            if c < p - 1:
                for a, b in zip(xb(2 * c + 1), xb(2 * c + 2)):
                    polys.append(CoefficientPolynomial(N, p, {var(a): 1, var(b): -1}))
                    intro.append(b)
        self.g = PolynomialSystem.of(N, p, polys)
        self.h = PolynomialSystem.of(N, p, [CoefficientPolynomial(N, p, {var(a): 1, var(b): -1})
                                            for a, b in zip(xb(0), xb(1))])
        sig = [0] * N
        for b in range(2 * p):
            for a, src in zip(xb(b), xb((b + 2) % (2 * p))):
                sig[a] = src
        for c in range(p):
            for a, src in zip(zb(c), zb((c + 1) % p)):
                sig[a] = src
        self.sigma = tuple(sig)
        monos = system_monomials(self.g)
        self.labeling = [[-1 if m == ((z, 1),) else 1 for m in ms] for ms, z in zip(monos, intro)]
        self.introduced = tuple(intro)

    def labeled_degree_sum(self):
        return sum(labeled_degree(f, row) for f, row in zip(self.g.polys, self.labeling))


def hardness_system(C):
    return HardnessSystem(C)


@register("4:lonely->chevsym", "lonely", "chevsym",
          "ChevalleyWithSymmetry is PPA_p-hard")
def lonely_to_chevsym(src, check=True, budget=None):
    """Lonely_p on F_p^n to ChevalleyWithSymmetry with no type-0 solutions.

    The designated vertex is moved to 0^n (by translation, or after
    restricting to one designated vertex and re-encoding), the circuit is
    made to fix non-edge vertices and to avoid constants, and g chains p
    copies of its gate system.  With ``check`` the proper labeling, the
    labeled degree bound, the emptiness of M and the free action are
    asserted on the spot.
    """
    rid, prov = "4:lonely->chevsym", "ChevalleyWithSymmetry is PPA_p-hard"
    p = src.q
    bad = _undesignated_problem(src)
    if bad is not None:
        return short_circuit(rid, prov, "chevsym", p, bad,
                             "a designated vertex is not isolated")
    dom = src.domain
    if not (isinstance(dom, QaryStrings) and dom.q == p):
        raise ValueError("the Lonely domain must be F_p^n")
    n = dom.n
    info = {}
    if len(src.designated) == 1:
        d = src.designated[0]
        inner_back = lambda v: v  # noqa: E731
        if src.circuit is not None:
            C = src.circuit if not any(d) else translate_circuit(src.circuit, d)
            info["encoding"] = "circuit"
        else:
            def fn(v, d=d):
                w = src.C(tuple((a + b) % p for a, b in zip(v, d)))
                return tuple((a - b) % p for a, b in zip(w, d))
            C = circuit_from_function(p, n, fn)
            info["encoding"] = "table"
        shift = d
        nn = n
    else:
        r1 = lonely_restrict(src, 1)
        mid = r1.target
        t = r1.info["copies"]
        nn = n + 1

        def to_mid(v):
            return (v[1:], v[0]) if t > 1 else v[1:]

        def to_F(x):
            return (x[1],) + x[0] if t > 1 else (0,) + x

        def raw(v):
            if v[0] < t:
                return to_F(mid.C(to_mid(v)))
            return v[:-1] + ((v[-1] + 1) % p,)

        shift = to_F(mid.designated[0])

        def fn(v):
            w = raw(tuple((a + b) % p for a, b in zip(v, shift)))
            return tuple((a - b) % p for a, b in zip(w, shift))

        C = circuit_from_function(p, nn, fn)
        info["encoding"] = "restricted"

        def inner_back(v):
            if v[0] >= t:
                raise ValueError("padding vertices are never lonely")
            return r1.back_map(to_mid(v))

    C2 = eliminate_const_gates(preprocess_lonely(C))
    H = HardnessSystem(C2)
    tgt = ChevSymInstance(H.g, H.h, H.sigma)
    info.update({"N": H.N, "m_g": len(H.g.polys), "gates": C2.size, "labeling": H.labeling})
    if check:
        cond = proper_labeling_check(H.g, H.labeling)
        if cond is not None:
            raise AssertionError(f"hardness labeling violates condition {cond}")
        lsum = H.labeled_degree_sum()
        if not lsum < H.N:
            raise AssertionError("labeled degree sum is not below the variable count")
        cm = count_max_degree(H.g, budget)
        if cm:
            raise AssertionError(f"{cm} max-degree monomials in a properly labeled system")
        vg = roots(H.g, budget)
        W = {x for x in vg if not H.h.is_root(x)}
        for x in W:
            y = apply_sigma(H.sigma, x)
            if y == x or y not in W:
                raise AssertionError("sigma does not act freely on V_g minus V_h")
        info.update({"labeled_degree_sum": lsum, "count_M": cm, "free_action": True,
                     "V_g": len(vg)})
        tgt._g_roots = vg
        tgt._g_monomials = []

    def back(sol):
        kind, x = sol
        if kind != "root":
            raise ValueError("the hardness instance only has root solutions")
        v = tuple((a + b) % p for a, b in zip(x[:nn], shift))
        return inner_back(v)

    return Reduction(rid, tgt, back, prov, info=info)
