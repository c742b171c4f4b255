"""Search problem instances, verifiers and brute-force solvers.

Every instance bundles a vertex domain, its oracles (plain callables) and
its designated object.  Oracles may be backed by tables, circuits or
closures over other instances; nothing here depends on how they are built.

Solutions are plain values: vertices for the graph problems, ``(v, u, k)``
edges for SuccBipartite, integer vectors for BIS/SIS, and ``ChevSolution``
records for the Chevalley family.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from math import gcd

from .budget import Meter
from .domains import BitStrings, Product, QaryStrings, Range, Union
from .gfpoly import cw_factors, enumerate_max_degree, is_max_degree, roots

__all__ = [
    "TotalityError", "ChevSolution", "Instance", "LonelyInstance", "ModInstance",
    "LeafPrimeInstance", "LeafInstance", "BipartiteInstance", "SuccBipartiteInstance",
    "TwoMatchingsInstance", "ChevalleyInstance", "GeneralChevalleyInstance",
    "ChevSymInstance", "EndOfLineInstance", "BisInstance", "SisInstance", "AmpInstance",
    "degree", "verify", "brute_solve", "all_solutions", "check_free_action",
    "apply_sigma", "permutation_order", "bis_condition", "sis_condition", "n_of_q",
]


class TotalityError(RuntimeError):
    """A brute-force search found no solution: some totality premise fails."""


ChevSolution = namedtuple("ChevSolution", "kind value")
ChevSolution.__doc__ = "kind is 'monomial', 'free_action' or 'root'."


def _safe(fn):
    def wrapper(self, sol):
        try:
            return bool(fn(self, sol))
        except (TypeError, ValueError, IndexError, KeyError, AttributeError):
            return False
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


class Instance:
    problem = "?"
    premise = "the instance is well formed"

    def candidates(self):
        """Every object that could be a solution, in canonical order."""
        raise NotImplementedError

    @property
    def search_size(self):
        raise NotImplementedError

    def is_solution(self, sol):
        raise NotImplementedError

    def verify(self, sol):
        return self.is_solution(sol)

    def all_solutions(self, budget=None):
        meter = Meter(budget, f"{self.problem} solutions")
        meter.require(self.search_size)
        out = []
        for c in self.candidates():
            meter.tick()
            if self.is_solution(c):
                out.append(c)
        return out

    def brute_solve(self, budget=None):
        meter = Meter(budget, f"{self.problem} brute force")
        meter.require(self.search_size)
        for c in self.candidates():
            meter.tick()
            if self.is_solution(c):
                return c
        raise TotalityError(f"{self.problem}: no solution found; violated premise: {self.premise}")

    def perturb(self, sol):
        """A nearby but different candidate (used to test harness sensitivity)."""
        d = self.solution_domain
        return d.unrank((d.rank(sol) + 1) % d.size)


# ---------------------------------------------------------------- Lonely

class LonelyInstance(Instance):
    """Lonely_q: C induces hyperedges on its q-cycles; find a lonely vertex."""

    problem = "lonely"
    premise = "|V| = 0 mod q and 1 <= |V*| <= q-1"

    def __init__(self, q, domain, C, designated, circuit=None, check=True):
        self.q = q
        self.domain = domain
        self.circuit = circuit
        if C is None:
            if circuit is None:
                raise ValueError("an oracle or a circuit is required")
            C = circuit.__call__
        self.C = C
        self.designated = tuple(sorted(set(designated), key=domain.rank))
        self._dset = frozenset(self.designated)
        self._cycles = {}
        if check:
            self._validate()

    def _validate(self):
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if not 1 <= len(self.designated) <= self.q - 1:
            raise ValueError(f"|V*| = {len(self.designated)} must lie in 1..{self.q - 1}")
        if self.domain.size % self.q:
            raise ValueError(f"|V| = {self.domain.size} is not divisible by q = {self.q}")
        for v in self.designated:
            if not self.domain.contains(v):
                raise ValueError(f"designated vertex {v!r} is outside the domain")

    @classmethod
    def from_edges(cls, q, domain, edge_of, designated, **kw):
        """Build C from a hyperedge function: C(v) is the next member by rank."""
        rank = domain.rank

        def C(v):
            e = edge_of(v)
            if not e:
                return v
            e = sorted(e, key=rank)
            i = e.index(v)
            return e[(i + 1) % len(e)]

        return cls(q, domain, C, designated, **kw)

    @property
    def solution_domain(self):
        return self.domain

    @property
    def search_size(self):
        return self.domain.size

    def candidates(self):
        return iter(self.domain)

    def cycle(self, v):
        """The hyperedge through v as a tuple in cycle order, or None."""
        if v in self._cycles:
            return self._cycles[v]
        cyc = [v]
        cur = v
        ok = True
        for _ in range(self.q - 1):
            cur = self.C(cur)
            if cur in cyc:
                ok = False
                break
            cyc.append(cur)
        if ok and self.C(cur) != v:
            ok = False
        res = tuple(cyc) if ok else None
        self._cycles[v] = res
        return res

    def hyperedge(self, v):
        c = self.cycle(v)
        return None if c is None else tuple(sorted(c, key=self.domain.rank))

    def degree(self, v):
        if not self.domain.contains(v):
            raise ValueError(f"{v!r} is not a vertex")
        return 0 if self.cycle(v) is None else 1

    def is_isolated(self, v):
        return self.cycle(v) is None

    @_safe
    def is_solution(self, v):
        if not self.domain.contains(v):
            return False
        if v in self._dset:
            return self.cycle(v) is not None
        return self.cycle(v) is None

    def designated_isolated(self):
        return all(self.cycle(v) is None for v in self.designated)


class ModInstance(LonelyInstance):
    """MOD_q over {0,1}^n: Lonely without designated vertices (one when q is a power of two)."""

    problem = "mod"
    premise = "2^n - |V*| is not divisible by q"

    def __init__(self, q, n, C, designated=(), circuit=None):
        super().__init__(q, BitStrings(n), C, designated, circuit=circuit, check=False)
        self.n = n
        if (2 ** n - len(self.designated)) % q == 0:
            raise ValueError("2^n - |V*| must not be divisible by q")
        if len(self.designated) > (1 if _is_power_of_two(q) else 0):
            raise ValueError("too many designated vertices for MOD_q")


def _is_power_of_two(q):
    return q >= 1 and q & (q - 1) == 0


# ---------------------------------------------------------------- Leaf

class LeafPrimeInstance(Instance):
    """Leaf'_q: each vertex lists up to k candidate q-subsets."""

    problem = "leafprime"
    premise = "degree of every vertex is at most k and subsets have q distinct members"

    def __init__(self, q, k, domain, C, designated):
        self.q = q
        self.k = k
        self.domain = domain
        self.C = C
        self.designated = designated
        self._listed = {}
        self._edges = {}
        if not domain.contains(designated):
            raise ValueError("designated vertex is outside the domain")

    @property
    def solution_domain(self):
        return self.domain

    @property
    def search_size(self):
        return self.domain.size

    def candidates(self):
        return iter(self.domain)

    def listed(self, v):
        """Normalized, de-duplicated candidate subsets of v (first k listed)."""
        if v in self._listed:
            return self._listed[v]
        out = []
        seen = set()
        rank = self.domain.rank
        for e in list(self.C(v))[: self.k]:
            try:
                e = tuple(sorted(set(e), key=rank))
            except (TypeError, ValueError, KeyError):
                continue
            if len(e) != self.q or e in seen:
                continue
            if not all(self.domain.contains(w) for w in e):
                continue
            seen.add(e)
            out.append(e)
        res = tuple(out)
        self._listed[v] = res
        return res

    def edges(self, v):
        """Hyperedges containing v: listed by every member, sorted by rank tuple."""
        if v in self._edges:
            return self._edges[v]
        rank = self.domain.rank
        out = [e for e in self.listed(v) if v in e and all(e in self.listed(w) for w in e)]
        out.sort(key=lambda e: tuple(rank(w) for w in e))
        res = tuple(out)
        self._edges[v] = res
        return res

    def degree(self, v):
        if not self.domain.contains(v):
            raise ValueError(f"{v!r} is not a vertex")
        return len(self.edges(v))

    @_safe
    def is_solution(self, v):
        if not self.domain.contains(v):
            return False
        d = len(self.edges(v))
        if v == self.designated:
            return d % self.q == 0
        return d % self.q != 0


class LeafInstance(LeafPrimeInstance):
    """Leaf_q: at most q listed subsets per vertex."""

    problem = "leaf"

    def __init__(self, q, domain, C, designated):
        super().__init__(q, q, domain, C, designated)


# ---------------------------------------------------------------- Bipartite

class BipartiteInstance(Instance):
    """Bipartite_q over a two-part union domain; vertices are (0, v) or (1, u)."""

    problem = "bipartite"
    premise = "v* lies on the V side"

    def __init__(self, q, domain, C, designated, k=None):
        if not isinstance(domain, Union) or len(domain.parts) != 2:
            raise ValueError("Bipartite needs a two-part union domain")
        self.q = q
        self.domain = domain
        self.C = C
        self.k = k
        self.designated = designated
        self._listed = {}
        self._nbrs = {}
        if designated[0] != 0 or not domain.contains(designated):
            raise ValueError("v* must be a vertex on the V side")

    @property
    def solution_domain(self):
        return self.domain

    @property
    def search_size(self):
        return self.domain.size

    def candidates(self):
        return iter(self.domain)

    def listed(self, w):
        if w in self._listed:
            return self._listed[w]
        items = list(self.C(w))
        if self.k is not None:
            items = items[: self.k]
        res = frozenset(x for x in items if _is_vertex(self.domain, x) and x[0] != w[0])
        self._listed[w] = res
        return res

    def neighbors(self, w):
        if w in self._nbrs:
            return self._nbrs[w]
        res = tuple(sorted((x for x in self.listed(w) if w in self.listed(x)), key=self.domain.rank))
        self._nbrs[w] = res
        return res

    def degree(self, w):
        if not self.domain.contains(w):
            raise ValueError(f"{w!r} is not a vertex")
        return len(self.neighbors(w))

    @_safe
    def is_solution(self, w):
        if not self.domain.contains(w):
            return False
        d = len(self.neighbors(w))
        if w == self.designated:
            return d % self.q == 0
        return d % self.q != 0


def _is_vertex(domain, x):
    try:
        return domain.contains(x)
    except (TypeError, ValueError):
        return False


# ---------------------------------------------------------------- SuccBipartite

class SuccBipartiteInstance(Instance):
    """SuccinctBipartite_q: multi-edges (v, u, k) with grouping oracles.

    ``count(v, u)`` gives the multiplicity; ``phi_V(v, u, k)`` returns the
    group of (u', k') pairs at pivot v and ``phi_U(v, u, k)`` the group of
    (v', k') pairs at pivot u.  ``adjacency(v)``, when given, lists the
    (u, multiplicity) pairs with nonzero multiplicity and is only used to
    enumerate edges faster.
    """

    problem = "succbipartite"
    premise = "groupings are consistent and the designated edge exists"

    def __init__(self, q, V, U, count, phi_V, phi_U, designated_edge, adjacency=None):
        self.q = q
        self.V = V
        self.U = U
        self.count = count
        self.phi_V = phi_V
        self.phi_U = phi_U
        self.designated_edge = tuple(designated_edge)
        self.adjacency = adjacency
        self._gv = {}
        self._gu = {}

    @property
    def solution_domain(self):
        return Product((self.V, self.U, Range(self.q)))

    @property
    def search_size(self):
        if self.adjacency is not None:
            return self.V.size * self.q
        return self.V.size * self.U.size * self.q

    def multiplicity(self, v, u):
        c = self.count(v, u)
        return c if 0 <= c < self.q else 0

    def is_edge(self, e):
        v, u, k = e
        return self.V.contains(v) and self.U.contains(u) and 1 <= k <= self.multiplicity(v, u)

    def edges(self):
        if self.adjacency is not None:
            for v in self.V:
                for u, c in sorted(self.adjacency(v), key=lambda t: self.U.rank(t[0])):
                    if self.multiplicity(v, u) != c:
                        raise ValueError("adjacency disagrees with the count oracle")
                    for k in range(1, c + 1):
                        yield (v, u, k)
            return
        for v in self.V:
            for u in self.U:
                for k in range(1, self.multiplicity(v, u) + 1):
                    yield (v, u, k)

    def candidates(self):
        d = self.designated_edge
        if not self.is_edge(d):
            yield d
        yield from self.edges()

    def _group(self, raw):
        try:
            items = [tuple(x) for x in raw]
        except TypeError:
            return None
        s = frozenset(items)
        if len(items) != self.q or len(s) != self.q:
            return None
        return s

    def grouped_at_v(self, e):
        if e in self._gv:
            return self._gv[e]
        v, u, k = e
        g = self._group(self.phi_V(v, u, k))
        ok = (g is not None and (u, k) in g
              and all(self.is_edge((v, u2, k2)) for u2, k2 in g)
              and all(self._group(self.phi_V(v, u2, k2)) == g for u2, k2 in g))
        self._gv[e] = ok
        return ok

    def grouped_at_u(self, e):
        if e in self._gu:
            return self._gu[e]
        v, u, k = e
        g = self._group(self.phi_U(v, u, k))
        ok = (g is not None and (v, k) in g
              and all(self.is_edge((v2, u, k2)) for v2, k2 in g)
              and all(self._group(self.phi_U(v2, u, k2)) == g for v2, k2 in g))
        self._gu[e] = ok
        return ok

    @_safe
    def is_solution(self, e):
        e = tuple(e)
        if e == self.designated_edge:
            if not self.is_edge(e):
                return True
            return self.grouped_at_v(e) or not self.grouped_at_u(e)
        if not self.is_edge(e):
            return False
        return not self.grouped_at_v(e) or not self.grouped_at_u(e)

    def degree(self, side, w):
        """Total multiplicity at a V-side (side=0) or U-side (side=1) vertex."""
        if side == 0:
            return sum(self.multiplicity(w, u) for u in self.U)
        return sum(self.multiplicity(v, w) for v in self.V)


# ---------------------------------------------------------------- TwoMatchings

class TwoMatchingsInstance(Instance):
    problem = "twomatchings"
    premise = "both oracles define p-dimensional matchings"

    def __init__(self, p, domain, C0, C1, designated):
        self.p = p
        self.domain = domain
        self.C = (C0, C1)
        self.designated = designated
        self._edge = {}
        if not domain.contains(designated):
            raise ValueError("designated vertex is outside the domain")

    @property
    def solution_domain(self):
        return self.domain

    @property
    def search_size(self):
        return self.domain.size

    def candidates(self):
        return iter(self.domain)

    def _norm(self, b, v):
        try:
            e = tuple(sorted(set(self.C[b](v)), key=self.domain.rank))
        except (TypeError, ValueError, KeyError):
            return None
        return e if len(e) == self.p else None

    def edge(self, b, v):
        key = (b, v)
        if key in self._edge:
            return self._edge[key]
        e = self._norm(b, v)
        if e is not None and (v not in e or any(self._norm(b, w) != e for w in e)):
            e = None
        self._edge[key] = e
        return e

    def deg(self, b, v):
        return 0 if self.edge(b, v) is None else 1

    def degree(self, v):
        return (self.deg(0, v), self.deg(1, v))

    @_safe
    def is_solution(self, v):
        if not self.domain.contains(v):
            return False
        d0, d1 = self.deg(0, v), self.deg(1, v)
        if v == self.designated:
            return d0 != 1 or d1 != 0
        return d0 != d1


# ---------------------------------------------------------------- Chevalley family

def apply_sigma(sigma, x):
    """Permute coordinates: position j of the result holds x[sigma[j]]."""
    return tuple(x[s] for s in sigma)


def permutation_order(sigma):
    seen = [False] * len(sigma)
    order = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            ln += 1
        order = order * ln // gcd(order, ln)
    return order


class _ChevBase(Instance):
    premise = "the system is zecote"

    def _root_ok(self, x, systems):
        x = tuple(x)
        n = systems[0].n_vars
        if len(x) != n or not any(x):
            return False
        if not all(isinstance(a, int) and 0 <= a < systems[0].p for a in x):
            return False
        return all(s.is_root(x) for s in systems)

    def _monomial_ok(self, S, system):
        S = tuple(S)
        facs = self._factors()
        if len(S) != len(facs):
            return False
        if not all(isinstance(s, int) and 0 <= s < len(f) for s, f in zip(S, facs)):
            return False
        return is_max_degree(S, facs, system.n_vars)

    def perturb(self, sol):
        kind, val = sol
        if kind == "monomial":
            facs = self._factors()
            if not val:
                return ChevSolution("root", (0,) * self.n_vars)
            val = list(val)
            val[-1] = (val[-1] + 1) % len(facs[-1])
            return ChevSolution(kind, tuple(val))
        d = QaryStrings(self.p, self.n_vars)
        return ChevSolution(kind, d.unrank((d.rank(tuple(val)) + 1) % d.size))

    @property
    def search_size(self):
        return self.p ** self.n_vars


class ChevalleyInstance(_ChevBase):
    """Chevalley_p: zecote f with sum of degrees below n; find a nonzero root."""

    problem = "chevalley"
    premise = "f is zecote and sum of degrees < n"

    def __init__(self, system):
        if not system.zecote():
            raise ValueError("Chevalley systems must be zecote")
        if system.total_degree() >= system.n_vars:
            raise ValueError("Chevalley needs sum of degrees < number of variables")
        self.system = system
        self.p = system.p
        self.n_vars = system.n_vars

    def _factors(self):
        return []

    @_safe
    def is_solution(self, sol):
        kind, x = sol
        return kind == "root" and self._root_ok(x, [self.system])

    def all_solutions(self, budget=None):
        return [ChevSolution("root", x) for x in roots(self.system, budget, skip_zero=True)]

    def brute_solve(self, budget=None):
        r = roots(self.system, budget, limit=1, skip_zero=True)
        if not r:
            raise TotalityError(f"chevalley: no nonzero root; violated premise: {self.premise}")
        return ChevSolution("root", r[0])


class GeneralChevalleyInstance(_ChevBase):
    problem = "generalchevalley"

    def __init__(self, system):
        if not system.zecote():
            raise ValueError("GeneralChevalley systems must be zecote")
        self.system = system
        self.p = system.p
        self.n_vars = system.n_vars
        self._facs = None

    def _factors(self):
        if self._facs is None:
            self._facs = cw_factors(self.system)
        return self._facs

    @_safe
    def is_solution(self, sol):
        kind, v = sol
        if kind == "monomial":
            return self._monomial_ok(v, self.system)
        if kind == "root":
            return self._root_ok(v, [self.system])
        return False

    def all_solutions(self, budget=None):
        out = [ChevSolution("monomial", S) for S in enumerate_max_degree(self.system, budget)]
        out += [ChevSolution("root", x) for x in roots(self.system, budget, skip_zero=True)]
        return out

    def brute_solve(self, budget=None):
        sols = enumerate_max_degree(self.system, budget)
        if sols:
            return ChevSolution("monomial", sols[0])
        r = roots(self.system, budget, limit=1, skip_zero=True)
        if not r:
            raise TotalityError("generalchevalley: no solution; violated premise: the CW lemma")
        return ChevSolution("root", r[0])


class ChevSymInstance(_ChevBase):
    """Chevalley with symmetry: systems g, h and a permutation sigma of order p."""

    problem = "chevsym"
    premise = "g, h are zecote and sigma has order p"

    def __init__(self, g, h, sigma):
        if g.n_vars != h.n_vars or g.p != h.p:
            raise ValueError("g and h must share variables and field")
        if not (g.zecote() and h.zecote()):
            raise ValueError("g and h must be zecote")
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(g.n_vars)):
            raise ValueError("sigma must be a permutation of the variables")
        if permutation_order(sigma) != g.p:
            raise ValueError(f"sigma must have order exactly p = {g.p}")
        self.g = g
        self.h = h
        self.sigma = sigma
        self.p = g.p
        self.n_vars = g.n_vars
        self._facs = None

    def _factors(self):
        if self._facs is None:
            self._facs = cw_factors(self.g)
        return self._facs

    def in_W(self, x):
        """x in V_g minus V_h."""
        return self.g.is_root(x) and not self.h.is_root(x)

    @_safe
    def is_solution(self, sol):
        kind, v = sol
        if kind == "monomial":
            return self._monomial_ok(v, self.g)
        if kind == "free_action":
            x = tuple(v)
            if len(x) != self.n_vars or not all(isinstance(a, int) and 0 <= a < self.p for a in x):
                return False
            if not self.in_W(x):
                return False
            y = apply_sigma(self.sigma, x)
            return y == x or not self.in_W(y)
        if kind == "root":
            return self._root_ok(v, [self.g, self.h])
        return False

    def all_solutions(self, budget=None, g_roots=None):
        mono = getattr(self, "_g_monomials", None)
        if mono is None:
            mono = enumerate_max_degree(self.g, budget)
        out = [ChevSolution("monomial", S) for S in mono]
        if g_roots is None:
            g_roots = getattr(self, "_g_roots", None)
        vg = roots(self.g, budget) if g_roots is None else g_roots
        wit, rts = [], []
        for x in vg:
            if self.h.is_root(x):
                if any(x):
                    rts.append(ChevSolution("root", x))
            else:
                y = apply_sigma(self.sigma, x)
                if y == x or not self.in_W(y):
                    wit.append(ChevSolution("free_action", x))
        return out + wit + rts

    def brute_solve(self, budget=None):
        sols = self.all_solutions(budget)
        if not sols:
            raise TotalityError(f"chevsym: no solution; violated premise: {self.premise}")
        return sols[0]


def check_free_action(sigma, P, n, p, budget=None):
    """None if <sigma> acts freely on {x : P(x)}, else a violating x."""
    meter = Meter(budget, "free action check")
    meter.require(p ** n)
    for x in itertools.product(range(p), repeat=n):
        meter.tick()
        if P(x):
            y = apply_sigma(sigma, x)
            if y == x or not P(y):
                return x
    return None


# ---------------------------------------------------------------- End-of-Line

class EndOfLineInstance(Instance):
    """Successor/predecessor oracles; u -> v is an edge iff S(u)=v and P(v)=u."""

    problem = "endofline"
    premise = "v* is a source"

    def __init__(self, domain, S, P, designated):
        self.domain = domain
        self.S = S
        self.P = P
        self.designated = designated
        if not domain.contains(designated):
            raise ValueError("designated vertex is outside the domain")

    @property
    def solution_domain(self):
        return self.domain

    @property
    def search_size(self):
        return self.domain.size

    def candidates(self):
        return iter(self.domain)

    def succ(self, v):
        w = self.S(v)
        if w != v and self.domain.contains(w) and self.P(w) == v:
            return w
        return None

    def pred(self, v):
        u = self.P(v)
        if u != v and self.domain.contains(u) and self.S(u) == v:
            return u
        return None

    def degree(self, v):
        return (0 if self.pred(v) is None else 1, 0 if self.succ(v) is None else 1)

    @_safe
    def is_solution(self, v):
        if not self.domain.contains(v):
            return False
        i, o = self.degree(v)
        if v == self.designated:
            return i != 0 or o != 1
        return i != o


# ---------------------------------------------------------------- BIS / SIS

def n_of_q(q):
    """Sum of exponents in the prime factorization of q."""
    n, d = 0, 2
    while d * d <= q:
        while q % d == 0:
            q //= d
            n += 1
        d += 1
    return n + (1 if q > 1 else 0)


def bis_condition(m, n, q):
    return n >= (m + 1) ** n_of_q(q) * (q - 1)


def sis_condition(m, n, q):
    # exact rational comparison of n >= ((m+1)/2)^N (q-1)
    N = n_of_q(q)
    return n * 2 ** N >= (m + 1) ** N * (q - 1)


class _LinBase(Instance):
    values = ()

    def __init__(self, A, q, check=True):
        A = tuple(tuple(int(a) for a in row) for row in A)
        if not A or not A[0] or any(len(r) != len(A[0]) for r in A):
            raise ValueError("A must be a nonempty rectangular matrix")
        self.A = A
        self.q = q
        self.m = len(A)
        self.n = len(A[0])
        if check and not self.condition(self.m, self.n, q):
            raise ValueError(f"{self.problem}: parameter condition fails for m={self.m}, n={self.n}, q={q}")

    @property
    def search_size(self):
        return len(self.values) ** self.n

    def candidates(self):
        return (tuple(x) for x in itertools.product(self.values, repeat=self.n))

    @_safe
    def is_solution(self, x):
        x = tuple(x)
        if len(x) != self.n or not any(x):
            return False
        if not all(isinstance(a, int) and a in self.values for a in x):
            return False
        return all(sum(a * b for a, b in zip(row, x)) % self.q == 0 for row in self.A)

    def perturb(self, x):
        x = list(x)
        vals = list(self.values)
        x[0] = vals[(vals.index(x[0]) + 1) % len(vals)]
        return tuple(x)


class BisInstance(_LinBase):
    problem = "bis"
    premise = "n >= (m+1)^N(q) (q-1)"
    values = (0, 1)
    condition = staticmethod(bis_condition)


class SisInstance(_LinBase):
    problem = "sis"
    premise = "n >= ((m+1)/2)^N(q) (q-1)"
    values = (0, 1, -1)
    condition = staticmethod(sis_condition)


# ---------------------------------------------------------------- amp

class AmpInstance(Instance):
    """Selector bit b plus a payload of problem kind[b]."""

    problem = "amp"

    def __init__(self, b, payload, moduli, kind):
        if b not in (0, 1):
            raise ValueError("selector must be 0 or 1")
        if payload.problem != kind:
            raise ValueError(f"payload must be a {kind} instance")
        if payload.q != moduli[b]:
            raise ValueError(f"payload modulus {payload.q} does not match selector {b}")
        self.b = b
        self.payload = payload
        self.moduli = tuple(moduli)
        self.kind = kind

    @property
    def premise(self):
        return self.payload.premise

    @property
    def solution_domain(self):
        return self.payload.solution_domain

    @property
    def search_size(self):
        return self.payload.search_size

    def candidates(self):
        return self.payload.candidates()

    def is_solution(self, sol):
        return self.payload.is_solution(sol)

    def all_solutions(self, budget=None):
        return self.payload.all_solutions(budget)

    def brute_solve(self, budget=None):
        return self.payload.brute_solve(budget)

    def perturb(self, sol):
        return self.payload.perturb(sol)


# ---------------------------------------------------------------- generic API

def degree(instance, vertex):
    return instance.degree(vertex)


def verify(instance, solution):
    return instance.verify(solution)


def brute_solve(instance, budget=None):
    return instance.brute_solve(budget)


def all_solutions(instance, budget=None):
    return instance.all_solutions(budget)

