"""End-of-Line into Lonely_q, and the compiler from adaptive Lonely_p queries to one instance."""

from __future__ import annotations

from dataclasses import dataclass

from ..domains import Product, Range, Sequences
from ..errors import PreconditionError
from ..problems import Instance, LonelyInstance, _safe
from .base import Reduction, register, short_circuit

__all__ = ["endofline_to_lonely", "AdaptiveOracleAlgorithm", "TuringInstance", "compile_turing",
           "trivial_matching"]


# ---------------------------------------------------------------- End-of-Line

@register("5.1:endofline->lonely", "endofline", "lonely", "PPAD inside PPA_q: End-of-Line reduces to Lonely_q")
def endofline_to_lonely(src, q=3):
    """Copies V x [q]; an arc u -> v becomes {(u, q-1), (v, 0), ..., (v, q-2)}.

    Vertices with no arc at all get the hyperedge {v} x [q], so only
    sources and sinks stay lonely.
    """
    rid, prov = "5.1:endofline->lonely", "PPAD inside PPA_q: End-of-Line reduces to Lonely_q"
    vs = src.designated
    if src.degree(vs) != (0, 1):
        return short_circuit(rid, prov, "lonely", q, vs, "v* is not a source")
    dom = Product((src.domain, Range(q)))

    def edge_of(x):
        v, i = x
        if i == q - 1:
            w = src.succ(v)
            if w is not None:
                return [(v, q - 1)] + [(w, j) for j in range(q - 1)]
        else:
            u = src.pred(v)
            if u is not None:
                return [(u, q - 1)] + [(v, j) for j in range(q - 1)]
        if src.pred(v) is None and src.succ(v) is None:
            return [(v, j) for j in range(q)]
        return None

    des = [(vs, j) for j in range(q - 1)]
    tgt = LonelyInstance.from_edges(q, dom, edge_of, des)
    return Reduction(rid, tgt, lambda x: x[0], prov)


# ---------------------------------------------------------------- Turing closure

@dataclass
class AdaptiveOracleAlgorithm:
    """Makes exactly t Lonely_p queries over one shared domain, then finalizes.

    ``next_query(x, answers)`` returns the next LonelyInstance (p-1
    designated vertices, all isolated); ``finalize(x, answers)`` turns the
    t answers into a solution, which ``verify(x, sol)`` checks.
    """

    p: int
    t: int
    domain: object
    next_query: object
    finalize: object
    verify: object


class TuringInstance(Instance):
    """The search problem solved by an adaptive algorithm on a fixed input."""

    problem = "turing"
    premise = "queries are well formed on valid answers"

    def __init__(self, alg, x):
        self.alg = alg
        self.x = x

    @property
    def search_size(self):
        return 0

    def candidates(self):
        raise PreconditionError("a Turing instance is solved through its oracle, not by search")

    @_safe
    def is_solution(self, sol):
        return bool(self.alg.verify(self.x, sol))

    def perturb(self, sol):
        if isinstance(sol, tuple) and sol:
            d = self.alg.domain
            return (d.unrank((d.rank(sol[0]) + 1) % d.size),) + sol[1:]
        return sol


def trivial_matching(domain, v, p):
    """The block of p consecutive ranks containing v."""
    r = domain.rank(v)
    lo = r - r % p
    return [domain.unrank(i) for i in range(lo, lo + p)]


def _lonely_answer(Q, v):
    return v not in Q._dset and Q.is_isolated(v)


@register("5.3:turing->lonely", "turing", "lonely",
          "Closure under Turing reductions: adaptive Lonely_p queries become one instance")
def compile_turing(src):
    """One Lonely_p instance on V u V^2 u ... u V^t whose lonely vertices are answer tuples."""
    rid, prov = "5.3:turing->lonely", "Closure under Turing reductions: adaptive Lonely_p queries become one instance"
    alg, x = src.alg, src.x
    p, t, D = alg.p, alg.t, alg.domain
    if D.size % p:
        raise PreconditionError(f"query domain size {D.size} is not divisible by p = {p}")
    cache = {}

    def query(prefix):
        if prefix not in cache:
            Q = alg.next_query(x, prefix)
            if Q.q != p or len(Q.designated) != p - 1 or not Q.designated_isolated():
                raise PreconditionError("each query needs p-1 isolated designated vertices")
            cache[prefix] = Q
        return cache[prefix]

    def edge_of(vb):
        k = len(vb)
        prefix, vk = vb[:-1], vb[-1]
        for i in range(k - 1):
            if not _lonely_answer(query(vb[:i]), vb[i]):
                return [prefix + (u,) for u in trivial_matching(D, vk, p)]
        Q = query(prefix)
        e = Q.hyperedge(vk)
        if e is not None:
            return [prefix + (u,) for u in e]
        if vk in Q._dset:
            if not prefix:
                return None
            return [prefix] + [prefix + (u,) for u in Q.designated]
        if k < t:
            return [vb] + [vb + (u,) for u in query(vb).designated]
        return None

    dom = Sequences(D, t)
    des = [(v,) for v in query(()).designated]
    tgt = LonelyInstance.from_edges(p, dom, edge_of, des)

    def back(vb):
        if len(vb) != t:
            raise ValueError(f"{vb!r} is not a full answer tuple")
        return alg.finalize(x, tuple(vb))

    return Reduction(rid, tgt, back, prov, info={"queries": t})
