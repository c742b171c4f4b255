"""Inter-reductions between the Lonely, Leaf, Bipartite and matching problems.

Every builder takes a source instance and returns a :class:`Reduction`
whose target is built lazily from oracles: nothing is materialized beyond
a handful of per-vertex caches.
"""

from __future__ import annotations

from functools import lru_cache

from ..domains import BitStrings, Interval, Product, Range, Union
from ..problems import (BipartiteInstance, LeafInstance, LeafPrimeInstance, LonelyInstance,
                        ModInstance, SuccBipartiteInstance, TwoMatchingsInstance)
from .base import Reduction, register, short_circuit

__all__ = ["leaf_to_leafprime", "leafprime_to_leaf", "leafprime_to_bipartite",
           "bipartite_to_leafprime", "leaf_to_lonely", "lonely_to_leaf",
           "bipartite_to_succbipartite", "succbipartite_to_twomatchings",
           "twomatchings_to_lonely", "lonely_restrict", "lonely_to_mod", "mod_to_lonely",
           "canonical_matchings"]


def _chunks(seq, size):
    return [tuple(seq[i:i + size]) for i in range(0, len(seq), size)]


def _undesignated_problem(src):
    """First designated vertex that already has an edge, if any."""
    for v in src.designated:
        if not src.is_isolated(v):
            return v
    return None


# ---------------------------------------------------------------- 1a / 1b

@register("A.1a:leaf->leafprime", "leaf", "leafprime", "Leaf_q to Leaf'_q: identity embedding")
def leaf_to_leafprime(src):
    tgt = LeafPrimeInstance(src.q, src.q, src.domain, src.C, src.designated)
    return Reduction("A.1a:leaf->leafprime", tgt, lambda v: v, "Leaf_q to Leaf'_q: identity embedding")


@register("A.1b:leafprime->leaf", "leafprime", "leaf", "Leaf'_q to Leaf_q: vertex copies hold at most q edges each")
def leafprime_to_leaf(src):
    """Split each vertex into ceil(k/q) copies, each holding at most q of its edges."""
    rid, prov = "A.1b:leafprime->leaf", "Leaf'_q to Leaf_q: vertex copies hold at most q edges each"
    q, vs = src.q, src.designated
    if src.degree(vs) % q == 0:
        return short_circuit(rid, prov, "leaf", q, vs, "deg(v*) = 0 mod q")
    t = max(1, -(-src.k // q))
    dom = Product((src.domain, Range(t)))

    def label(w, e):
        return src.edges(w).index(e) // q

    def C(x):
        v, i = x
        out = []
        for j, e in enumerate(src.edges(v)):
            if j // q == i:
                out.append(tuple((w, label(w, e)) for w in e))
        return out

    tgt = LeafInstance(q, dom, C, (vs, src.degree(vs) // q))
    return Reduction(rid, tgt, lambda x: x[0], prov, info={"copies": t})


# ---------------------------------------------------------------- 2a / 2b

@register("A.2a:leafprime->bipartite", "leafprime", "bipartite", "Leaf'_q to Bipartite_q: hyperedges become q-subset vertices")
def leafprime_to_bipartite(src):
    """Vertices on one side, candidate q-subsets on the other."""
    rid, prov = "A.2a:leafprime->bipartite", "Leaf'_q to Bipartite_q: hyperedges become q-subset vertices"
    q = src.q
    from ..domains import Subsets
    subs = Subsets(src.domain, q)
    dom = Union((src.domain, subs))

    def C(x):
        tag, a = x
        if tag == 0:
            return [(1, e) for e in src.edges(a)]
        return [(0, w) for w in a] if a in src.edges(a[0]) else []

    tgt = BipartiteInstance(q, dom, C, (0, src.designated), k=max(src.k, q))

    def back(x):
        tag, a = x
        if tag != 0:
            raise ValueError("subset vertices are never solutions")
        return a

    return Reduction(rid, tgt, back, prov)


@register("A.2b:bipartite->leafprime", "bipartite", "leafprime", "Bipartite_q to Leaf'_q: neighbour lists split into q-edges")
def bipartite_to_leafprime(src):
    """Chunk each good U-vertex's neighbourhood into q-blocks, routed through aux vertices.

    A block {v_1..v_q} of u becomes q hyperedges {v_i} + aux(u, j), where
    aux(u, j) holds q-1 fresh vertices; this keeps blocks from different u
    apart even when they cover the same V-vertices.
    """
    rid, prov = "A.2b:bipartite->leafprime", "Bipartite_q to Leaf'_q: neighbour lists split into q-edges"
    q, vs = src.q, src.designated
    if src.degree(vs) % q == 0:
        return short_circuit(rid, prov, "leafprime", q, vs, "deg(v*) = 0 mod q")
    Vd, Ud = src.domain.parts
    kb = src.k if src.k is not None else Vd.size
    B = max(1, kb // q)
    aux = Product((Ud, Range(B), Range(q - 1)))
    dom = Union((Vd, aux))

    @lru_cache(maxsize=None)
    def blocks(u):
        nb = src.neighbors((1, u))
        if len(nb) % q:
            return ()
        return tuple(_chunks([w[1] for w in nb], q))

    def edge(u, j, v):
        return ((0, v),) + tuple((1, (u, j, i)) for i in range(q - 1))

    def C(x):
        tag, a = x
        out = []
        if tag == 0:
            for _, u in src.neighbors((0, a)):
                for j, blk in enumerate(blocks(u)):
                    if a in blk:
                        out.append(edge(u, j, a))
            return out
        u, j, _ = a
        bl = blocks(u)
        if j < len(bl):
            out = [edge(u, j, v) for v in bl[j]]
        return out

    tgt = LeafPrimeInstance(q, max(kb, q), dom, C, (0, vs[1]))

    def back(x):
        tag, w = x
        if tag != 0:
            raise ValueError("aux vertices are never solutions")
        if (0, w) != vs and src.degree((0, w)) % q:
            return (0, w)
        for nb in src.neighbors((0, w)):
            if src.degree(nb) % q:
                return nb
        raise ValueError("no bad vertex near the returned one")

    return Reduction(rid, tgt, back, prov, info={"blocks_per_u": B})


# ---------------------------------------------------------------- 3a / 3b

@register("A.3a:leaf->lonely", "leaf", "lonely", "Leaf_q to Lonely_q: labelled edge copies")
def leaf_to_lonely(src):
    """q copies per vertex; copy i sits on the i-th edge, spare copies are designated."""
    rid, prov = "A.3a:leaf->lonely", "Leaf_q to Lonely_q: labelled edge copies"
    q, vs = src.q, src.designated
    d = src.degree(vs)
    if d % q == 0:
        return short_circuit(rid, prov, "lonely", q, vs, "deg(v*) = 0 mod q")
    dom = Product((src.domain, Range(q)))

    def edge_of(x):
        v, i = x
        E = src.edges(v)
        if not E:
            return tuple((v, j) for j in range(q))
        if i >= len(E):
            return None
        e = E[i]
        return tuple((w, src.edges(w).index(e)) for w in e)

    des = [(vs, j) for j in range(d, q)]
    tgt = LonelyInstance.from_edges(q, dom, edge_of, des)
    return Reduction(rid, tgt, lambda x: x[0], prov)


def canonical_matchings(domain, q):
    """How the q-1 spare matchings of the Leaf construction are laid out.

    Returns ``"coordinate"`` when the domain is [q]^n with n >= q-1 (match
    along coordinate i), else ``"aux"`` (route rank-consecutive q-blocks
    through fresh vertices).
    """
    from ..domains import QaryStrings
    if isinstance(domain, QaryStrings) and domain.q == q and domain.n >= q - 1:
        return "coordinate"
    return "aux"


@register("A.3b:lonely->leaf", "lonely", "leaf", "Lonely_q to Leaf_q: canonical matchings plus a degree gadget")
def lonely_to_leaf(src):
    """Give every vertex degree q except lonely ones; designated vertices hang off a gadget."""
    rid, prov = "A.3b:lonely->leaf", "Lonely_q to Leaf_q: canonical matchings plus a degree gadget"
    q = src.q
    bad = _undesignated_problem(src)
    if bad is not None:
        return short_circuit(rid, prov, "leaf", q, bad, "a designated vertex is not isolated")
    V = src.domain
    des = set(src.designated)
    k = len(des)
    mode = canonical_matchings(V, q)
    # G-edge aux vertices are indexed by the edge's first member
    parts = [V, Product((V, Range(q - 1))), Product((Range(q - k), Range(q - 1))),
             Range(1)]
    if mode == "aux":
        parts.append(Product((Range(V.size // q), Range(q - 1), Range(q - 1))))
    dom = Union(tuple(parts))
    top = (3, 0)

    def W(i):
        return tuple((2, (i, j)) for j in range(q - 1))

    def g_edge(e):
        return tuple((1, (e[0], j)) for j in range(q - 1))

    def block(b):
        return [V.unrank(b * q + r) for r in range(q)]

    def C(x):
        tag, a = x
        out = []
        if tag == 0:
            e = src.hyperedge(a)
            if e is not None:
                out.append(((0, a),) + g_edge(e))
            for i in range(q - 1):
                if mode == "coordinate":
                    out.append(tuple((0, a[:i] + (c,) + a[i + 1:]) for c in range(q)))
                else:
                    b = V.rank(a) // q
                    out.append(((0, a),) + tuple((4, (b, i, j)) for j in range(q - 1)))
            if a in des:
                out.append(((0, a),) + W(0))
            return out
        if tag == 1:
            e = src.hyperedge(a[0])
            if e is not None and e[0] == a[0]:
                out = [((0, v),) + g_edge(e) for v in e]
            return out
        if tag == 2:
            i, _ = a
            if i == 0:
                out = [((0, u),) + W(0) for u in sorted(des, key=V.rank)]
                out += [(x,) + W(i2) for i2 in range(1, q - k)]
                out.append((top,) + W(0))
            else:
                out = [((2, (0, j)),) + W(i) for j in range(q - 1)]
                out.append((top,) + W(i))
            return out
        if tag == 3:
            return [(top,) + W(i) for i in range(q - k)]
        b, i, _ = a
        return [((0, v),) + tuple((4, (b, i, j)) for j in range(q - 1)) for v in block(b)]

    tgt = LeafInstance(q, dom, C, top)

    def back(x):
        tag, a = x
        if tag != 0:
            raise ValueError("only original vertices can be lonely")
        return a

    return Reduction(rid, tgt, back, prov, info={"matchings": mode})


# ---------------------------------------------------------------- 4a / 4b / 4c

@register("A.4a:bipartite->succbipartite", "bipartite", "succbipartite", "Bipartite_q to SuccBipartite_q: explicit edge counts and groupings")
def bipartite_to_succbipartite(src):
    """Each edge gets multiplicity c = deg(v*)^-1 so that v* has degree 1 mod p."""
    rid, prov = "A.4a:bipartite->succbipartite", "Bipartite_q to SuccBipartite_q: explicit edge counts and groupings"
    p, vs = src.q, src.designated
    d = src.degree(vs) % p
    if d == 0:
        return short_circuit(rid, prov, "succbipartite", p, vs, "deg(v*) = 0 mod p")
    c = pow(d, -1, p)
    Vd, Ud = src.domain.parts

    @lru_cache(maxsize=None)
    def copies(w):
        return [(x[1], k) for x in src.neighbors(w) for k in range(1, c + 1)]

    def group_in(w, key):
        L = copies(w)
        tot = len(L)
        if tot % p == 0:
            usable = tot
        elif w == vs:
            usable = tot - 1
        else:
            return []
        i = L.index(key)
        if i >= usable:
            return []
        s = i // p * p
        return L[s:s + p]

    def count(v, u):
        return c if (1, u) in src.neighbors((0, v)) else 0

    def phi_V(v, u, k):
        return group_in((0, v), (u, k)) if count(v, u) else []

    def phi_U(v, u, k):
        return group_in((1, u), (v, k)) if count(v, u) else []

    def adjacency(v):
        return [(x[1], c) for x in src.neighbors((0, v))]

    last = copies(vs)[-1]
    tgt = SuccBipartiteInstance(p, Vd, Ud, count, phi_V, phi_U, (vs[1],) + last, adjacency)

    def back(e):
        v, u, _ = e
        for w in ((0, v), (1, u)):
            if w != vs and src.degree(w) % p:
                return w
        raise ValueError("edge touches no bad vertex")

    return Reduction(rid, tgt, back, prov, info={"multiplicity": c})


@register("A.4b:succbipartite->twomatchings", "succbipartite", "twomatchings", "SuccBipartite_p to TwoMatchings_p: edges as vertices")
def succbipartite_to_twomatchings(src):
    """Edges become vertices; U-groups give the first matching, V-groups the second."""
    rid, prov = "A.4b:succbipartite->twomatchings", "SuccBipartite_p to TwoMatchings_p: edges as vertices"
    p = src.q
    dom = Product((src.V, src.U, Interval(1, p)))
    es = src.designated_edge
    if not dom.contains(es):
        return short_circuit(rid, prov, "twomatchings", p, es, "designated edge is outside V x U x [p-1]")

    def C0(e):
        if not (src.is_edge(e) and src.grouped_at_u(e)):
            return []
        v, u, k = e
        return [(v2, u, k2) for v2, k2 in src.phi_U(v, u, k)]

    def C1(e):
        if not (src.is_edge(e) and src.grouped_at_v(e)):
            return []
        v, u, k = e
        return [(v, u2, k2) for u2, k2 in src.phi_V(v, u, k)]

    tgt = TwoMatchingsInstance(p, dom, C0, C1, es)
    return Reduction(rid, tgt, lambda e: tuple(e), prov)


@register("A.4c:twomatchings->lonely", "twomatchings", "lonely", "TwoMatchings_p to Lonely_p: union of two matchings")
def twomatchings_to_lonely(src):
    """Copies 0..p-2 follow the first matching, copy p-1 the second."""
    rid, prov = "A.4c:twomatchings->lonely", "TwoMatchings_p to Lonely_p: union of two matchings"
    p, vs = src.p, src.designated
    if src.is_solution(vs):
        return short_circuit(rid, prov, "lonely", p, vs, "v* is already a solution")
    dom = Product((src.domain, Range(p)))

    def edge_of(x):
        v, i = x
        e0, e1 = src.edge(0, v), src.edge(1, v)
        if e0 is None and e1 is None:
            return tuple((v, j) for j in range(p))
        e = e0 if i < p - 1 else e1
        return None if e is None else tuple((w, i) for w in e)

    tgt = LonelyInstance.from_edges(p, dom, edge_of, [(vs, p - 1)])
    return Reduction(rid, tgt, lambda x: x[0], prov)


# ---------------------------------------------------------------- restriction and MOD

@register("A.2:lonely->lonely_k", "lonely", "lonely", "Lonely_p to Lonely_p with exactly k designated vertices")
def lonely_restrict(src, k=1):
    """Lonely_p with exactly k designated vertices (p prime).

    Take t = k / |V*| mod p copies of every vertex; the first k copies of
    designated vertices stay designated and the rest are grouped into
    p-edges.  With t = 1 the domain is kept as is.
    """
    rid, prov = "A.2:lonely->lonely_k", "Lonely_p to Lonely_p with exactly k designated vertices"
    p = src.q
    if not 1 <= k <= p - 1:
        raise ValueError(f"k must lie in 1..{p - 1}")
    bad = _undesignated_problem(src)
    if bad is not None:
        return short_circuit(rid, prov, "lonely", p, bad, "a designated vertex is not isolated")
    ell = len(src.designated)
    t = pow(ell, -1, p) * k % p
    if t == 1:
        dom, wrap, unwrap = src.domain, (lambda v, i: v), (lambda x: (x, 0))
    else:
        dom = Product((src.domain, Range(t)))
        wrap, unwrap = (lambda v, i: (v, i)), (lambda x: x)
    star = sorted((wrap(v, i) for v in src.designated for i in range(t)), key=dom.rank)
    keep, rest = star[:k], star[k:]
    chunk = {}
    for blk in _chunks(rest, p):
        for x in blk:
            chunk[x] = blk
    dset = set(src.designated)

    def edge_of(x):
        if x in chunk:
            return chunk[x]
        v, i = unwrap(x)
        if v in dset:
            return None
        e = src.hyperedge(v)
        return None if e is None else tuple(wrap(w, i) for w in e)

    tgt = LonelyInstance.from_edges(p, dom, edge_of, keep)
    return Reduction(rid, tgt, lambda x: unwrap(x)[0], prov, info={"copies": t, "k": k})


@register("A.2:lonely->mod", "lonely", "mod", "Lonely_p and MOD_p are interreducible")
def lonely_to_mod(src):
    """Restrict, then embed into {0,1}^N and pad with p-edges."""
    rid, prov = "A.2:lonely->mod", "Lonely_p and MOD_p are interreducible"
    p = src.q
    j = 1 if p == 2 else 0
    k = 1 if p == 2 else p - 1
    r1 = lonely_restrict(src, k)
    if r1.short_circuit:
        return short_circuit(rid, prov, "mod", p, r1.info["solution"], r1.info["reason"])
    mid = r1.target
    D = mid.domain
    des_ranks = sorted(D.rank(v) for v in mid.designated)
    M = D.size - k
    N = 1
    while not (2 ** N > D.size and (2 ** N - M - j) % p == 0):
        N += 1
    B = BitStrings(N)

    def nd_rank(v):
        r = D.rank(v)
        return r - sum(1 for d in des_ranks if d < r)

    def nd_unrank(r):
        for d in des_ranks:
            if d <= r:
                r += 1
        return D.unrank(r)

    def to_bits(v):
        return B.unrank(nd_rank(v))

    def C(b):
        r = B.rank(b)
        if r < M:
            v = nd_unrank(r)
            e = mid.cycle(v)
            if e is None:
                return b
            return to_bits(mid.C(v))
        if j and r == M:
            return b
        base = M + j
        s = base + (r - base) // p * p
        return B.unrank(s + (r - s + 1) % p)

    des = (B.unrank(M),) if j else ()
    tgt = ModInstance(p, N, C, des)

    def back(b):
        r = B.rank(b)
        if r >= M:
            raise ValueError("padding vertices are never solutions")
        return r1.back_map(nd_unrank(r))

    return Reduction(rid, tgt, back, prov, info={"N": N, "k": k})


@register("A.2:mod->lonely", "mod", "lonely", "Lonely_p and MOD_p are interreducible")
def mod_to_lonely(src):
    """Add fresh isolated designated vertices until |V| = 0 mod p."""
    rid, prov = "A.2:mod->lonely", "Lonely_p and MOD_p are interreducible"
    p = src.q
    extra = (-2 ** src.n) % p
    dom = Union((src.domain, Range(extra)))

    def C(x):
        tag, a = x
        return (0, src.C(a)) if tag == 0 else x

    des = [(0, d) for d in src.designated] + [(1, i) for i in range(extra)]
    tgt = LonelyInstance(p, dom, C, des)

    def back(x):
        tag, a = x
        if tag != 0:
            raise ValueError("fresh vertices are never solutions")
        return a

    return Reduction(rid, tgt, back, prov, info={"fresh": extra})
