"""Reductions that move between moduli: composite q, coprime pairs and prime powers."""

from __future__ import annotations

from math import gcd

from ..domains import Product, Range, Subsets, Union
from ..problems import AmpInstance, BipartiteInstance, LonelyInstance
from .chain import _undesignated_problem, lonely_restrict
from .base import Reduction, register, short_circuit

__all__ = ["amp_to_lonely_qr", "bipartite_qr_to_amp", "lonely_pk_to_lonely_p",
           "prime_power", "coprime_split", "canonical_next"]


def prime_power(q):
    """(p, k) with q = p^k, or None when q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def coprime_split(m):
    """m = q * r with gcd(q, r) = 1 and q the full power of the smallest prime."""
    p = 2
    while m % p:
        p += 1
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q, m


# ---------------------------------------------------------------- amplification

@register("3.1a:amp->lonely_qr", "amp", "lonely", "Lonely_q or Lonely_r reduces to Lonely_qr")
def amp_to_lonely_qr(src):
    """Blow each vertex up by the other modulus: hyperedges e x [r], designated V* x [r]."""
    rid, prov = "3.1a:amp->lonely_qr", "Lonely_q or Lonely_r reduces to Lonely_qr"
    if src.kind != "lonely":
        raise ValueError("the payload must be a Lonely instance")
    inner = src.payload
    other = src.moduli[1 - src.b]
    dom = Product((inner.domain, Range(other)))

    def edge_of(x):
        e = inner.hyperedge(x[0])
        return None if e is None else tuple((w, j) for w in e for j in range(other))

    des = [(v, j) for v in inner.designated for j in range(other)]
    qr = src.moduli[0] * src.moduli[1]
    tgt = LonelyInstance.from_edges(qr, dom, edge_of, des)
    return Reduction(rid, tgt, lambda x: x[0], prov)


@register("3.1b:bipartite_qr->amp", "bipartite", "amp",
          "Bipartite_qr reduces to Bipartite_q or Bipartite_r")
def bipartite_qr_to_amp(src, moduli=None):
    """Pick the modulus that deg(v*) is not divisible by; the graph is unchanged."""
    rid, prov = "3.1b:bipartite_qr->amp", "Bipartite_qr reduces to Bipartite_q or Bipartite_r"
    q, r = moduli or coprime_split(src.q)
    if q * r != src.q or gcd(q, r) != 1 or min(q, r) < 2:
        raise ValueError(f"moduli {q}, {r} must be coprime, at least 2, with product {src.q}")
    vs = src.designated
    d = src.degree(vs)
    if d % (q * r) == 0:
        triv = BipartiteInstance(q, Union((Range(1), Range(1))), lambda w: [], (0, 0))
        return Reduction(rid, AmpInstance(0, triv, (q, r), "bipartite"), lambda _s: vs, prov,
                         short_circuit=True, info={"reason": "deg(v*) = 0 mod qr", "solution": vs})
    b = 0 if d % q else 1
    inner = BipartiteInstance((q, r)[b], src.domain, src.C, vs, k=src.k)
    return Reduction(rid, AmpInstance(b, inner, (q, r), "bipartite"), lambda w: w, prov,
                     info={"selector": b})


# ---------------------------------------------------------------- prime powers

def canonical_next(edge, members, p):
    """Shift a sub-tuple of ``edge`` one step within its canonical p-block.

    The i-subsets of the edge positions are listed in colex order and cut
    into consecutive blocks of p; ``members`` moves to the next subset of
    its block, cyclically.
    """
    pos = Subsets(Range(len(edge)), len(members))
    idx = {w: i for i, w in enumerate(edge)}
    rk = pos.rank(tuple(sorted(idx[w] for w in members)))
    start = rk - rk % p
    nxt = pos.unrank(start + (rk - start + 1) % p)
    return tuple(edge[i] for i in nxt)


@register("3.2:lonely_pk->lonely_p", "lonely", "lonely", "Lonely_{p^k} reduces to Lonely_p")
def lonely_pk_to_lonely_p(src):
    """Vertices become p^t-subsets, t = v_p(|V*|); edges act blockwise on intersections."""
    rid, prov = "3.2:lonely_pk->lonely_p", "Lonely_{p^k} reduces to Lonely_p"
    pk = prime_power(src.q)
    if pk is None:
        raise ValueError(f"q = {src.q} is not a prime power")
    p, _ = pk
    bad = _undesignated_problem(src)
    if bad is not None:
        return short_circuit(rid, prov, "lonely", p, bad, "a designated vertex is not isolated")
    V = src.domain
    ell = len(src.designated)
    t = 0
    while ell % p ** (t + 1) == 0:
        t += 1
    s = p ** t
    dom = Subsets(V, s)

    def C(vb):
        by_edge = {}
        keep = []
        for w in vb:
            e = src.hyperedge(w)
            if e is None:
                keep.append(w)
            else:
                by_edge.setdefault(e, []).append(w)
        if not by_edge:
            return vb
        out = list(keep)
        for e, part in by_edge.items():
            out.extend(canonical_next(e, tuple(part), p))
        return dom.make(out)

    star = list(Subsets(Range(ell), s))
    des = [tuple(src.designated[i] for i in sub) for sub in star]
    mid = LonelyInstance(p, dom, C, des, check=False)

    def back_mid(vb):
        for w in vb:
            if src.is_solution(w):
                return w
        raise ValueError("subset contains no lonely vertex")

    info = {"subset_size": s, "designated": len(des)}
    if len(des) <= p - 1:
        mid._validate()
        return Reduction(rid, mid, back_mid, prov, info=info)
    r2 = lonely_restrict(mid, len(des) % p)
    info["restricted_to"] = len(des) % p
    return Reduction(rid, r2.target, lambda x: back_mid(r2.back_map(x)), prov, info=info)
