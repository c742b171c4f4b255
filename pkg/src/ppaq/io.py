"""JSON files for instances and solutions (format 1).

Oracles are materialized into lookup tables by evaluating them on the
whole domain, so any instance (including a lazily built reduction
target) can be written out and read back with identical behaviour on
in-domain queries.  Lonely instances backed by a circuit store the
circuit text instead of a table.
"""

from __future__ import annotations

import json

from .circuits import format_circuit, parse_circuit
from .domains import domain_from_dict
from .gfpoly import system_from_dict, system_to_dict
from .oracles import ListOracle, PairTable, TableOracle
from .problems import (AmpInstance, BipartiteInstance, BisInstance, ChevalleyInstance, ChevSolution,
                       ChevSymInstance, EndOfLineInstance, GeneralChevalleyInstance, LeafInstance,
                       LeafPrimeInstance, LonelyInstance, ModInstance, SisInstance,
                       SuccBipartiteInstance, TwoMatchingsInstance)

__all__ = ["FORMAT", "to_json", "from_json", "instance_to_dict", "instance_from_dict",
           "solution_to_json", "solution_from_json", "dump", "load", "dumps", "loads"]

FORMAT = 1
CHEV = ("chevalley", "generalchevalley", "chevsym")


def to_json(x):
    """Tuples become lists, recursively."""
    if isinstance(x, (tuple, list)):
        return [to_json(a) for a in x]
    return x


def from_json(x):
    if isinstance(x, list):
        return tuple(from_json(a) for a in x)
    return x


def _map_table(domain, fn):
    out = []
    for v in domain:
        w = fn(v)
        if w != v:
            out.append([to_json(v), to_json(w)])
    return out


def _list_table(domain, fn):
    out = []
    for v in domain:
        items = list(fn(v))
        if items:
            out.append([to_json(v), to_json(items)])
    return out


def _map_oracle(rows):
    return TableOracle({from_json(a): from_json(b) for a, b in rows})


def _list_oracle(rows):
    return ListOracle({from_json(a): list(from_json(b)) for a, b in rows})


def instance_to_dict(inst):
    kind = inst.problem
    d = {"format": FORMAT, "problem": kind}
    if kind in ("lonely", "mod"):
        d["q"] = inst.q
        d["designated"] = to_json(inst.designated)
        if kind == "mod":
            d["n"] = inst.n
        else:
            d["domain"] = inst.domain.to_dict()
        if inst.circuit is not None:
            d["circuit"] = format_circuit(inst.circuit)
        else:
            d["C"] = _map_table(inst.domain, inst.C)
    elif kind in ("leaf", "leafprime"):
        d.update(q=inst.q, k=inst.k, domain=inst.domain.to_dict(),
                 designated=to_json(inst.designated), C=_list_table(inst.domain, inst.C))
    elif kind == "bipartite":
        d.update(q=inst.q, k=inst.k, domain=inst.domain.to_dict(),
                 designated=to_json(inst.designated), C=_list_table(inst.domain, inst.C))
    elif kind == "twomatchings":
        d.update(p=inst.p, domain=inst.domain.to_dict(), designated=to_json(inst.designated),
                 C0=_list_table(inst.domain, inst.C[0]), C1=_list_table(inst.domain, inst.C[1]))
    elif kind == "succbipartite":
        counts, phv, phu = [], [], []
        edges = list(inst.edges())
        de = inst.designated_edge
        if de not in edges:
            edges.append(de)
        for v in inst.V:
            pairs = inst.adjacency(v) if inst.adjacency is not None else ((u, inst.count(v, u)) for u in inst.U)
            for u, c in pairs:
                c = inst.count(v, u)
                if c:
                    counts.append([to_json(v), to_json(u), c])
        for v, u, k in edges:
            key = [to_json(v), to_json(u), k]
            phv.append([key, to_json(list(inst.phi_V(v, u, k)))])
            phu.append([key, to_json(list(inst.phi_U(v, u, k)))])
        d.update(q=inst.q, V=inst.V.to_dict(), U=inst.U.to_dict(), designated_edge=to_json(de),
                 count=counts, phi_V=phv, phi_U=phu)
    elif kind == "endofline":
        d.update(domain=inst.domain.to_dict(), designated=to_json(inst.designated),
                 S=_map_table(inst.domain, inst.S), P=_map_table(inst.domain, inst.P))
    elif kind in ("chevalley", "generalchevalley"):
        d["system"] = system_to_dict(inst.system)
    elif kind == "chevsym":
        d.update(g=system_to_dict(inst.g), h=system_to_dict(inst.h), sigma=list(inst.sigma))
    elif kind in ("bis", "sis"):
        d.update(q=inst.q, A=[list(r) for r in inst.A])
    elif kind == "amp":
        d.update(b=inst.b, moduli=list(inst.moduli), kind=inst.kind, payload=instance_to_dict(inst.payload))
    else:
        raise ValueError(f"cannot serialize a {kind!r} instance")
    return d


def instance_from_dict(d):
    if d.get("format") != FORMAT:
        raise ValueError(f"unsupported format {d.get('format')!r}")
    kind = d["problem"]
    if kind in ("lonely", "mod"):
        circ = parse_circuit(d["circuit"]) if "circuit" in d else None
        C = None if circ is not None else _map_oracle(d["C"])
        des = from_json(d["designated"])
        if kind == "mod":
            return ModInstance(d["q"], d["n"], C, des, circuit=circ)
        return LonelyInstance(d["q"], domain_from_dict(d["domain"]), C, des, circuit=circ)
    if kind == "leaf":
        return LeafInstance(d["q"], domain_from_dict(d["domain"]), _list_oracle(d["C"]),
                            from_json(d["designated"]))
    if kind == "leafprime":
        return LeafPrimeInstance(d["q"], d["k"], domain_from_dict(d["domain"]), _list_oracle(d["C"]),
                                 from_json(d["designated"]))
    if kind == "bipartite":
        return BipartiteInstance(d["q"], domain_from_dict(d["domain"]), _list_oracle(d["C"]),
                                 from_json(d["designated"]), k=d.get("k"))
    if kind == "twomatchings":
        return TwoMatchingsInstance(d["p"], domain_from_dict(d["domain"]), _list_oracle(d["C0"]),
                                    _list_oracle(d["C1"]), from_json(d["designated"]))
    if kind == "succbipartite":
        count = {(from_json(v), from_json(u)): c for v, u, c in d["count"]}
        adj = {}
        for (v, u), c in count.items():
            adj.setdefault(v, []).append((u, c))
        phv = {from_json(k): from_json(g) for k, g in d["phi_V"]}
        phu = {from_json(k): from_json(g) for k, g in d["phi_U"]}
        return SuccBipartiteInstance(d["q"], domain_from_dict(d["V"]), domain_from_dict(d["U"]),
                                     PairTable(count, 0), PairTable(phv, ()), PairTable(phu, ()),
                                     from_json(d["designated_edge"]), adjacency=ListOracle(adj))
    if kind == "endofline":
        return EndOfLineInstance(domain_from_dict(d["domain"]), _map_oracle(d["S"]), _map_oracle(d["P"]),
                                 from_json(d["designated"]))
    if kind == "chevalley":
        return ChevalleyInstance(system_from_dict(d["system"]))
    if kind == "generalchevalley":
        return GeneralChevalleyInstance(system_from_dict(d["system"]))
    if kind == "chevsym":
        return ChevSymInstance(system_from_dict(d["g"]), system_from_dict(d["h"]), tuple(d["sigma"]))
    if kind == "bis":
        return BisInstance(d["A"], d["q"])
    if kind == "sis":
        return SisInstance(d["A"], d["q"])
    if kind == "amp":
        return AmpInstance(d["b"], instance_from_dict(d["payload"]), tuple(d["moduli"]), d["kind"])
    raise ValueError(f"unknown problem {kind!r}")


def solution_to_json(problem, sol):
    if problem in CHEV:
        kind, val = sol
        return {"kind": kind, "value": to_json(val)}
    return to_json(sol)


def solution_from_json(problem, data):
    if problem in CHEV:
        return ChevSolution(data["kind"], from_json(data["value"]))
    return from_json(data)


def dumps(inst):
    return json.dumps(instance_to_dict(inst), sort_keys=True)


def loads(text):
    return instance_from_dict(json.loads(text))


def dump(inst, path):
    with open(path, "w") as fh:
        fh.write(dumps(inst) + "\n")


def load(path):
    with open(path) as fh:
        return loads(fh.read())
