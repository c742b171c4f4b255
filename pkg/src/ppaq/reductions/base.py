"""Reduction objects, short-circuit targets, the registry and the round-trip harness."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..budget import BudgetExceeded
from ..domains import Range, Union
from ..gfpoly import PolynomialSystem
from ..problems import (BipartiteInstance, ChevalleyInstance, ChevSymInstance,
                        GeneralChevalleyInstance, LeafInstance, LeafPrimeInstance,
                        LonelyInstance, ModInstance, SuccBipartiteInstance,
                        TotalityError, TwoMatchingsInstance)

__all__ = ["Reduction", "trivial_instance", "short_circuit", "RoundTrip", "verify_reduction",
           "REGISTRY", "register", "get_reduction", "ReductionSpec"]


@dataclass
class Reduction:
    """A target instance plus a map from target solutions to source solutions."""

    id: str
    target: object
    back_map: object
    provenance: str
    short_circuit: bool = False
    info: dict = field(default_factory=dict)

    def __call__(self, sol):
        return self.back_map(sol)


def trivial_instance(problem, q):
    """A small instance of the given problem whose solutions are obvious."""
    if problem == "lonely":
        return LonelyInstance(q, Range(q), lambda v: v, (0,))
    if problem == "leaf":
        return LeafInstance(q, Range(1), lambda v: [], 0)
    if problem == "leafprime":
        return LeafPrimeInstance(q, q, Range(1), lambda v: [], 0)
    if problem == "bipartite":
        return BipartiteInstance(q, Union((Range(1), Range(1))), lambda w: [], (0, 0))
    if problem == "succbipartite":
        return SuccBipartiteInstance(q, Range(1), Range(1), lambda v, u: 0,
                                     lambda *a: [], lambda *a: [], (0, 0, 1))
    if problem == "twomatchings":
        return TwoMatchingsInstance(q, Range(q), lambda v: [], lambda v: [], 0)
    if problem == "chevalley":
        return ChevalleyInstance(PolynomialSystem(1, (), q))
    if problem == "generalchevalley":
        return GeneralChevalleyInstance(PolynomialSystem(1, (), q))
    if problem == "chevsym":
        empty = PolynomialSystem(q, (), q)
        return ChevSymInstance(empty, empty, tuple(list(range(1, q)) + [0]))
    if problem == "mod":
        return ModInstance(q, 1, lambda v: v, ((0,),) if q & (q - 1) == 0 else ())
    raise ValueError(f"no trivial instance for {problem!r}")


def short_circuit(rid, provenance, target_problem, q, solution, reason):
    """Sentinel reduction: the source is already solved by ``solution``."""
    return Reduction(rid, trivial_instance(target_problem, q), lambda _s: solution, provenance,
                     short_circuit=True, info={"reason": reason, "solution": solution})


# ---------------------------------------------------------------- harness

@dataclass
class RoundTrip:
    ok: bool
    checked: int
    exhaustive: bool
    short_circuit: bool
    failures: list

    def as_dict(self):
        return {"ok": self.ok, "checked": self.checked, "exhaustive": self.exhaustive,
                "short_circuit": self.short_circuit, "failures": [repr(f) for f in self.failures[:5]]}


STRUCTURED = ("chevsym",)


def verify_reduction(source, red, budget=None, exhaustive_limit=2 ** 14, corrupt=False):
    """Brute-solve the target, back-map every solution, verify on the source.

    All target solutions are checked when the target search space has at
    most ``exhaustive_limit`` candidates (or the target enumerates its
    solutions structurally); otherwise only the first one.  With
    ``corrupt`` every back-mapped solution is nudged to a neighbouring
    candidate first, which a sensitive harness must notice.
    """
    target = red.target
    exhaustive = target.search_size <= exhaustive_limit or target.problem in STRUCTURED
    if exhaustive:
        try:
            sols = target.all_solutions(budget)
        except BudgetExceeded:
            exhaustive = False
    if not exhaustive:
        sols = [target.brute_solve(budget)]
    if not sols:
        raise TotalityError(f"target of {red.id} has no solution")
    failures = []
    for s in sols:
        try:
            b = red.back_map(s)
            if corrupt:
                b = source.perturb(b)
            good = source.verify(b)
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            good = False
            b = exc
        if not good:
            failures.append((s, b))
    return RoundTrip(not failures, len(sols), exhaustive, red.short_circuit, failures)


# ---------------------------------------------------------------- registry

@dataclass
class ReductionSpec:
    id: str
    build: object          # source instance -> Reduction
    source: str
    target: str
    provenance: str
    generator: object = None   # rng -> source instance, for seeded suites


REGISTRY = {}


def register(rid, source, target, provenance):
    def deco(fn):
        REGISTRY[rid] = ReductionSpec(rid, fn, source, target, provenance)
        fn.reduction_id = rid
        return fn
    return deco


def get_reduction(rid):
    try:
        return REGISTRY[rid]
    except KeyError:
        raise KeyError(f"unknown reduction id {rid!r}; known: {sorted(REGISTRY)}") from None
