"""Monomial labelings, labeling graphs and the labeled Chevalley-Warning check.

A labeling is a list of rows, one per polynomial, holding a label in
{-1, 0, +1} for each distinct monomial of that polynomial in canonical
order (coefficients collected).
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

from .budget import BudgetExceeded
from .errors import PreconditionError
from .gfpoly import count_max_degree, mono_degree, roots

__all__ = ["system_monomials", "trivial_labeling", "labeled_degree", "labeling_graph",
           "proper_labeling_check", "is_proper", "LabeledCWTReport", "check_labeled_cwt",
           "CONDITIONS"]

CONDITIONS = {
    1: "each polynomial is labeled entirely in {-1,+1} or entirely 0",
    2: "monomials of one polynomial sharing a variable share a label",
    3: "monomials labeled -1 are multilinear",
    4: "a variable in a -1 monomial appears elsewhere only with label +1",
    5: "a polynomial with a nonzero label has a -1 monomial",
    6: "the labeling graph is acyclic",
}


def system_monomials(system):
    return [f.collect().monomials() for f in system.polys]


def trivial_labeling(system):
    return [[0] * len(ms) for ms in system_monomials(system)]


def _check_shape(monos, labeling):
    if len(labeling) != len(monos) or any(len(r) != len(ms) for r, ms in zip(labeling, monos)):
        raise ValueError("labeling does not cover exactly the monomials of the system")
    for row in labeling:
        for lab in row:
            if lab not in (-1, 0, 1):
                raise ValueError(f"label {lab!r} is not in {{-1, 0, +1}}")


def labeled_degree(poly, row):
    """Largest degree among monomials labeled 0 or -1 (0 if there are none)."""
    monos = poly.collect().monomials()
    if len(row) != len(monos):
        raise ValueError("label row length differs from the number of monomials")
    return max((mono_degree(m) for m, lab in zip(monos, row) if lab != 1), default=0)


def labeling_graph(system, labeling):
    """Directed edges x_k -> f_i (label +1) and f_i -> x_k (label -1)."""
    monos = system_monomials(system)
    _check_shape(monos, labeling)
    edges = set()
    for i, (ms, row) in enumerate(zip(monos, labeling)):
        for m, lab in zip(ms, row):
            for v, _ in m:
                if lab == 1:
                    edges.add((("x", v), ("f", i)))
                elif lab == -1:
                    edges.add((("f", i), ("x", v)))
    return sorted(edges)


def proper_labeling_check(system, labeling):
    """None if the labeling is proper, else the id (1-6) of the first failed condition."""
    monos = system_monomials(system)
    _check_shape(monos, labeling)
    for row in labeling:
        if any(lab == 0 for lab in row) and any(lab != 0 for lab in row):
            return 1
    for ms, row in zip(monos, labeling):
        seen = {}
        for m, lab in zip(ms, row):
            for v, _ in m:
                if seen.setdefault(v, lab) != lab:
                    return 2
    for ms, row in zip(monos, labeling):
        for m, lab in zip(ms, row):
            if lab == -1 and any(e > 1 for _, e in m):
                return 3
    occ = {}
    for i, (ms, row) in enumerate(zip(monos, labeling)):
        for m, lab in zip(ms, row):
            for v, _ in m:
                occ.setdefault(v, []).append((i, lab))
    for v, lst in occ.items():
        owners = {i for i, lab in lst if lab == -1}
        for i in owners:
            if any(i2 != i and lab != 1 for i2, lab in lst):
                return 4
    for row in labeling:
        if any(lab != 0 for lab in row) and -1 not in row:
            return 5
    ts = TopologicalSorter()
    for a, b in labeling_graph(system, labeling):
        ts.add(b, a)
    try:
        ts.prepare()
    except CycleError:
        return 6
    return None


def is_proper(system, labeling):
    return proper_labeling_check(system, labeling) is None


@dataclass(frozen=True)
class LabeledCWTReport:
    labeled_degree_sum: int
    n_vars: int
    count_M: int
    count_V: int | None

    def as_dict(self):
        return {"labeled_degree_sum": self.labeled_degree_sum, "n_vars": self.n_vars,
                "count_M": self.count_M, "count_V": self.count_V}


def check_labeled_cwt(system, labeling, budget=None, count_roots=True):
    """Check the premises of the labeled theorem and confirm |M_f| = 0."""
    bad = proper_labeling_check(system, labeling)
    if bad is not None:
        raise PreconditionError(f"labeling is not proper: condition ({bad}) fails: {CONDITIONS[bad]}")
    total = sum(labeled_degree(f, row) for f, row in zip(system.polys, labeling))
    if total >= system.n_vars:
        raise PreconditionError(
            f"labeled degree sum {total} is not below the number of variables {system.n_vars}")
    cm = count_max_degree(system, budget)
    if cm != 0:
        raise AssertionError(f"labeled CW conclusion fails: |M| = {cm}")
    cv = None
    if count_roots:
        try:
            cv = len(roots(system, budget))
        except BudgetExceeded:
            cv = None
    return LabeledCWTReport(total, system.n_vars, cm, cv)
