"""Polynomials over prime fields and the Chevalley-Warning machinery.

A monic monomial is a tuple of ``(variable, exponent)`` pairs sorted by
variable index, with no zero exponents.  The empty tuple is the constant 1.

Polynomials come in two shapes:

* ``CoefficientPolynomial`` maps monomials to coefficients in 1..p-1.
* ``ExplicitPolynomial`` is the expansion into monic monomials, a monomial
  with coefficient c appearing as c adjacent copies.

Both keep terms in the canonical order: by total degree, then by the dense
exponent vector ascending.  The constant monomial always comes first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .budget import BudgetExceeded, Meter

__all__ = [
    "PrimeField", "is_prime", "ONE", "mono_mul", "mono_fold", "mono_degree",
    "mono_eval", "mono_key", "var", "CoefficientPolynomial", "ExplicitPolynomial",
    "PolynomialSystem", "CWFactor", "expand", "collect", "cw_factor",
    "cw_factors", "fold_exponent", "is_max_degree", "count_max_degree",
    "enumerate_max_degree", "variety", "roots", "CWReport", "check_cw_lemma",
    "binomial_mod_p", "parse_polynomial", "format_polynomial",
    "system_to_dict", "system_from_dict", "BudgetExceeded",
]


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)


# ---------------------------------------------------------------- monomials

ONE = ()


def var(i, e=1):
    return ((i, e),) if e else ONE


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def fold_exponent(e, p):
    """Reduce an exponent modulo x^p - x: e > 0 maps into 1..p-1."""
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1


def mono_fold(m, p):
    return tuple((v, fold_exponent(e, p)) for v, e in m)


def mono_degree(m):
    return sum(e for _, e in m)


def mono_eval(m, point, p):
    r = 1
    for v, e in m:
        r = r * pow(point[v], e, p) % p
        if r == 0:
            return 0
    return r


def mono_key(m, n_vars):
    dense = [0] * n_vars
    for v, e in m:
        dense[v] = e
    return (mono_degree(m), tuple(dense))


def _check_mono(m, n_vars):
    for v, e in m:
        if not 0 <= v < n_vars:
            raise ValueError(f"variable index {v} out of range for {n_vars} variables")
        if e <= 0:
            raise ValueError("monomials store positive exponents only")


# ---------------------------------------------------------------- polynomials

class CoefficientPolynomial:
    """Collected form: monomial -> coefficient in 1..p-1."""

    __slots__ = ("n_vars", "p", "coeffs")

    def __init__(self, n_vars, p, coeffs=None):
        self.n_vars = n_vars
        self.p = p
        d = {}
        for m, c in (coeffs or {}).items():
            _check_mono(m, n_vars)
            c %= p
            if c:
                d[m] = c
        keys = sorted(d, key=lambda m: mono_key(m, n_vars))
        self.coeffs = {m: d[m] for m in keys}

    @property
    def field(self):
        return PrimeField(self.p)

    @classmethod
    def constant(cls, n_vars, p, c=1):
        return cls(n_vars, p, {ONE: c})

    @classmethod
    def variable(cls, n_vars, p, i):
        return cls(n_vars, p, {var(i): 1})

    def monomials(self):
        return list(self.coeffs)

    def items(self):
        return list(self.coeffs.items())

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max((mono_degree(m) for m in self.coeffs), default=0)

    def constant_term(self):
        return self.coeffs.get(ONE, 0)

    def variables(self):
        return sorted({v for m in self.coeffs for v, _ in m})

    def __eq__(self, other):
        return (isinstance(other, CoefficientPolynomial) and self.n_vars == other.n_vars
                and self.p == other.p and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n_vars, self.p, tuple(self.coeffs.items())))

    def __repr__(self):
        return f"CoefficientPolynomial({format_polynomial(self)!r}, p={self.p})"

    def _same(self, other):
        if self.n_vars != other.n_vars or self.p != other.p:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._same(other)
        d = dict(self.coeffs)
        for m, c in other.coeffs.items():
            d[m] = d.get(m, 0) + c
        return CoefficientPolynomial(self.n_vars, self.p, d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CoefficientPolynomial(self.n_vars, self.p, {m: c * v for m, v in self.coeffs.items()})

    def mul(self, other, fold=False):
        self._same(other)
        p = self.p
        d = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = mono_mul(m1, m2)
                if fold:
                    m = mono_fold(m, p)
                d[m] = (d.get(m, 0) + c1 * c2) % p
        return CoefficientPolynomial(self.n_vars, p, d)

    def __mul__(self, other):
        return self.mul(other)

    def power(self, k, fold=False):
        r = CoefficientPolynomial.constant(self.n_vars, self.p)
        for _ in range(k):
            r = r.mul(self, fold=fold)
        return r

    def fold(self):
        d = {}
        for m, c in self.coeffs.items():
            f = mono_fold(m, self.p)
            d[f] = d.get(f, 0) + c
        return CoefficientPolynomial(self.n_vars, self.p, d)

    def eval(self, point):
        if len(point) != self.n_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n_vars}")
        p = self.p
        return sum(c * mono_eval(m, point, p) for m, c in self.coeffs.items()) % p

    def expand(self):
        return expand(self)


@dataclass(frozen=True)
class ExplicitPolynomial:
    """Expansion into monic monomials; repetition encodes coefficients."""

    n_vars: int
    terms: tuple
    p: int

    def __post_init__(self):
        for m in self.terms:
            _check_mono(m, self.n_vars)

    @property
    def field(self):
        return PrimeField(self.p)

    def eval(self, point):
        if len(point) != self.n_vars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n_vars}")
        p = self.p
        return sum(mono_eval(m, point, p) for m in self.terms) % p

    def collect(self):
        return collect(self)

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=0)

    def has_constant_term(self):
        return self.collect().constant_term() != 0

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_polynomial(self)


def expand(poly):
    """Coefficient form -> explicit monic expansion in canonical order."""
    terms = []
    for m, c in poly.coeffs.items():
        terms.extend([m] * c)
    return ExplicitPolynomial(poly.n_vars, tuple(terms), poly.p)


def collect(poly):
    d = {}
    for m in poly.terms:
        d[m] = d.get(m, 0) + 1
    return CoefficientPolynomial(poly.n_vars, poly.p, d)


def _as_collected(poly):
    if isinstance(poly, CoefficientPolynomial):
        return poly
    return collect(poly)


@dataclass(frozen=True)
class PolynomialSystem:
    n_vars: int
    polys: tuple
    p: int

    def __post_init__(self):
        PrimeField(self.p)
        polys = tuple(expand(f) if isinstance(f, CoefficientPolynomial) else f for f in self.polys)
        object.__setattr__(self, "polys", polys)
        for f in polys:
            if f.n_vars != self.n_vars or f.p != self.p:
                raise ValueError("all polynomials must share n_vars and the field")

    @classmethod
    def of(cls, n_vars, p, polys):
        return cls(n_vars, tuple(polys), p)

    @property
    def field(self):
        return PrimeField(self.p)

    def __len__(self):
        return len(self.polys)

    def zecote(self):
        return all(not f.has_constant_term() for f in self.polys)

    def degrees(self):
        return [f.collect().degree() for f in self.polys]

    def total_degree(self):
        return sum(self.degrees())

    def collected(self):
        return [f.collect() for f in self.polys]

    def eval(self, point):
        return tuple(f.eval(point) for f in self.polys)

    def is_root(self, point):
        return all(v == 0 for v in self.eval(point))

    def concat(self, other):
        if other.n_vars != self.n_vars or other.p != self.p:
            raise ValueError("systems live in different rings")
        return PolynomialSystem(self.n_vars, self.polys + other.polys, self.p)


# ---------------------------------------------------------------- CW factors

@dataclass(frozen=True)
class CWFactor:
    source_index: int
    terms: tuple
    p: int

    def __len__(self):
        return len(self.terms)

    def groups(self):
        """Distinct monomials as (monomial, first index, multiplicity)."""
        out = []
        for i, m in enumerate(self.terms):
            if out and out[-1][0] == m:
                out[-1][2] += 1
            else:
                out.append([m, i, 1])
        return [tuple(g) for g in out]

    def eval(self, point):
        p = self.p
        return sum(mono_eval(m, point, p) for m in self.terms) % p


def cw_factor(f, index=0):
    """Expansion of 1 - f^(p-1), coefficients collected, exponents folded."""
    cf = _as_collected(f)
    p = cf.p
    power = cf.power(p - 1, fold=True)
    one = CoefficientPolynomial.constant(cf.n_vars, p)
    return CWFactor(index, expand((one - power).fold()).terms, p)


def cw_factors(system):
    return [cw_factor(f, i) for i, f in enumerate(system.polys)]


def is_max_degree(S, factors, n_vars):
    """True iff the folded product of the chosen terms is prod x_j^(p-1)."""
    if len(S) != len(factors):
        raise ValueError("one term index per factor is required")
    if not factors:
        return n_vars == 0
    p = factors[0].p
    exps = [0] * n_vars
    for s, fac in zip(S, factors):
        for v, e in fac.terms[s]:
            exps[v] = fold_exponent(exps[v] + e, p)
    return all(e == p - 1 for e in exps)


class _MaxDegreeDP:
    """Exact frontier dynamic program over the CW factors.

    Factors are processed in order.  The state is the folded exponent of
    every variable that has been touched and will be touched again; when a
    variable is seen for the last time its exponent must be p-1.  Counting
    never expands the tuple product.
    """

    def __init__(self, factors, n_vars, p, meter):
        self.order = list(range(len(factors)))
        self.factors = list(factors)
        self.groups = [f.groups() for f in self.factors]
        self.n_vars = n_vars
        self.p = p
        m = len(self.factors)
        first, last = {}, {}
        for i, gs in enumerate(self.groups):
            for mono, _, _ in gs:
                for v, _ in mono:
                    first.setdefault(v, i)
                    last[v] = i
        self.dead = any(v not in last for v in range(n_vars))
        if m == 0:
            self.dead = n_vars > 0
        self.closing = [[] for _ in range(m)]
        for v, i in last.items():
            self.closing[i].append(v)
        self.open_after = []
        for i in range(m):
            self.open_after.append(tuple(sorted(v for v in last if first[v] <= i < last[v])))
        # reach[i][v]: most degree in v that factors after i can still add
        reach = [dict() for _ in range(m)]
        acc = {}
        for i in range(m - 1, -1, -1):
            reach[i] = dict(acc)
            best = {}
            for mono, _, _ in self.groups[i]:
                for v, e in mono:
                    if e > best.get(v, 0):
                        best[v] = e
            for v, e in best.items():
                acc[v] = min(p - 1, acc.get(v, 0) + e)
        self.reach = reach
        self.trans = []
        self.ways = []
        if not self.dead:
            self._forward(meter)
        if not self.dead:
            self._backward()

    def _forward(self, meter):
        """Layer by layer; moves depend only on the state's projection onto the factor."""
        p = self.p
        target = p - 1
        states = {()}
        prev_open = ()
        for i, gs in enumerate(self.groups):
            touched = sorted({v for mono, _, _ in gs for v, _ in mono})
            closing = set(self.closing[i])
            open_now = self.open_after[i]
            rch = self.reach[i]
            pidx = {v: j for j, v in enumerate(prev_open)}
            tpos = {v: j for j, v in enumerate(touched)}
            key_src = [pidx.get(v) for v in touched]
            # each slot of the next state comes from the move outcome or the old state
            recipe = [(True, tpos[v]) if v in tpos else (False, pidx[v]) for v in open_now]
            deltas = []
            for mono, start, cnt in gs:
                d = [0] * len(touched)
                for v, e in mono:
                    d[tpos[v]] += e
                deltas.append((start, cnt, d))
            table = {}
            tr = {}
            nxt = set()
            for st in states:
                key = tuple(0 if j is None else st[j] for j in key_src)
                outs = table.get(key)
                if outs is None:
                    outs = []
                    for start, cnt, d in deltas:
                        meter.tick()
                        vals = [fold_exponent(k + e, p) for k, e in zip(key, d)]
                        ok = True
                        for v, val in zip(touched, vals):
                            if v in closing:
                                if val != target:
                                    ok = False
                                    break
                            elif val + rch.get(v, 0) < target:
                                ok = False
                                break
                        if ok:
                            outs.append((start, cnt, vals))
                    table[key] = outs
                moves = []
                for start, cnt, vals in outs:
                    meter.tick()
                    ns = tuple(vals[j] if frm else st[j] for frm, j in recipe)
                    moves.append((start, cnt, ns))
                    nxt.add(ns)
                tr[st] = moves
            self.trans.append(tr)
            states = nxt
            prev_open = open_now
            if not states:
                self.dead = True
                return

    def _backward(self):
        m = len(self.groups)
        ways = [None] * (m + 1)
        ways[m] = {(): 1}
        for i in range(m - 1, -1, -1):
            w = {}
            nxt = ways[i + 1]
            for s, moves in self.trans[i].items():
                total = 0
                for _, cnt, ns in moves:
                    total += cnt * nxt.get(ns, 0)
                w[s] = total
            ways[i] = w
        self.ways = ways

    def count(self):
        if self.dead:
            return 0
        if not self.groups:
            return 1
        return self.ways[0].get((), 0)

    def tuples(self):
        """All max-degree tuples in the original factor order, sorted."""
        out = []
        inv = [0] * len(self.order)
        for pos, i in enumerate(self.order):
            inv[i] = pos
        for t in self._raw_tuples():
            out.append(tuple(t[inv[i]] for i in range(len(inv))))
        out.sort()
        return out

    def _raw_tuples(self):
        if self.count() == 0:
            return
        m = len(self.groups)
        prefix = []

        def rec(i, s):
            if i == m:
                yield tuple(prefix)
                return
            nxt = self.ways[i + 1]
            for start, cnt, ns in self.trans[i][s]:
                if nxt.get(ns, 0) == 0:
                    continue
                for idx in range(start, start + cnt):
                    prefix.append(idx)
                    yield from rec(i + 1, ns)
                    prefix.pop()

        yield from rec(0, ())


def count_max_degree(system, budget=None):
    """|M_f| without listing the tuples."""
    meter = Meter(budget, "max-degree count")
    dp = _MaxDegreeDP(cw_factors(system), system.n_vars, system.p, meter)
    return dp.count()


def enumerate_max_degree(system, budget=None):
    """All max-degree tuples of CW_f as term-index tuples, lexicographic."""
    meter = Meter(budget, "max-degree enumeration")
    dp = _MaxDegreeDP(cw_factors(system), system.n_vars, system.p, meter)
    total = dp.count()
    meter.require(total)
    return dp.tuples()


# ---------------------------------------------------------------- roots

def variety(system, budget=None):
    """All common roots by exhaustive enumeration of F_p^n."""
    p, n = system.p, system.n_vars
    meter = Meter(budget, "variety")
    meter.require(p ** n)
    polys = system.collected()
    out = []
    for x in itertools.product(range(p), repeat=n):
        meter.tick()
        if all(f.eval(x) == 0 for f in polys):
            out.append(x)
    return out


def roots(system, budget=None, limit=None, skip_zero=False):
    """Common roots by backtracking with propagation, lexicographic order.

    Variables occurring in a polynomial with few unassigned variables are
    branched first; a polynomial is checked as soon as it is fully assigned.
    ``limit`` stops after that many roots; with ``skip_zero`` the all-zero
    point is not reported.  The full set is sorted before returning.
    """
    p, n = system.p, system.n_vars
    meter = Meter(budget, "root search")
    polys = [list(f.items()) for f in system.collected()]
    poly_vars = [sorted({v for m, _ in f for v, _ in m}) for f in polys]
    var_polys = [[] for _ in range(n)]
    for i, vs in enumerate(poly_vars):
        for v in vs:
            var_polys[v].append(i)
    for i, f in enumerate(polys):
        if not poly_vars[i] and f:
            return []
    remaining = [len(vs) for vs in poly_vars]
    x = [0] * n
    assigned = [False] * n
    out = []
    lex_order = limit is not None

    def value(i):
        s = 0
        for m, c in polys[i]:
            t = c
            for v, e in m:
                t = t * pow(x[v], e, p) % p
            s += t
        return s % p

    def choose():
        if lex_order:
            for v in range(n):
                if not assigned[v]:
                    return v
            return None
        best, best_r = None, None
        for i, r in enumerate(remaining):
            if r and (best_r is None or r < best_r):
                best_r = r
                best = i
                if r == 1:
                    break
        if best is not None:
            for v in poly_vars[best]:
                if not assigned[v]:
                    return v
        for v in range(n):
            if not assigned[v]:
                return v
        return None

    class _Done(Exception):
        pass

    def rec():
        v = choose()
        if v is None:
            pt = tuple(x)
            if skip_zero and not any(pt):
                return
            out.append(pt)
            if limit is not None and len(out) >= limit:
                raise _Done
            return
        assigned[v] = True
        for i in var_polys[v]:
            remaining[i] -= 1
        full = [i for i in var_polys[v] if remaining[i] == 0]
        for a in range(p):
            meter.tick()
            x[v] = a
            if all(value(i) == 0 for i in full):
                rec()
        x[v] = 0
        assigned[v] = False
        for i in var_polys[v]:
            remaining[i] += 1

    try:
        rec()
    except _Done:
        pass
    out.sort()
    return out


@dataclass(frozen=True)
class CWReport:
    count_V: int
    count_M: int
    n_vars: int
    p: int
    congruent: bool

    def as_dict(self):
        return {"count_V": self.count_V, "count_M": self.count_M, "n_vars": self.n_vars,
                "p": self.p, "congruent": self.congruent}


def check_cw_lemma(system, budget=None):
    """Compare |V_f| with (-1)^n |M_f| modulo p."""
    p, n = system.p, system.n_vars
    cv = len(roots(system, budget))
    cm = count_max_degree(system, budget)
    sign = -1 if n % 2 else 1
    return CWReport(cv, cm, n, p, (cv - sign * cm) % p == 0)


# ---------------------------------------------------------------- Lucas

def binomial_mod_p(n, k, p):
    """C(n, k) mod p, digit by digit in base p."""
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        num = den = 1
        for i in range(b):
            num = num * (a - i) % p
            den = den * (i + 1) % p
        r = r * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return r


# ---------------------------------------------------------------- text format

_TERM = re.compile(r"([+-]?)([^+-]+)")
_VAR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text, n_vars, p):
    """Parse ``c*x1^e1*x2^e2 + ...`` (1-based variables) into collected form."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return CoefficientPolynomial(n_vars, p)
    pos = 0
    d = {}
    for mt in _TERM.finditer(s):
        if mt.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = mt.end()
        sign = -1 if mt.group(1) == "-" else 1
        coef = 1
        mono = ONE
        for part in mt.group(2).split("*"):
            if part.isdigit():
                coef *= int(part)
                continue
            mv = _VAR.match(part)
            if not mv:
                raise ValueError(f"bad factor {part!r} in {text!r}")
            idx = int(mv.group(1)) - 1
            e = int(mv.group(2) or 1)
            if idx < 0 or idx >= n_vars:
                raise ValueError(f"variable x{idx + 1} out of range")
            if e:
                mono = mono_mul(mono, var(idx, e))
        d[mono] = d.get(mono, 0) + sign * coef
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    return CoefficientPolynomial(n_vars, p, d)


def _format_mono(m):
    return "*".join(f"x{v + 1}" + (f"^{e}" if e > 1 else "") for v, e in m)


def format_polynomial(poly):
    cf = _as_collected(poly)
    if cf.is_zero():
        return "0"
    parts = []
    for m, c in cf.coeffs.items():
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(_format_mono(m))
        else:
            parts.append(f"{c}*{_format_mono(m)}")
    return " + ".join(parts)


def system_to_dict(system):
    return {"p": system.p, "n_vars": system.n_vars,
            "polys": [format_polynomial(f) for f in system.polys]}


def system_from_dict(d):
    p, n = int(d["p"]), int(d["n_vars"])
    return PolynomialSystem(n, tuple(parse_polynomial(t, n, p) for t in d["polys"]), p)
