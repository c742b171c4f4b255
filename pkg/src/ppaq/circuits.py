"""Arithmetic circuits over F_p and their compilation to polynomial systems.

A circuit is a topologically ordered list of gates.  Each gate is a tuple
``(op, a, b)``:

* ``("INPUT", i, None)``: the i-th input coordinate
* ``("CONST1", None, None)``: the constant 1
* ``("ADD", a, b)`` / ``("MUL", a, b)``: references to earlier gates

``outputs`` lists one gate per input coordinate, so a circuit computes an
endofunction of F_p^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gfpoly import CoefficientPolynomial, PolynomialSystem, PrimeField, var

__all__ = ["ArithmeticCircuit", "CircuitBuilder", "GateVariableMap", "eval_circuit",
           "identity_circuit", "compose_power", "preprocess_lonely",
           "eliminate_const_gates", "nonzero_indicator", "circuit_from_function",
           "translate_circuit", "circuit_polynomials", "circuit_to_system",
           "format_circuit", "parse_circuit"]

OPS = ("INPUT", "CONST1", "ADD", "MUL")


@dataclass(frozen=True)
class ArithmeticCircuit:
    p: int
    n_inputs: int
    gates: tuple
    outputs: tuple

    def __post_init__(self):
        PrimeField(self.p)
        for idx, (op, a, b) in enumerate(self.gates):
            if op not in OPS:
                raise ValueError(f"gate {idx}: unknown op {op!r}")
            if op == "INPUT" and not 0 <= a < self.n_inputs:
                raise ValueError(f"gate {idx}: input index {a} out of range")
            if op in ("ADD", "MUL") and not (0 <= a < idx and 0 <= b < idx):
                raise ValueError(f"gate {idx}: references must point to earlier gates")
        if len(self.outputs) != self.n_inputs:
            raise ValueError("an endofunction circuit needs one output per input")
        for o in self.outputs:
            if not 0 <= o < len(self.gates):
                raise ValueError(f"output reference {o} out of range")

    @property
    def size(self):
        """Number of ADD/MUL gates (the s of the compilation)."""
        return sum(1 for op, _, _ in self.gates if op in ("ADD", "MUL"))

    def has_const(self):
        return any(op == "CONST1" for op, _, _ in self.gates)

    def __call__(self, v):
        return eval_circuit(self, v)


def eval_circuit(C, v):
    if len(v) != C.n_inputs:
        raise ValueError(f"input has {len(v)} coordinates, expected {C.n_inputs}")
    p = C.p
    val = [0] * len(C.gates)
    for idx, (op, a, b) in enumerate(C.gates):
        if op == "INPUT":
            val[idx] = v[a] % p
        elif op == "CONST1":
            val[idx] = 1
        elif op == "ADD":
            val[idx] = (val[a] + val[b]) % p
        else:
            val[idx] = val[a] * val[b] % p
    return tuple(val[o] for o in C.outputs)


class CircuitBuilder:
    """Small helper for writing circuits gate by gate."""

    def __init__(self, p, n_inputs):
        self.p = p
        self.n = n_inputs
        self.gates = []
        self._inputs = {}
        self._one = None

    def _push(self, g):
        self.gates.append(g)
        return len(self.gates) - 1

    def input(self, i):
        if i not in self._inputs:
            self._inputs[i] = self._push(("INPUT", i, None))
        return self._inputs[i]

    def inputs(self):
        return [self.input(i) for i in range(self.n)]

    def one(self):
        if self._one is None:
            self._one = self._push(("CONST1", None, None))
        return self._one

    def add(self, a, b):
        return self._push(("ADD", a, b))

    def mul(self, a, b):
        return self._push(("MUL", a, b))

    def times(self, a, c):
        """c*a for a small nonnegative integer c, by doubling and adding."""
        c %= self.p
        if c == 0:
            return None
        acc = None
        base = a
        while c:
            if c & 1:
                acc = base if acc is None else self.add(acc, base)
            c >>= 1
            if c:
                base = self.add(base, base)
        return acc

    def const(self, c):
        """The constant c, or None for 0 (callers skip zero summands)."""
        return self.times(self.one(), c)

    def neg(self, a):
        return self.times(a, self.p - 1)

    def sub(self, a, b):
        nb = self.neg(b)
        return a if nb is None else self.add(a, nb)

    def power(self, a, e):
        acc = a
        for _ in range(e - 1):
            acc = self.mul(acc, a)
        return acc

    def or01(self, a, b):
        """a + b - ab for 0/1 values, using only additions for the minus."""
        ab = self.mul(a, b)
        s = self.add(a, b)
        nab = self.neg(ab)
        return s if nab is None else self.add(s, nab)

    def inline(self, C, args):
        """Copy C's gates with its inputs bound to the given gate refs."""
        mp = {}
        for idx, (op, a, b) in enumerate(C.gates):
            if op == "INPUT":
                mp[idx] = args[a]
            elif op == "CONST1":
                mp[idx] = self.one()
            elif op == "ADD":
                mp[idx] = self.add(mp[a], mp[b])
            else:
                mp[idx] = self.mul(mp[a], mp[b])
        return [mp[o] for o in C.outputs]

    def build(self, outputs):
        return ArithmeticCircuit(self.p, self.n, tuple(self.gates), tuple(outputs))


def identity_circuit(p, n):
    b = CircuitBuilder(p, n)
    return b.build(b.inputs())


def compose_power(C, k):
    """C applied k times (k >= 1)."""
    b = CircuitBuilder(C.p, C.n_inputs)
    cur = b.inputs()
    for _ in range(k):
        cur = b.inline(C, cur)
    return b.build(cur)


def preprocess_lonely(C):
    """C'(v) = C(v) if C^p(v) = v, else v.

    Built from p inlined copies of C and an equality selector: with
    d_i = C^p(v)_i - v_i, the flag same = 1 - OR_i d_i^(p-1) is 1 exactly
    when C^p(v) = v, and the output is v + same * (C(v) - v).
    """
    p, n = C.p, C.n_inputs
    b = CircuitBuilder(p, n)
    v = b.inputs()
    c1 = b.inline(C, v)
    cur = c1
    for _ in range(p - 1):
        cur = b.inline(C, cur)
    flag = None
    for i in range(n):
        nz = b.power(b.sub(cur[i], v[i]), p - 1)
        flag = nz if flag is None else b.or01(flag, nz)
    same = b.sub(b.one(), flag)
    out = []
    for i in range(n):
        out.append(b.add(v[i], b.mul(same, b.sub(c1[i], v[i]))))
    return b.build(out)


def nonzero_indicator(b, v):
    """OR_i 1[v_i != 0] from x^(p-1) terms with a + b - ab, no constants."""
    ind = None
    for g in v:
        t = b.power(g, b.p - 1)
        ind = t if ind is None else b.or01(ind, t)
    return ind


def eliminate_const_gates(C):
    """Replace every CONST1 by the indicator that the input is nonzero.

    Agrees with C away from 0^n and maps 0^n to 0^n.
    """
    if not C.has_const():
        return C
    b = CircuitBuilder(C.p, C.n_inputs)
    v = b.inputs()
    ind = None
    mp = {}
    for idx, (op, a, c) in enumerate(C.gates):
        if op == "INPUT":
            mp[idx] = v[a]
        elif op == "CONST1":
            if ind is None:
                ind = nonzero_indicator(b, v)
            mp[idx] = ind
        elif op == "ADD":
            mp[idx] = b.add(mp[a], mp[c])
        else:
            mp[idx] = b.mul(mp[a], mp[c])
    return b.build([mp[o] for o in C.outputs])


def translate_circuit(C, d):
    """The conjugate v -> C(v + d) - d."""
    p, n = C.p, C.n_inputs
    b = CircuitBuilder(p, n)
    v = b.inputs()
    shifted = []
    for i in range(n):
        c = b.const(d[i])
        shifted.append(v[i] if c is None else b.add(v[i], c))
    out = b.inline(C, shifted)
    res = []
    for i in range(n):
        c = b.const(-d[i])
        res.append(out[i] if c is None else b.add(out[i], c))
    return b.build(res)


def circuit_from_function(p, n, fn):
    """Interpolating circuit: sum over points a of F(a) * prod_i (1 - (v_i - a_i)^(p-1))."""
    b = CircuitBuilder(p, n)
    v = b.inputs()
    acc = [None] * n
    for a in itertools.product(range(p), repeat=n):
        fa = fn(a)
        if not any(fa):
            continue
        ind = None
        for i in range(n):
            c = b.const(-a[i])
            diff = v[i] if c is None else b.add(v[i], c)
            t = b.sub(b.one(), b.power(diff, p - 1))
            ind = t if ind is None else b.mul(ind, t)
        for j in range(n):
            term = b.times(ind, fa[j])
            if term is None:
                continue
            acc[j] = term if acc[j] is None else b.add(acc[j], term)
    out = []
    for j in range(n):
        if acc[j] is None:
            # the zero function, written as v + (p-1)v
            acc[j] = b.add(v[0], b.neg(v[0]))
        out.append(acc[j])
    return b.build(out)


# ---------------------------------------------------------------- compilation

@dataclass(frozen=True)
class GateVariableMap:
    x: tuple
    z: tuple
    y: tuple
    gate_var: tuple  # per gate: variable index of its value (None for CONST1)

    @property
    def total(self):
        return len(self.x) + len(self.z) + len(self.y)


def circuit_polynomials(C, x_vars, z_vars, y_vars, n_vars):
    """Gate and output polynomials of f_C with explicit variable placement.

    Returns ``(polys, out_vars)`` where ``out_vars[i]`` is the variable that
    the i-th polynomial introduces (gate output or y variable).
    """
    if C.has_const():
        raise ValueError("circuit_to_system requires a circuit without CONST1 gates")
    p = C.p
    gate_var = [None] * len(C.gates)
    zi = 0
    polys, out_vars = [], []
    for idx, (op, a, b) in enumerate(C.gates):
        if op == "INPUT":
            gate_var[idx] = x_vars[a]
            continue
        z = z_vars[zi]
        zi += 1
        gate_var[idx] = z
        va, vb = gate_var[a], gate_var[b]
        d = {}
        if op == "ADD":
            d[var(va)] = d.get(var(va), 0) + 1
            d[var(vb)] = d.get(var(vb), 0) + 1
        else:
            m = ((va, 2),) if va == vb else tuple(sorted(((va, 1), (vb, 1))))
            d[m] = 1
        d[var(z)] = d.get(var(z), 0) - 1
        polys.append(CoefficientPolynomial(n_vars, p, d))
        out_vars.append(z)
    for i, o in enumerate(C.outputs):
        polys.append(CoefficientPolynomial(n_vars, p, {var(gate_var[o]): 1, var(y_vars[i]): -1}))
        out_vars.append(y_vars[i])
    return polys, out_vars, tuple(gate_var)


def circuit_to_system(C):
    """f_C over (x_1..x_n, z_1..z_s, y_1..y_n); C(x) = y iff f_C(x, y, z) = 0."""
    n, s = C.n_inputs, C.size
    x = tuple(range(n))
    z = tuple(range(n, n + s))
    y = tuple(range(n + s, 2 * n + s))
    polys, _, gv = circuit_polynomials(C, x, z, y, 2 * n + s)
    return PolynomialSystem(2 * n + s, tuple(polys), C.p), GateVariableMap(x, z, y, gv)


# ---------------------------------------------------------------- text format

def format_circuit(C):
    lines = [f"circuit p={C.p} n={C.n_inputs}"]
    for idx, (op, a, b) in enumerate(C.gates):
        if op == "INPUT":
            lines.append(f"{idx} INPUT {a}")
        elif op == "CONST1":
            lines.append(f"{idx} CONST1")
        else:
            lines.append(f"{idx} {op} {a} {b}")
    lines.append("outputs " + " ".join(str(o) for o in C.outputs))
    return "\n".join(lines) + "\n"


def parse_circuit(text):
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "circuit":
        raise ValueError("missing circuit header")
    kv = dict(tok.split("=") for tok in head[1:])
    p, n = int(kv["p"]), int(kv["n"])
    gates = []
    outputs = None
    for ln in lines[1:]:
        toks = ln.split()
        if toks[0] == "outputs":
            outputs = tuple(int(t) for t in toks[1:])
            continue
        idx, op = int(toks[0]), toks[1]
        if idx != len(gates):
            raise ValueError("gates must be listed in index order")
        if op == "INPUT":
            gates.append(("INPUT", int(toks[2]), None))
        elif op == "CONST1":
            gates.append(("CONST1", None, None))
        else:
            gates.append((op, int(toks[2]), int(toks[3])))
    if outputs is None:
        raise ValueError("missing outputs line")
    return ArithmeticCircuit(p, n, tuple(gates), outputs)

