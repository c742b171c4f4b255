"""Linear algebra mod q and the BIS/SIS algorithms.

Base cases are Gaussian elimination over F_2 and F_3.  Composite moduli
are handled by the column-splitting bootstrap: solve blocks mod q2, stack
the scaled block sums into B, solve B mod q1 and glue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .gfpoly import CoefficientPolynomial, PolynomialSystem, is_prime, var
from .problems import BisInstance, ChevalleyInstance, SisInstance, bis_condition, sis_condition
from .reductions.base import Reduction, register

__all__ = ["FactorProfile", "n_of", "kernel_mod_p", "kernel_vector_f2", "kernel_vector_f3",
           "bootstrap_bis", "bootstrap_sis", "solve_bis_pow2", "solve_sis_2k3l", "sis_required_n",
           "bis_to_chevalley", "sis_to_chevalley", "check_solution", "read_matrix", "format_matrix"]


@dataclass(frozen=True)
class FactorProfile:
    q: int
    factors: tuple      # ((p, e), ...) with p increasing
    N: int


def n_of(q):
    """Prime factorization of q and N(q), the sum of its exponents."""
    if q < 1:
        raise ValueError("q must be positive")
    out, d, r = [], 2, q
    while d * d <= r:
        e = 0
        while r % d == 0:
            r //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if r > 1:
        out.append((r, 1))
    return FactorProfile(q, tuple(out), sum(e for _, e in out))


def _shape(A):
    A = [list(map(int, row)) for row in A]
    if not A or not A[0] or any(len(r) != len(A[0]) for r in A):
        raise ValueError("A must be a nonempty rectangular matrix")
    return A, len(A), len(A[0])


def kernel_mod_p(A, p):
    """A nonzero x in F_p^n with Ax = 0, leading nonzero entry 1; None if the kernel is trivial."""
    A, m, n = _shape(A)
    M = [[a % p for a in row] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [a * inv % p for a in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = next((c for c in range(n) if c not in pivots), None)
    if free is None:
        return None
    x = [0] * n
    x[free] = 1
    for i, c in enumerate(pivots):
        x[c] = -M[i][free] % p
    lead = next(a for a in x if a)
    inv = pow(lead, -1, p)
    return tuple(a * inv % p for a in x)


def kernel_vector_f2(A):
    x = kernel_mod_p(A, 2)
    if x is None:
        raise PreconditionError("kernel mod 2 is trivial; need more columns than rows")
    return x


def kernel_vector_f3(A):
    """Kernel vector mod 3 with entries read as {-1, 0, 1}."""
    x = kernel_mod_p(A, 3)
    if x is None:
        raise PreconditionError("kernel mod 3 is trivial; need more columns than rows")
    return tuple(-1 if a == 2 else a for a in x)


def check_solution(A, x, q, values=(0, 1)):
    """x != 0, entries in ``values`` and Ax = 0 mod q."""
    x = tuple(x)
    if not any(x) or any(a not in values for a in x):
        return False
    return all(sum(a * b for a, b in zip(row, x)) % q == 0 for row in A)


# ---------------------------------------------------------------- bootstrap

def _split(n, n1):
    """Column ranges of n1 blocks; the last one absorbs the remainder."""
    n2 = n // n1
    return [(i * n2, (i + 1) * n2 if i < n1 - 1 else n) for i in range(n1)], n2


def _bootstrap(A, q1, q2, n1, solve1, solve2, values):
    A, m, n = _shape(A)
    if n < n1:
        raise PreconditionError(f"need at least {n1} columns, got {n}")
    blocks, _ = _split(n, n1)
    ys, cols = [], []
    for i, (a, b) in enumerate(blocks):
        Ai = [row[a:b] for row in A]
        try:
            y = tuple(solve2(Ai))
        except PreconditionError as exc:
            raise PreconditionError(f"block {i}: {exc}") from exc
        if not check_solution(Ai, y, q2, values):
            raise AssertionError(f"block {i}: sub-solver returned an invalid vector")
        ys.append(y)
        cols.append([sum(u * v for u, v in zip(row, y)) // q2 for row in Ai])
    B = [[cols[i][r] for i in range(n1)] for r in range(m)]
    z = tuple(solve1(B))
    if not check_solution(B, z, q1, values):
        raise AssertionError("outer sub-solver returned an invalid vector")
    return tuple(zi * a for zi, y in zip(z, ys) for a in y)


def bootstrap_bis(A, q1, q2, solver1, solver2):
    """BIS mod q1*q2 from BIS solvers mod q1 (outer) and q2 (blocks)."""
    A, m, n = _shape(A)
    n1 = (m + 1) ** n_of(q1).N * (q1 - 1)
    _, n2 = _split(n, n1)
    if not bis_condition(m, n2, q2):
        raise PreconditionError(f"blocks of {n2} columns are too small for BIS mod {q2}")
    return _bootstrap(A, q1, q2, n1, solver1, solver2, (0, 1))


def bootstrap_sis(A, q1, q2, solver1, solver2):
    """SIS analog of :func:`bootstrap_bis`; B gets ceil(((m+1)/2)^N(q1) (q1-1)) columns."""
    A, m, n = _shape(A)
    need = Fraction(m + 1, 2) ** n_of(q1).N * (q1 - 1)
    n1 = -(-need.numerator // need.denominator)
    _, n2 = _split(n, n1)
    if not sis_condition(m, n2, q2):
        raise PreconditionError(f"blocks of {n2} columns are too small for SIS mod {q2}")
    return _bootstrap(A, q1, q2, n1, solver1, solver2, (-1, 0, 1))


def solve_bis_pow2(A, k):
    """BIS mod 2^k by k-fold bootstrapping over the F_2 kernel."""
    A, m, n = _shape(A)
    q = 2 ** k
    if not bis_condition(m, n, q):
        need = (m + 1) ** k * (q - 1)
        raise PreconditionError(f"BIS_{q} with m={m} needs n >= {need}, got {n}")
    return _solve_pow2(A, k, m)


def _solve_pow2(A, k, m):
    if k == 1:
        return kernel_vector_f2(A)
    # outer B has m+1 columns, which is all the F_2 kernel needs
    return _bootstrap(A, 2, 2 ** (k - 1), m + 1, kernel_vector_f2,
                      lambda Ai: _solve_pow2(Ai, k - 1, m), (0, 1))


def sis_required_n(m, k, l):
    """Columns solve_sis_2k3l needs: the SIS parameter bound, but at least (m+1)^(k+l).

    Gaussian elimination only promises a kernel with more columns than
    rows, so each peeled prime costs a factor m+1.  For factors of 3 this
    is what the SIS condition gives; for factors of 2 it is more, and
    SIS_2 at n = (m+1)/2 is genuinely not total (take A = I).
    """
    q = 2 ** k * 3 ** l
    bound = Fraction(m + 1, 2) ** (k + l) * (q - 1)
    return max(-(-bound.numerator // bound.denominator), (m + 1) ** (k + l))


def solve_sis_2k3l(A, k, l):
    """SIS mod 2^k 3^l; factors of 3 are peeled first, then 2."""
    A, m, n = _shape(A)
    if k + l < 1:
        raise ValueError("q must be at least 2")
    need = sis_required_n(m, k, l)
    if n < need:
        raise PreconditionError(f"SIS_{2 ** k * 3 ** l} with m={m} needs n >= {need}, got {n}")
    return _solve_23(A, [3] * l + [2] * k, m)


def _solve_23(A, primes, m):
    base = {2: kernel_vector_f2, 3: kernel_vector_f3}
    p = primes[0]
    if len(primes) == 1:
        return base[p](A)
    q2 = 1
    for r in primes[1:]:
        q2 *= r
    return _bootstrap(A, p, q2, m + 1, base[p], lambda Ai: _solve_23(Ai, primes[1:], m), (-1, 0, 1))


# ---------------------------------------------------------------- into Chevalley

def _linear_power_system(A, p, e):
    A, m, n = _shape(A)
    polys = [CoefficientPolynomial(n, p, {var(j, e): a for j, a in enumerate(row)}) for row in A]
    return PolynomialSystem.of(n, p, polys)


def _center(a, p):
    return a - p if a > p // 2 else a


@register("6:bis->chevalley", "bis", "chevalley", "BIS_p reduces to Chevalley_p via x_j^(p-1)")
def bis_to_chevalley(src, p=None):
    """f_i = sum_j a_ij x_j^(p-1); a root x gives the binary vector x^(p-1)."""
    rid, prov = "6:bis->chevalley", "BIS_p reduces to Chevalley_p via x_j^(p-1)"
    A, p = _source_matrix(src, p)
    m, n = len(A), len(A[0])
    if n < (m + 1) * (p - 1):
        raise PreconditionError(f"need n >= (m+1)(p-1) = {(m + 1) * (p - 1)}")
    tgt = ChevalleyInstance(_linear_power_system(A, p, p - 1))

    def back(sol):
        kind, x = sol
        if kind != "root":
            raise ValueError("expected a root")
        return tuple(pow(a, p - 1, p) for a in x)

    return Reduction(rid, tgt, back, prov)


@register("6:sis->chevalley", "sis", "chevalley", "SIS_p reduces to Chevalley_p via x_j^((p-1)/2)")
def sis_to_chevalley(src, p=None):
    """f_i = sum_j a_ij x_j^((p-1)/2); a root x gives x^((p-1)/2) read in {-1, 0, 1}."""
    rid, prov = "6:sis->chevalley", "SIS_p reduces to Chevalley_p via x_j^((p-1)/2)"
    A, p = _source_matrix(src, p)
    if p == 2:
        raise PreconditionError("the SIS exponent (p-1)/2 needs an odd prime")
    m, n = len(A), len(A[0])
    if 2 * n < (m + 1) * (p - 1):
        raise PreconditionError("need n >= ((m+1)/2)(p-1)")
    e = (p - 1) // 2
    tgt = ChevalleyInstance(_linear_power_system(A, p, e))

    def back(sol):
        kind, x = sol
        if kind != "root":
            raise ValueError("expected a root")
        return tuple(_center(pow(a, e, p), p) for a in x)

    return Reduction(rid, tgt, back, prov)


def _source_matrix(src, p):
    if isinstance(src, (BisInstance, SisInstance)):
        A, p = src.A, p or src.q
        if p != src.q:
            raise ValueError(f"instance modulus {src.q} differs from p = {p}")
    else:
        A = src
    if p is None or not is_prime(p):
        raise PreconditionError(f"p = {p} must be prime")
    A, _, _ = _shape(A)
    return [[a % p for a in row] for row in A], p


# ---------------------------------------------------------------- matrix files

def read_matrix(text):
    """First line 'm n q', then m rows of integers."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 3:
        raise ValueError("first line must be 'm n q'")
    m, n, q = map(int, lines[0])
    rows = [list(map(int, ln)) for ln in lines[1:]]
    if len(rows) != m or any(len(r) != n for r in rows):
        raise ValueError(f"expected {m} rows of {n} integers")
    return rows, q


def format_matrix(A, q):
    A, m, n = _shape(A)
    return "\n".join([f"{m} {n} {q}"] + [" ".join(map(str, r)) for r in A]) + "\n"
