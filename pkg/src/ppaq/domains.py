"""Finite vertex domains with rank/unrank bijections onto 0..size-1.

Vertices are plain hashable Python values:

* ``QaryStrings(q, n)``: tuples in [q]^n, ranked as base-q numbers with the
  first coordinate most significant (so rank order is lexicographic).
* ``Range(size)``: the integers 0..size-1.
* ``Interval(lo, hi)``: the integers lo..hi-1.
* ``Subsets(base, k)``: sorted tuples of k base vertices, ranked with the
  combinatorial number system (colex order on base ranks).
* ``Product(parts)``: tuples, mixed radix with the first part most significant.
* ``Union(parts)``: tagged pairs ``(tag, vertex)``.
* ``Sequences(base, max_len)``: tuples of 1..max_len base vertices, shorter
  sequences first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

__all__ = ["Domain", "QaryStrings", "BitStrings", "Range", "Interval", "Subsets", "Product",
           "Union", "Sequences", "domain_from_dict"]


class Domain:
    size: int

    def __len__(self):
        return self.size

    def __iter__(self):
        for r in range(self.size):
            yield self.unrank(r)

    def contains(self, v):
        try:
            r = self.rank(v)
        except (TypeError, ValueError, IndexError, KeyError):
            return False
        return 0 <= r < self.size and self.unrank(r) == v

    def sort_key(self, v):
        return self.rank(v)

    def sorted(self, vs):
        return sorted(vs, key=self.rank)


@dataclass(frozen=True)
class QaryStrings(Domain):
    q: int
    n: int

    @property
    def size(self):
        return self.q ** self.n

    def rank(self, v):
        if len(v) != self.n:
            raise ValueError("wrong length")
        r = 0
        for a in v:
            if not 0 <= a < self.q:
                raise ValueError("digit out of range")
            r = r * self.q + a
        return r

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            r, out[i] = divmod(r, self.q)
        return tuple(out)

    def to_dict(self):
        return {"kind": "qary", "q": self.q, "n": self.n}


def BitStrings(n):
    return QaryStrings(2, n)


@dataclass(frozen=True)
class Range(Domain):
    count: int

    @property
    def size(self):
        return self.count

    def rank(self, v):
        if not isinstance(v, int) or not 0 <= v < self.count:
            raise ValueError("out of range")
        return v

    def unrank(self, r):
        if not 0 <= r < self.count:
            raise ValueError("rank out of range")
        return r

    def to_dict(self):
        return {"kind": "range", "size": self.count}


@dataclass(frozen=True)
class Interval(Domain):
    lo: int
    hi: int

    @property
    def size(self):
        return max(0, self.hi - self.lo)

    def rank(self, v):
        if not isinstance(v, int) or not self.lo <= v < self.hi:
            raise ValueError("out of range")
        return v - self.lo

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        return self.lo + r

    def to_dict(self):
        return {"kind": "interval", "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class Subsets(Domain):
    base: Domain
    k: int

    @property
    def size(self):
        return comb(self.base.size, self.k)

    def rank(self, v):
        if len(v) != self.k:
            raise ValueError("wrong subset size")
        rs = sorted(self.base.rank(u) for u in v)
        for a, b in zip(rs, rs[1:]):
            if a == b:
                raise ValueError("repeated element")
        return sum(comb(c, i + 1) for i, c in enumerate(rs))

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        out = []
        c = self.base.size
        for i in range(self.k, 0, -1):
            c -= 1
            while comb(c, i) > r:
                c -= 1
            r -= comb(c, i)
            out.append(c)
        return tuple(self.base.unrank(c) for c in reversed(out))

    def make(self, vs):
        """Canonical (sorted) form of a subset given in any order."""
        return tuple(sorted(vs, key=self.base.rank))

    def to_dict(self):
        return {"kind": "subsets", "base": self.base.to_dict(), "k": self.k}


@dataclass(frozen=True)
class Product(Domain):
    parts: tuple

    @property
    def size(self):
        s = 1
        for d in self.parts:
            s *= d.size
        return s

    def rank(self, v):
        if len(v) != len(self.parts):
            raise ValueError("wrong arity")
        r = 0
        for d, a in zip(self.parts, v):
            r = r * d.size + d.rank(a)
        return r

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        out = [None] * len(self.parts)
        for i in range(len(self.parts) - 1, -1, -1):
            r, a = divmod(r, self.parts[i].size)
            out[i] = self.parts[i].unrank(a)
        return tuple(out)

    def to_dict(self):
        return {"kind": "product", "parts": [d.to_dict() for d in self.parts]}


@dataclass(frozen=True)
class Union(Domain):
    parts: tuple

    @property
    def size(self):
        return sum(d.size for d in self.parts)

    def offset(self, tag):
        return sum(d.size for d in self.parts[:tag])

    def rank(self, v):
        tag, inner = v
        if not 0 <= tag < len(self.parts):
            raise ValueError("bad tag")
        return self.offset(tag) + self.parts[tag].rank(inner)

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        for tag, d in enumerate(self.parts):
            if r < d.size:
                return (tag, d.unrank(r))
            r -= d.size
        raise ValueError("rank out of range")

    def to_dict(self):
        return {"kind": "union", "parts": [d.to_dict() for d in self.parts]}


@dataclass(frozen=True)
class Sequences(Domain):
    base: Domain
    max_len: int

    @property
    def size(self):
        b = self.base.size
        return sum(b ** k for k in range(1, self.max_len + 1))

    def rank(self, v):
        k = len(v)
        if not 1 <= k <= self.max_len:
            raise ValueError("bad length")
        b = self.base.size
        r = sum(b ** j for j in range(1, k))
        x = 0
        for a in v:
            x = x * b + self.base.rank(a)
        return r + x

    def unrank(self, r):
        if not 0 <= r < self.size:
            raise ValueError("rank out of range")
        b = self.base.size
        k = 1
        while r >= b ** k:
            r -= b ** k
            k += 1
        out = [None] * k
        for i in range(k - 1, -1, -1):
            r, a = divmod(r, b)
            out[i] = self.base.unrank(a)
        return tuple(out)

    def to_dict(self):
        return {"kind": "sequences", "base": self.base.to_dict(), "max_len": self.max_len}


def domain_from_dict(d):
    kind = d["kind"]
    if kind == "qary":
        return QaryStrings(int(d["q"]), int(d["n"]))
    if kind == "range":
        return Range(int(d["size"]))
    if kind == "interval":
        return Interval(int(d["lo"]), int(d["hi"]))
    if kind == "subsets":
        return Subsets(domain_from_dict(d["base"]), int(d["k"]))
    if kind == "product":
        return Product(tuple(domain_from_dict(x) for x in d["parts"]))
    if kind == "union":
        return Union(tuple(domain_from_dict(x) for x in d["parts"]))
    if kind == "sequences":
        return Sequences(domain_from_dict(d["base"]), int(d["max_len"]))
    raise ValueError(f"unknown domain kind {kind!r}")
