"""Table-backed oracles that can be serialized alongside an instance."""

from __future__ import annotations

__all__ = ["TableOracle", "ListOracle", "PairTable"]


class TableOracle:
    """v -> table[v], or the identity / a default for missing keys."""

    kind = "map"

    def __init__(self, table, identity=True, default=None):
        self.table = dict(table)
        self.identity = identity
        self.default = default

    def __call__(self, v):
        if v in self.table:
            return self.table[v]
        return v if self.identity else self.default


class ListOracle(TableOracle):
    """v -> list of items (empty when absent)."""

    kind = "list"

    def __init__(self, table):
        super().__init__(table, identity=False, default=())

    def __call__(self, v):
        return list(self.table.get(v, ()))


class PairTable:
    """(a, b[, k]) -> value with a default; used for multiplicities and groupings."""

    def __init__(self, table, default):
        self.table = dict(table)
        self.default = default

    def __call__(self, *key):
        return self.table.get(key, self.default)
