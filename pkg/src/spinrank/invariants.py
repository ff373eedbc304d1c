"""Graph invariants as callables ``Multigraph -> GaussianRational``.

Two kinds exist: :class:`SpinSource`, the partition function of a spin
matrix, and :class:`TableSource`, a lookup table keyed by canonical graph
key.  A missing table entry is always an error, never a silent zero.
"""

from __future__ import annotations

import json

from .multigraph import Multigraph, canonical_key, enumerate_multigraphs
from .scalars import as_scalar
from .spin import SpinMatrix, partition_function_ordered

__all__ = ["SpinSource", "TableSource", "MissingEntryError", "CoverageError", "require_coverage"]

EMPTY_KEY = canonical_key(Multigraph(0))


class MissingEntryError(KeyError):
    def __init__(self, key):
        super().__init__(key)
        self.key = key

    def __str__(self):
        return f"invariant table has no entry for graph key {self.key!r}"


class CoverageError(ValueError):
    """Raised before a computation whose probed graphs a table does not cover."""

    def __init__(self, missing, phase=""):
        self.missing = sorted(set(missing))
        self.phase = phase
        where = f" during {phase}" if phase else ""
        super().__init__(f"invariant table lacks {len(self.missing)} graph(s){where}: {', '.join(self.missing)}")


class SpinSource:
    """``f = p_A``; evaluations are memoized on the labelled graph."""

    def __init__(self, matrix: SpinMatrix):
        self.matrix = matrix
        self._cache = {}

    def __call__(self, g: Multigraph):
        try:
            return self._cache[g]
        except KeyError:
            value = self._cache[g] = partition_function_ordered(self.matrix, g)
            return value

    def missing(self, graphs):
        return []

    def describe(self):
        return {"kind": "spin", "matrix": self.matrix.to_json()}


class TableSource:
    def __init__(self, table):
        self.table = {key: as_scalar(value) for key, value in table.items()}
        if EMPTY_KEY not in self.table:
            raise MissingEntryError(EMPTY_KEY)

    @classmethod
    def tabulate(cls, fn, max_vertices, max_edges):
        """Table of ``fn`` on every multigraph within the bounds (up to isomorphism)."""
        table = {}
        for nv in range(max_vertices + 1):
            for g in enumerate_multigraphs(nv, max_edges):
                table[canonical_key(g)] = as_scalar(fn(g))
        return cls(table)

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("invariant table JSON must be an object keyed by canonical graph key")
        return cls(data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {key: str(self.table[key]) for key in sorted(self.table)}

    def __call__(self, g: Multigraph):
        key = canonical_key(g)
        try:
            return self.table[key]
        except KeyError:
            raise MissingEntryError(key) from None

    def missing(self, graphs):
        return sorted({k for k in map(canonical_key, graphs) if k not in self.table})

    def describe(self):
        return {"kind": "table", "entries": len(self.table)}


def require_coverage(f, graphs, phase=""):
    missing = f.missing(graphs)
    if missing:
        raise CoverageError(missing, phase)
