"""Finite windows into connection matrices.

The connection matrix of an invariant ``f`` at ``k`` marks has rows and
columns indexed by k-marked graphs and entry ``f(glue(x, y))``.  Only finite
families of marked graphs are ever used: a window gives a lower bound on the
rank of the full matrix, and for a genuine partition function ``p_A`` it
must respect the upper bound ``n**k``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .invariants import SpinSource, require_coverage
from .linalg import exact_rank
from .marked import MarkedGraph, glue, unit
from .multigraph import Multigraph
from .scalars import ZERO
from .spin import SpinMatrix, marked_partition_function

__all__ = [
    "MarkedFamily",
    "ConnectionSubmatrix",
    "FamilySizeError",
    "NecessityReport",
    "generate_family",
    "build_submatrix",
    "exact_rank",
    "necessity_check",
    "rank_growth_row",
    "default_workers",
]

MAX_FAMILY = 500
THREADS_ENV = "SPINRANK_THREADS"


class FamilySizeError(ValueError):
    """A marked family or factorization exceeds its size guard."""


@dataclass(frozen=True)
class MarkedFamily:
    k: int
    members: tuple
    max_vertices: int
    max_edges: int

    def __len__(self):
        return len(self.members)

    def truncated(self, size):
        return MarkedFamily(self.k, self.members[:size], self.max_vertices, self.max_edges)

    def extended(self, extra):
        """Append marked graphs not already present (up to marked isomorphism)."""
        keys = {m.key for m in self.members}
        members = list(self.members)
        for m in extra:
            if m.k != self.k:
                raise ValueError("mark-count mismatch")
            if m.key not in keys:
                keys.add(m.key)
                members.append(m)
        return MarkedFamily(self.k, tuple(members), self.max_vertices, self.max_edges)


def generate_family(k, max_vertices, max_edges, limit=MAX_FAMILY) -> MarkedFamily:
    """All k-marked graphs within the bounds up to marked isomorphism.

    Ordered by (vertex count, marked key); the unit is always included.
    """
    if k < 0 or max_vertices < 0 or max_edges < 0:
        raise ValueError("bounds must be nonnegative")
    found = {}
    for nv in range(max_vertices + 1):
        if k > 0 and nv == 0:
            continue
        pairs = [(i, j) for i in range(nv) for j in range(i, nv)]
        for e in range(max_edges + 1):
            if e and not pairs:
                break
            for chosen in combinations_with_replacement(pairs, e):
                g = Multigraph(nv, chosen)
                for marks in product(range(nv), repeat=k):
                    mg = MarkedGraph(g, marks)
                    key = mg.key
                    if key not in found:
                        found[key] = MarkedGraph.from_key(key)
                        if len(found) > limit:
                            raise FamilySizeError(
                                f"family for k={k}, {max_vertices} vertices, {max_edges} edges exceeds {limit} members"
                            )
    u = unit(k)
    found.setdefault(u.key, u)
    members = sorted(found.values(), key=lambda m: (m.graph.vertex_count, m.key))
    return MarkedFamily(k, tuple(members), max_vertices, max_edges)


@dataclass(frozen=True)
class ConnectionSubmatrix:
    family: MarkedFamily
    entries: tuple
    f_descriptor: dict

    def rank(self):
        return exact_rank([list(r) for r in self.entries])


def default_workers():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _evaluate_chunk(args):
    f, graphs = args
    return [f(g) for g in graphs]


def build_submatrix(f, family: MarkedFamily, workers=None) -> ConnectionSubmatrix:
    """Exact window ``[f(glue(x, y))]`` over the family; symmetric by construction of glue."""
    members = family.members
    size = len(members)
    pairs = [(i, j) for i in range(size) for j in range(i, size)]
    graphs = [glue(members[i], members[j]).graph for i, j in pairs]
    require_coverage(f, graphs, "connection window")
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(graphs) > 64:
        chunks = [graphs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_chunk, [(f, c) for c in chunks]))
        values = [None] * len(graphs)
        for w, chunk_values in enumerate(results):
            values[w::workers] = chunk_values
    else:
        values = [f(g) for g in graphs]
    entries = [[ZERO] * size for _ in range(size)]
    for (i, j), value in zip(pairs, values):
        entries[i][j] = entries[j][i] = value
    describe = getattr(f, "describe", lambda: {"kind": type(f).__name__})
    return ConnectionSubmatrix(family, tuple(tuple(r) for r in entries), describe())


@dataclass(frozen=True)
class NecessityReport:
    family_size: int
    rank: int
    bound_nk: int
    factorization_ok: bool

    @property
    def rank_ok(self):
        return self.rank <= self.bound_nk

    def to_json(self):
        return {
            "family_size": self.family_size,
            "rank": self.rank,
            "bound_nk": self.bound_nk,
            "factorization_ok": self.factorization_ok,
        }


def boundary_matrix(a: SpinMatrix, family: MarkedFamily):
    """Rows: family members; columns: boundary state maps ``[k] -> [n]`` in lexicographic order."""
    columns = list(product(range(a.n), repeat=family.k))
    return [[marked_partition_function(a, m, lam) for lam in columns] for m in family.members]


def necessity_check(a: SpinMatrix, k, family: MarkedFamily, max_evaluations=200_000) -> NecessityReport:
    """Verify ``C = B B^T`` entrywise and compare the window rank with ``n**k``."""
    if family.k != k:
        raise ValueError(f"family has {family.k} marks, expected {k}")
    bound = a.n**k
    if bound * len(family) > max_evaluations:
        raise FamilySizeError(f"{bound * len(family)} boundary evaluations exceed {max_evaluations}")
    window = build_submatrix(SpinSource(a), family)
    b = boundary_matrix(a, family)
    ok = True
    for i, row_i in enumerate(b):
        for j in range(i, len(b)):
            row_j = b[j]
            value = ZERO
            for x, y in zip(row_i, row_j):
                if x and y:
                    value = value + x * y
            if value != window.entries[i][j]:
                ok = False
                break
        if not ok:
            break
    return NecessityReport(len(family), window.rank(), bound, ok)


def rank_growth_row(k, rank, family_size, bound=None):
    """One row of the rank-growth table: ``log rank`` and ``log rank / (k log k)``."""
    row = {"k": k, "family_size": family_size, "rank": rank}
    row["log_rank"] = round(math.log(rank), 12) if rank > 0 else None
    if k >= 2 and rank > 0:
        row["log_rank_over_k_log_k"] = round(math.log(rank) / (k * math.log(k)), 12)
    else:
        row["log_rank_over_k_log_k"] = None
    if bound is not None:
        row["bound_nk"] = bound
    return row
