"""Spin models and their partition functions.

``p_A(G)`` sums, over all maps of the vertices into the states ``0..n-1``,
the product of ``A[s(u)][s(v)]`` over the edges of ``G`` counted with
multiplicity (a loop at ``u`` contributes ``A[s(u)][s(u)]``).

:func:`partition_function` is the literal sum and serves as the oracle;
:func:`partition_function_ordered` eliminates vertices one at a time and is
what the rest of the package uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .marked import FormalSum, MarkedGraph
from .multigraph import Multigraph
from .scalars import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "SpinMatrix",
    "StateSpaceError",
    "partition_function",
    "partition_function_ordered",
    "marked_partition_function",
    "min_degree_order",
    "elimination_widths",
    "evaluate_formal",
]

MAX_STATES = 10**7


class StateSpaceError(ValueError):
    """The requested evaluation exceeds the state-space guard."""


@dataclass(frozen=True)
class SpinMatrix:
    entries: tuple

    def __init__(self, rows):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("spin matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"spin matrix is not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n):
        return cls([[1] * n for _ in range(n)])

    @classmethod
    def colouring(cls, n):
        """``J_n - I_n``: the partition function counts proper ``n``-colourings."""
        return cls([[0 if i == j else 1 for j in range(n)] for i in range(n)])

    @classmethod
    def from_json(cls, data):
        try:
            n, rows = data["n"], data["entries"]
        except (TypeError, KeyError) as exc:
            raise ValueError(f"spin matrix JSON needs 'n' and 'entries': {exc}") from None
        if not isinstance(rows, list) or len(rows) != n:
            raise ValueError(f"'entries' must hold {n} rows")
        return cls(rows)

    def to_json(self):
        return {"n": self.n, "entries": [[str(x) for x in row] for row in self.entries]}


def _check_guard(count):
    if count > MAX_STATES:
        raise StateSpaceError(f"{count} state assignments exceed the guard {MAX_STATES}")


def partition_function(a: SpinMatrix, g: Multigraph) -> GaussianRational:
    """Literal sum over all ``n ** |V|`` state maps."""
    n, nv = a.n, g.vertex_count
    _check_guard(n**nv)
    entries = a.entries
    total = ZERO
    for states in product(range(n), repeat=nv):
        term = ONE
        for (u, v), m in g.edges:
            term = term * entries[states[u]][states[v]] ** m
            if not term:
                break
        total = total + term
    return total


def min_degree_order(g: Multigraph, keep_last=()):
    """Greedy minimum-degree elimination order (ties by vertex number).

    Vertices in ``keep_last`` are eliminated after all others.
    """
    adjacency = {v: set() for v in range(g.vertex_count)}
    for (u, v), _ in g.edges:
        if u != v:
            adjacency[u].add(v)
            adjacency[v].add(u)
    held = set(keep_last)
    order = []
    while adjacency:
        v = min(adjacency, key=lambda x: (x in held, len(adjacency[x]), x))
        nbrs = adjacency.pop(v)
        for w in nbrs:
            adjacency[w].discard(v)
            adjacency[w] |= nbrs - {w}
        order.append(v)
    return order


def elimination_widths(g: Multigraph, order):
    """Number of boundary vertices left in the new table after each elimination step."""
    _check_order(g, order)
    adjacency = {v: set() for v in range(g.vertex_count)}
    for (u, v), _ in g.edges:
        if u != v:
            adjacency[u].add(v)
            adjacency[v].add(u)
    widths = []
    for v in order:
        nbrs = adjacency.pop(v)
        for w in nbrs:
            adjacency[w].discard(v)
            adjacency[w] |= nbrs - {w}
        widths.append(len(nbrs))
    return widths


def _check_order(g, order):
    if sorted(order) != list(range(g.vertex_count)):
        raise ValueError("elimination order must be a permutation of the vertices")


def _eliminate(a: SpinMatrix, g: Multigraph, order, domains):
    entries = a.entries
    factors = []
    for (u, v), m in g.edges:
        if u == v:
            table = {(s,): entries[s][s] ** m for s in domains[u]}
            factors.append(((u,), table))
        else:
            table = {(s, t): entries[s][t] ** m for s in domains[u] for t in domains[v]}
            factors.append(((u, v), table))
    result = ONE
    for v in order:
        bucket = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        scope = sorted({w for sc, _ in bucket for w in sc if w != v})
        size = len(domains[v])
        for w in scope:
            size *= len(domains[w])
        _check_guard(size)
        table = {}
        for assignment in product(*(domains[w] for w in scope)):
            local = dict(zip(scope, assignment))
            total = ZERO
            for s in domains[v]:
                local[v] = s
                term = ONE
                for sc, tab in bucket:
                    term = term * tab[tuple(local[w] for w in sc)]
                    if not term:
                        break
                total = total + term
            table[assignment] = total
        if scope:
            factors.append((tuple(scope), table))
        else:
            result = result * table[()]
            if not result:
                return ZERO
    return result


def partition_function_ordered(a: SpinMatrix, g: Multigraph, order=None) -> GaussianRational:
    """Partition function by sequential vertex elimination.

    Cost is exponential only in the elimination width of ``order``
    (greedy min-degree when omitted).
    """
    if order is None:
        order = min_degree_order(g)
    else:
        order = list(order)
        _check_order(g, order)
    domains = [range(a.n)] * g.vertex_count
    return _eliminate(a, g, order, domains)


def marked_partition_function(a: SpinMatrix, mg: MarkedGraph, states) -> GaussianRational:
    """Partition function over maps sending the vertex with mark ``i`` to ``states[i]``.

    Incompatible ``states`` (two marks on one vertex asking for different
    states) give 0.
    """
    states = tuple(states)
    if len(states) != mg.k:
        raise ValueError(f"need {mg.k} boundary states, got {len(states)}")
    if any(not 0 <= s < a.n for s in states):
        raise ValueError(f"boundary state out of range 0..{a.n - 1}")
    pinned = {}
    for v, s in zip(mg.marks, states):
        if pinned.setdefault(v, s) != s:
            return ZERO
    domains = [(pinned[v],) if v in pinned else range(a.n) for v in range(mg.graph.vertex_count)]
    return _eliminate(a, mg.graph, min_degree_order(mg.graph), domains)


def evaluate_formal(f, u: FormalSum) -> GaussianRational:
    """Linear extension of an invariant ``f`` to a formal sum (marks forgotten)."""
    total = ZERO
    for coeff, g in u.terms():
        total = total + coeff * f(g.graph)
    return total
