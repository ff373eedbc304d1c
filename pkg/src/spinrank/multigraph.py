"""Finite undirected multigraphs with loops.

Vertices are ``0 .. vertex_count-1`` in code and 1-based in the JSON format
``{"vertices": n, "edges": [[u, v, multiplicity], ...]}``.

Canonical keys look like ``"3/0,1,0,1,1,0"``: the vertex count, then the
lower triangle (diagonal included, row by row) of the multiplicity matrix
under the lexicographically least admissible vertex ordering.  Orderings are
restricted to those compatible with a colour refinement of the vertices,
which is itself isomorphism invariant, so the key is still a complete
invariant.  The search is depth-first over positions; it drops branches whose
partial serialization is already larger than the best found, and tries only
one of any two interchangeable (twin) vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement

from .unionfind import DisjointSet

__all__ = [
    "Multigraph",
    "GraphSizeError",
    "disjoint_union",
    "quotient",
    "canonical_key",
    "stats",
    "enumerate_multigraphs",
    "canonical_form",
]

MAX_CANONICAL_VERTICES = 8
MAX_SEARCH_NODES = 2_000_000


class GraphSizeError(ValueError):
    """Graph too large for brute-force canonicalization."""


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple  # sorted ((u, v), multiplicity) with u <= v, multiplicity >= 1

    def __init__(self, vertex_count, edges=()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        counts = Counter()
        for e in edges:
            if len(e) == 2 and isinstance(e[0], tuple):
                (u, v), m = e
            elif len(e) == 2:
                (u, v), m = e, 1
            else:
                u, v, m = e
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge endpoint out of range: {(u, v)}")
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                counts[(min(u, v), max(u, v))] += m
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(sorted(counts.items())))

    # --- constructors ------------------------------------------------------

    @classmethod
    def empty(cls):
        return cls(0)

    @classmethod
    def isolated(cls, n):
        return cls(n)

    @classmethod
    def path(cls, n):
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n):
        if n == 1:
            return cls(1, [(0, 0)])
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n):
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def from_json(cls, data):
        try:
            n = data["vertices"]
            raw = data.get("edges", [])
        except (TypeError, KeyError) as exc:
            raise ValueError(f"graph JSON needs 'vertices' and 'edges': {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError("'vertices' must be a nonnegative integer")
        edges = []
        for i, e in enumerate(raw):
            if not (isinstance(e, list) and len(e) in (2, 3) and all(isinstance(x, int) for x in e)):
                raise ValueError(f"edges[{i}] must be [u, v] or [u, v, multiplicity]")
            u, v = e[0] - 1, e[1] - 1
            m = e[2] if len(e) == 3 else 1
            if m < 1:
                raise ValueError(f"edges[{i}]: multiplicity must be positive")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edges[{i}]: endpoint out of range 1..{n}")
            edges.append((u, v, m))
        return cls(n, edges)

    def to_json(self):
        return {"vertices": self.vertex_count, "edges": [[u + 1, v + 1, m] for (u, v), m in self.edges]}

    # --- basic queries -----------------------------------------------------

    @property
    def edge_count(self) -> int:
        """Total multiplicity; a loop counts once per copy."""
        return sum(m for _, m in self.edges)

    @property
    def loop_count(self) -> int:
        return sum(m for (u, v), m in self.edges if u == v)

    def multiplicity(self, u, v) -> int:
        return self._mult.get((min(u, v), max(u, v)), 0)

    @cached_property
    def _mult(self):
        return dict(self.edges)

    def neighbours(self, v):
        out = set()
        for (a, b), _ in self.edges:
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return out

    def relabel(self, mapping, vertex_count=None):
        """Image under ``mapping[v]``; merging vertices keeps every edge."""
        n = self.vertex_count if vertex_count is None else vertex_count
        return Multigraph(n, [(mapping[u], mapping[v], m) for (u, v), m in self.edges])

    def canonical_key(self) -> str:
        return canonical_key(self)

    def __repr__(self):
        return f"Multigraph({self.vertex_count}, {[(u, v, m) for (u, v), m in self.edges]})"


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    """``g`` followed by ``h`` with vertices shifted by ``g.vertex_count``."""
    s = g.vertex_count
    edges = [(u, v, m) for (u, v), m in g.edges]
    edges += [(u + s, v + s, m) for (u, v), m in h.edges]
    return Multigraph(s + h.vertex_count, edges)


def quotient(g: Multigraph, partition) -> Multigraph:
    """Merge each block of ``partition`` to one vertex (block order), keeping all edges."""
    if partition.n != g.vertex_count:
        raise ValueError(f"partition of {partition.n} elements for a graph on {g.vertex_count} vertices")
    return g.relabel(partition.rgs, len(partition))


def stats(g: Multigraph):
    """``(vertices, edges with multiplicity, loops, connected components)``."""
    ds = DisjointSet(g.vertex_count)
    for (u, v), _ in g.edges:
        ds.union(u, v)
    return g.vertex_count, g.edge_count, g.loop_count, ds.count()


# --- canonical forms ---------------------------------------------------------


def _refine(n, mult, colours):
    """Iterated colour refinement; returns canonical colour ranks."""
    adjacency = [[] for _ in range(n)]
    for (u, v), m in mult.items():
        if u != v:
            adjacency[u].append((v, m))
            adjacency[v].append((u, m))
    loops = [mult.get((v, v), 0) for v in range(n)]
    sigs = [(colours[v], loops[v]) for v in range(n)]
    while True:
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        current = [ranks[s] for s in sigs]
        sigs = [(current[v], tuple(sorted((current[w], m) for w, m in adjacency[v]))) for v in range(n)]
        if len(set(sigs)) == len(ranks):
            return current


def canonical_form(n, mult, colours=None, budget=MAX_SEARCH_NODES):
    """Least serialization of the multiplicity matrix over admissible orderings.

    ``mult`` maps sorted vertex pairs to multiplicities; ``colours`` are
    sortable per-vertex labels that an isomorphism must preserve.  The
    serialization lists, for each position ``i``, the multiplicities between
    the vertex at ``i`` and the vertices at positions ``0..i``.  Returns
    ``(serialization, order)`` where ``order[i]`` is the vertex placed at
    position ``i``.
    """
    if colours is None:
        colours = [0] * n
    ranks = _refine(n, mult, colours)
    cells = {}
    for v in range(n):
        cells.setdefault(ranks[v], []).append(v)
    cell_of_position = [r for r in sorted(cells) for _ in cells[r]]
    m = lambda u, v: mult.get((u, v) if u <= v else (v, u), 0)

    def twins(u, v):
        if m(u, u) != m(v, v) or m(u, v) != m(v, u):
            return False
        return all(m(u, w) == m(v, w) for w in range(n) if w != u and w != v)

    best = [None, None]
    nodes = [0]

    def search(order, ser, unplaced):
        nodes[0] += 1
        if nodes[0] > budget:
            raise GraphSizeError(f"canonical search exceeded {budget} nodes")
        i = len(order)
        if i == n:
            if best[0] is None or ser < best[0]:
                best[0], best[1] = ser, list(order)
            return
        candidates = sorted(unplaced[cell_of_position[i]])
        rows = {v: tuple(m(v, order[j]) for j in range(i)) + (m(v, v),) for v in candidates}
        low = min(rows.values())
        chosen = []
        for v in candidates:
            if rows[v] == low and not any(twins(v, u) for u in chosen):
                chosen.append(v)
        if best[0] is not None:
            prefix = ser + low
            if prefix > best[0][: len(prefix)]:
                return
        for v in chosen:
            unplaced[cell_of_position[i]].remove(v)
            order.append(v)
            search(order, ser + rows[v], unplaced)
            order.pop()
            unplaced[cell_of_position[i]].add(v)

    search([], (), {r: set(c) for r, c in cells.items()})
    return best[0], best[1]


def canonical_key(g: Multigraph) -> str:
    """Isomorphism-class key of a multigraph (at most 8 vertices)."""
    if g.vertex_count > MAX_CANONICAL_VERTICES:
        raise GraphSizeError(f"canonical_key supports at most {MAX_CANONICAL_VERTICES} vertices")
    ser, _ = canonical_form(g.vertex_count, g._mult)
    return f"{g.vertex_count}/" + ",".join(map(str, ser))


def graph_from_key(key: str) -> Multigraph:
    """Inverse of :func:`canonical_key` (returns the canonical representative)."""
    head, _, body = key.partition("/")
    n = int(head)
    values = [int(x) for x in body.split(",")] if body else []
    if len(values) != n * (n + 1) // 2:
        raise ValueError(f"malformed graph key {key!r}")
    it = iter(values)
    return Multigraph(n, [(j, i, next(it)) for i in range(n) for j in range(i + 1)])


def enumerate_multigraphs(vertices, max_edges):
    """Canonical representatives on exactly ``vertices`` vertices with total multiplicity at most ``max_edges``.

    Sorted by (edge count, key).
    """
    pairs = [(i, j) for i in range(vertices) for j in range(i, vertices)]
    seen = {}
    for e in range(max_edges + 1):
        if not pairs and e:
            break
        for chosen in combinations_with_replacement(pairs, e):
            g = Multigraph(vertices, chosen)
            key = canonical_key(g)
            if key not in seen:
                seen[key] = graph_from_key(key)
    return [g for _, g in sorted(seen.items(), key=lambda kv: (kv[1].edge_count, kv[0]))]
