"""k-marked graphs, the gluing product and finite formal sums of marked graphs.

A marked graph carries a tuple ``marks`` whose entry ``i`` is the vertex that
holds mark ``i`` (0-based).  Several marks may sit on the same vertex.  Two
marked graphs are identified when a graph isomorphism carries every mark to
the same mark.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian

from .multigraph import Multigraph, canonical_form, disjoint_union, graph_from_key
from .partitions import MAX_MATRIX, SetPartition, enumerate_partitions, mu_top
from .scalars import ONE, ZERO, GaussianRational, as_scalar
from .unionfind import DisjointSet

__all__ = [
    "MarkedGraph",
    "FormalSum",
    "glue",
    "unit",
    "n_p",
    "formal_product",
    "formal_power",
    "b_element",
    "gamma",
    "default_bijection",
]


@dataclass(frozen=True)
class MarkedGraph:
    graph: Multigraph
    marks: tuple

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(self.marks))
        for v in self.marks:
            if not 0 <= v < self.graph.vertex_count:
                raise ValueError(f"mark on missing vertex {v}")

    @property
    def k(self) -> int:
        return len(self.marks)

    @cached_property
    def key(self) -> str:
        g = self.graph
        n = g.vertex_count
        held = [[] for _ in range(n)]
        for i, v in enumerate(self.marks):
            held[v].append(i)
        # Marked vertices sort first, ordered by their smallest mark.
        colours = [(0, tuple(h)) if h else (1, ()) for h in held]
        ser, order = canonical_form(n, g._mult, colours)
        position = {v: i for i, v in enumerate(order)}
        marks = ",".join(str(position[v]) for v in self.marks)
        return f"{n}/" + ",".join(map(str, ser)) + f"/{marks}"

    @classmethod
    def from_key(cls, key: str) -> MarkedGraph:
        gkey, _, mkey = key.rpartition("/")
        marks = tuple(int(x) for x in mkey.split(",")) if mkey else ()
        return cls(graph_from_key(gkey), marks)

    @classmethod
    def from_json(cls, data):
        graph = Multigraph.from_json(data)
        marks = data.get("marks", [])
        if not isinstance(marks, list) or not all(isinstance(v, int) for v in marks):
            raise ValueError("'marks' must be a list of vertex numbers")
        if any(not 1 <= v <= graph.vertex_count for v in marks):
            raise ValueError(f"mark outside 1..{graph.vertex_count}")
        return cls(graph, tuple(v - 1 for v in marks))

    def to_json(self):
        out = self.graph.to_json()
        out["marks"] = [v + 1 for v in self.marks]
        return out

    def isomorphic(self, other: MarkedGraph) -> bool:
        return self.k == other.k and self.key == other.key

    def __mul__(self, other):
        if isinstance(other, MarkedGraph):
            return glue(self, other)
        return NotImplemented


def glue(a: MarkedGraph, b: MarkedGraph) -> MarkedGraph:
    """Disjoint union with equally marked vertices identified; all edges kept."""
    if a.k != b.k:
        raise ValueError(f"cannot glue a {a.k}-marked graph to a {b.k}-marked graph")
    union = disjoint_union(a.graph, b.graph)
    shift = a.graph.vertex_count
    ds = DisjointSet(union.vertex_count)
    for u, v in zip(a.marks, b.marks):
        ds.union(u, v + shift)
    labels = ds.labels()
    merged = union.relabel(labels, max(labels) + 1 if labels else 0)
    return MarkedGraph(merged, tuple(labels[u] for u in a.marks))


def unit(k) -> MarkedGraph:
    """``k`` isolated vertices carrying marks ``0..k-1``; the unit for :func:`glue`."""
    return MarkedGraph(Multigraph(k), tuple(range(k)))


def n_p(p: SetPartition) -> MarkedGraph:
    """Edgeless graph on the blocks of ``p``; mark ``i`` sits on the block holding ``i``."""
    return MarkedGraph(Multigraph(len(p)), p.rgs)


class FormalSum:
    """Finite linear combination of k-marked graphs with Q(i) coefficients.

    Terms are keyed by marked canonical key; zero coefficients are dropped.
    """

    __slots__ = ("k", "_terms")

    def __init__(self, k, terms=()):
        self.k = k
        self._terms = {}
        for coeff, graph in terms:
            self._add_term(as_scalar(coeff), graph)

    def _add_term(self, coeff, graph):
        if graph.k != self.k:
            raise ValueError(f"term has {graph.k} marks, sum has {self.k}")
        if not coeff:
            return
        key = graph.key
        if key in self._terms:
            old, rep = self._terms[key]
            new = old + coeff
            if new:
                self._terms[key] = (new, rep)
            else:
                del self._terms[key]
        else:
            self._terms[key] = (coeff, graph)

    @classmethod
    def of(cls, graph: MarkedGraph, coeff=ONE):
        return cls(graph.k, [(coeff, graph)])

    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def from_json(cls, data, k=None):
        if not isinstance(data, list):
            raise ValueError("formal sum JSON must be a list of {coeff, term} objects")
        terms = []
        for i, item in enumerate(data):
            try:
                terms.append((as_scalar(item["coeff"]), MarkedGraph.from_json(item["term"])))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"formal sum item {i}: {exc}") from None
        if k is None:
            if not terms:
                raise ValueError("cannot infer the mark count of an empty formal sum")
            k = terms[0][1].k
        return cls(k, terms)

    def to_json(self):
        return [{"coeff": str(c), "term": g.to_json()} for c, g in self.terms()]

    def terms(self):
        """``(coefficient, representative)`` pairs in key order."""
        return [self._terms[key] for key in sorted(self._terms)]

    def coefficient(self, graph: MarkedGraph) -> GaussianRational:
        entry = self._terms.get(graph.key)
        return entry[0] if entry else ZERO

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.k == other.k and {k: c for k, (c, _) in self._terms.items()} == {
            k: c for k, (c, _) in other._terms.items()
        }

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        out = FormalSum(self.k, self.terms())
        for c, g in other.terms():
            out._add_term(c, g)
        return out

    def __neg__(self):
        return FormalSum(self.k, [(-c, g) for c, g in self.terms()])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = as_scalar(coeff)
        return FormalSum(self.k, [(coeff * c, g) for c, g in self.terms()])

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            return formal_product(self, other)
        return NotImplemented

    def __repr__(self):
        inner = " + ".join(f"({c})*[{key}]" for key, (c, _) in sorted(self._terms.items()))
        return f"FormalSum(k={self.k}: {inner or '0'})"


def formal_product(u: FormalSum, v: FormalSum) -> FormalSum:
    """Bilinear extension of :func:`glue`."""
    if u.k != v.k:
        raise ValueError(f"mark-count mismatch ({u.k} vs {v.k})")
    out = FormalSum(u.k)
    for (c1, g1), (c2, g2) in cartesian(u.terms(), v.terms()):
        out._add_term(c1 * c2, glue(g1, g2))
    return out


def formal_power(z: FormalSum, m: int) -> FormalSum:
    """``m``-fold product; ``z**0`` is the unit."""
    if m < 0:
        raise ValueError("negative power")
    out = FormalSum.of(unit(z.k))
    for _ in range(m):
        out = formal_product(out, z)
    return out


def b_element(k) -> FormalSum:
    """Moebius-weighted sum of the graphs ``N_P`` over all partitions of the marks."""
    if k > 7 or k > MAX_MATRIX:
        raise ValueError(f"b_element supports k <= 7, got {k}")
    return FormalSum(k, [(mu_top(p), n_p(p)) for p in enumerate_partitions(k)])


def default_bijection(k, n):
    """``(i, j) -> j*k + i`` on 0-based indices."""
    return lambda i, j: j * k + i


def _check_bijection(s, k, n):
    image = {s(i, j) for i in range(k) for j in range(n)}
    if image != set(range(k * n)):
        raise ValueError("s is not a bijection onto range(k*n)")


def gamma(p: SetPartition, z: FormalSum, s=None) -> FormalSum:
    """One copy of ``z`` per block of ``p``, marks spread over ``k * n`` slots.

    In the copy for block ``C``, the vertex that held mark ``i`` in ``z``
    receives mark ``s(i, j)`` for every ``j`` in ``C``.  The construction is
    a product of copies, so for a sum ``z`` it expands multilinearly.
    """
    k, n = z.k, p.n
    if s is None:
        s = default_bijection(k, n)
    _check_bijection(s, k, n)
    out = FormalSum(k * n)
    blocks = p.blocks
    for choice in cartesian(z.terms(), repeat=len(blocks)):
        coeff = ONE
        graph = Multigraph(0)
        marks = [None] * (k * n)
        for block, (c, g) in zip(blocks, choice):
            coeff = coeff * c
            offset = graph.vertex_count
            graph = disjoint_union(graph, g.graph)
            for j in block:
                for i in range(k):
                    marks[s(i, j)] = g.marks[i] + offset
        out._add_term(coeff, MarkedGraph(graph, tuple(marks)))
    return out
