"""Finite necessary conditions for an invariant to be a spin-model partition function.

An invariant ``f`` that equals some ``p_A`` must satisfy

* ``f(empty graph) = 1``;
* ``f(G + H) = f(G) f(H)`` for disjoint unions;
* ``f(K_1)`` is a nonnegative integer ``n``;
* for every graph ``G`` on ``k > n`` vertices, the Moebius-weighted sum of
  ``f`` over the quotients of ``G`` vanishes;
* the connection-matrix windows have rank at most ``n**k``.

:func:`run_characterization` probes these conditions inside explicit bounds
and returns either a replayable :class:`Violation` or a report stating the
bounds within which ``f`` is consistent.  Consistency is never a proof.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .connection import build_submatrix, generate_family, rank_growth_row
from .invariants import SpinSource, TableSource, require_coverage
from .marked import FormalSum, MarkedGraph, b_element, formal_power, formal_product, gamma, unit
from .multigraph import Multigraph, disjoint_union, enumerate_multigraphs, quotient
from .partitions import enumerate_partitions, falling_factorial, join, mu_top
from .scalars import ONE, ZERO, GaussianRational
from .spin import SpinMatrix, evaluate_formal

__all__ = [
    "SpinSource",
    "TableSource",
    "Violation",
    "CheckReport",
    "check_normalization",
    "check_multiplicativity",
    "moebius_residual",
    "run_characterization",
    "verify_gluing_identity",
    "gluing_identity_sides",
    "ideal_membership_of_b",
    "IdealReport",
    "multiplicativity_pairs",
]

MAX_RESIDUAL_K = 7


@dataclass(frozen=True)
class Violation:
    """A failed condition with everything needed to recompute it."""

    condition: str  # "normalization" | "multiplicativity" | "moebius"
    graphs: tuple
    detail: str
    value: GaussianRational  # nonzero residual or difference

    def replay(self, f) -> GaussianRational:
        """Recompute the residual; nonzero means the violation stands."""
        if self.condition == "normalization":
            return f(Multigraph(0)) - ONE
        if self.condition == "multiplicativity":
            g, h = self.graphs
            return f(disjoint_union(g, h)) - f(g) * f(h)
        if self.condition == "moebius":
            (g,) = self.graphs
            return moebius_residual(f, g)
        raise ValueError(f"unknown condition {self.condition!r}")

    def to_json(self):
        return {
            "condition": self.condition,
            "graphs": [g.to_json() for g in self.graphs],
            "detail": self.detail,
            "residual": str(self.value),
        }


@dataclass
class CheckReport:
    violation: Violation | None
    f_k1: GaussianRational | None
    bounds: dict
    conditions: dict = field(default_factory=dict)
    rank_growth: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.violation is None

    @property
    def verdict(self):
        return "consistent-up-to" if self.consistent else "violation"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "violation": self.violation.to_json() if self.violation else None,
            "f_K1": None if self.f_k1 is None else str(self.f_k1),
            "bounds": self.bounds,
            "conditions": self.conditions,
            "rank_growth": self.rank_growth,
            "notes": self.notes,
        }

    def render(self):
        lines = [f"verdict: {self.verdict}"]
        if self.violation:
            v = self.violation
            lines.append(f"  failed condition: {v.condition}")
            lines.append(f"  {v.detail}")
            lines.append(f"  residual: {v.value}")
        lines.append(f"f(K_1) = {self.f_k1}")
        lines.append("bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds.items()))
        for name, info in self.conditions.items():
            lines.append(f"{name}: {info}")
        if self.rank_growth:
            lines.append("rank growth:")
            lines.append("  k  family  rank  bound  log(rank)/(k log k)")
            for row in self.rank_growth:
                bound = row.get("bound_nk", "-")
                ratio = row["log_rank_over_k_log_k"]
                ratio = "-" if ratio is None else f"{ratio:.4f}"
                lines.append(f"  {row['k']:<2} {row['family_size']:<7} {row['rank']:<5} {bound!s:<6} {ratio}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def check_normalization(f) -> bool:
    return f(Multigraph(0)) == ONE


def check_multiplicativity(f, pairs):
    """First pair with ``f(G + H) != f(G) f(H)`` as a :class:`Violation`, else ``None``."""
    pairs = list(pairs)
    require_coverage(f, [g for pair in pairs for g in (*pair, disjoint_union(*pair))], "multiplicativity")
    for g, h in pairs:
        lhs = f(disjoint_union(g, h))
        rhs = f(g) * f(h)
        if lhs != rhs:
            return Violation(
                "multiplicativity",
                (g, h),
                f"f(G+H) = {lhs} but f(G) f(H) = {rhs}",
                lhs - rhs,
            )
    return None


def moebius_residual(f, g: Multigraph) -> GaussianRational:
    """Sum over partitions ``P`` of the vertices of ``mu(P) * f(G/P)``."""
    k = g.vertex_count
    if k > MAX_RESIDUAL_K:
        raise ValueError(f"moebius_residual supports at most {MAX_RESIDUAL_K} vertices")
    parts = enumerate_partitions(k)
    require_coverage(f, [quotient(g, p) for p in parts], "Moebius residual")
    total = ZERO
    for p in parts:
        total = total + mu_top(p) * f(quotient(g, p))
    return total


def multiplicativity_pairs(max_vertices, max_edges, count, seed=0):
    """Deterministic probe pairs whose union stays within the bounds.

    All pairs among the smallest graphs come first, then ``count`` seeded
    random pairs.
    """
    graphs = []
    for nv in range(max_vertices + 1):
        graphs.extend(enumerate_multigraphs(nv, max_edges))
    fits = lambda g, h: (
        g.vertex_count + h.vertex_count <= max_vertices and g.edge_count + h.edge_count <= max_edges
    )
    head = graphs[:4]
    pairs = [(g, h) for i, g in enumerate(head) for h in head[i:] if fits(g, h)]
    candidates = [(g, h) for i, g in enumerate(graphs) for h in graphs[i:] if fits(g, h)]
    rng = random.Random(seed)
    if candidates:
        pairs.extend(rng.choice(candidates) for _ in range(count))
    return pairs


def _integrality_witness(x: GaussianRational):
    """Smallest ``k >= 0`` with ``k > Re f(K_1)``; the edgeless graph there has a nonzero residual."""
    re = x.re
    return max(0, math.floor(re) + 1)


def run_characterization(
    f,
    max_k=3,
    max_vertices=3,
    max_edges=3,
    pairs=20,
    seed=0,
    family_vertices=2,
    family_edges=1,
    max_rank_k=None,
) -> CheckReport:
    """Probe every finitely checkable condition for ``f`` within the bounds.

    ``max_vertices``/``max_edges`` bound the multiplicativity probes,
    ``max_edges`` also bounds the graphs probed for Moebius residuals (on
    ``k`` vertices for ``f(K_1) < k <= max_k``), and
    ``family_vertices``/``family_edges`` bound the marked families of the
    rank windows for ``k <= max_rank_k`` (default ``max_k``).
    """
    bounds = {
        "max_k": max_k,
        "max_vertices": max_vertices,
        "max_edges": max_edges,
        "pairs": pairs,
        "seed": seed,
        "family_vertices": family_vertices,
        "family_edges": family_edges,
    }
    report = CheckReport(None, None, bounds)

    empty = Multigraph(0)
    f_empty = f(empty)
    report.conditions["normalization"] = {"f_empty": str(f_empty), "ok": f_empty == ONE}
    if f_empty != ONE:
        report.violation = Violation("normalization", (empty,), f"f(empty) = {f_empty}, expected 1", f_empty - ONE)
        return report

    probe_pairs = multiplicativity_pairs(max_vertices, max_edges, pairs, seed)
    bad = check_multiplicativity(f, probe_pairs)
    report.conditions["multiplicativity"] = {"pairs_checked": len(probe_pairs), "ok": bad is None}
    if bad is not None:
        report.violation = bad
        return report

    require_coverage(f, [Multigraph(1)], "f(K_1)")
    fk1 = f(Multigraph(1))
    report.f_k1 = fk1
    if fk1.is_nonnegative_integer():
        n = int(fk1.re)
        probed = 0
        for k in range(n + 1, max_k + 1):
            for g in enumerate_multigraphs(k, max_edges):
                probed += 1
                residual = moebius_residual(f, g)
                if residual:
                    report.conditions["moebius"] = {"graphs_checked": probed, "ok": False}
                    report.violation = Violation(
                        "moebius",
                        (g,),
                        f"Moebius residual on a {k}-vertex graph is {residual} (f(K_1) = {n} < {k})",
                        residual,
                    )
                    return report
        report.conditions["moebius"] = {
            "graphs_checked": probed,
            "k_range": [n + 1, max_k] if n + 1 <= max_k else None,
            "ok": True,
        }
        if n + 1 > max_k:
            report.notes.append(f"max_k={max_k} <= f(K_1)={n}: no Moebius residual is constrained within bounds")
    else:
        k = _integrality_witness(fk1)
        g = Multigraph(k)
        residual = moebius_residual(f, g)
        report.conditions["moebius"] = {"graphs_checked": 1, "ok": False}
        if k == 0:
            report.notes.append(
                "f(K_1) has nonpositive real part; the Moebius condition is applied literally at k=0, "
                "where the residual is f(empty) = 1"
            )
        report.violation = Violation(
            "moebius",
            (g,),
            f"f(K_1) = {fk1} is not a nonnegative integer; the residual on {k} isolated vertices "
            f"is the falling factorial {residual}",
            residual,
        )
        return report

    top_k = max_k if max_rank_k is None else max_rank_k
    bound_base = f.matrix.n if isinstance(f, SpinSource) else None
    for k in range(top_k + 1):
        family = generate_family(k, family_vertices, family_edges)
        window = build_submatrix(f, family)
        rank = window.rank()
        bound = bound_base**k if bound_base is not None else None
        report.rank_growth.append(rank_growth_row(k, rank, len(family), bound))
        if bound is not None and rank > bound:
            report.notes.append(f"rank window at k={k} exceeds n^k={bound}")
    if report.rank_growth and report.rank_growth[0]["rank"] != 1:
        report.notes.append("rank window at k=0 is not 1")
    report.notes.append("consistency holds only within the stated bounds; it does not certify a spin model")
    return report


def gluing_identity_sides(f, p, q, z: FormalSum, s=None):
    """Both sides of the copy-and-glue identity for partitions ``p, q`` of the copies.

    Left: ``f(gamma_p(1_k) * gamma_q(z))``.  Right: product over blocks ``D``
    of ``p v q`` of ``f(z ** m_D)``, where ``m_D`` counts blocks of ``q``
    inside ``D``.
    """
    if p.n != q.n:
        raise ValueError("p and q must partition the same set")
    k = z.k
    if k * p.n > 6:
        raise ValueError(f"k*n = {k * p.n} exceeds the limit 6")
    lhs = evaluate_formal(f, formal_product(gamma(p, FormalSum.of(unit(k)), s), gamma(q, z, s)))
    rhs = ONE
    top = join(p, q)
    for block in top.blocks:
        members = set(block)
        m = sum(1 for qb in q.blocks if set(qb) <= members)
        rhs = rhs * evaluate_formal(f, formal_power(z, m))
    return lhs, rhs


def verify_gluing_identity(a: SpinMatrix, p, q, z: FormalSum, s=None) -> bool:
    lhs, rhs = gluing_identity_sides(SpinSource(a), p, q, z, s)
    return lhs == rhs


@dataclass(frozen=True)
class IdealReport:
    k: int
    f_b: GaussianRational
    probes: int
    failures: tuple  # (probe, value) with nonzero f(b * probe)
    route_mismatches: tuple  # (graph, via product, via residual)

    @property
    def ok(self):
        return not self.failures and not self.route_mismatches and not self.f_b


def _fully_marked(y: MarkedGraph):
    return y.marks == tuple(range(y.graph.vertex_count))


def ideal_membership_of_b(f, k, probes) -> IdealReport:
    """Check that ``f(b * y) = 0`` for each probe ``y``.

    For probes carrying mark ``i`` on vertex ``i`` of a ``k``-vertex graph the
    same number is also computed as :func:`moebius_residual` and compared.
    """
    fk1 = f(Multigraph(1))
    if not fk1.is_nonnegative_integer():
        raise ValueError(f"f(K_1) = {fk1} is not a nonnegative integer")
    if not int(fk1.re) < k <= 5:
        raise ValueError(f"need f(K_1) < k <= 5, got f(K_1) = {fk1}, k = {k}")
    b = b_element(k)
    failures = []
    mismatches = []
    probes = list(probes)
    for y in probes:
        value = evaluate_formal(f, formal_product(b, FormalSum.of(y)))
        if value:
            failures.append((y, value))
        if _fully_marked(y):
            residual = moebius_residual(f, y.graph)
            if residual != value:
                mismatches.append((y.graph, value, residual))
    f_b = evaluate_formal(f, b)
    return IdealReport(k, f_b, len(probes), tuple(failures), tuple(mismatches))


def b_value_matches_falling_factorial(f, k) -> bool:
    fk1 = f(Multigraph(1))
    return evaluate_formal(f, b_element(k)) == falling_factorial(fk1, k)
