"""The partition lattice of ``{0, ..., n-1}``.

Partitions are stored as restricted-growth strings (RGS): ``rgs[i]`` is the
index of the block holding element ``i``, blocks numbered in order of their
smallest element.  ``Pi_n`` is always listed in *reverse* lexicographic RGS
order, which puts the all-singletons partition first and the one-block
partition last and is a linear extension of refinement.  Every lattice
matrix uses that order, so the zeta matrix is upper unitriangular.

Elements are 0-based in code; ``str(P)`` prints the familiar 1-based form
``{{1,2},{3}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial

from .linalg import determinant, matmul, transpose
from .scalars import ONE, ZERO, GaussianRational, as_scalar
from .unionfind import DisjointSet

__all__ = [
    "SetPartition",
    "LatticeMatrix",
    "PartitionSizeError",
    "enumerate_partitions",
    "bell_number",
    "refines",
    "join",
    "kernel_partition",
    "singletons",
    "one_block",
    "zeta_matrix",
    "moebius_matrix",
    "mu_top",
    "mu_top_closed_form",
    "p_matrix",
    "falling_factorial",
    "verify_diagonalization",
    "DiagonalizationReport",
    "convolution_failures",
    "p_matrix_determinant",
    "partition_index",
]

MAX_ENUMERATE = 10
MAX_MATRIX = 8
MAX_P_MATRIX = 7
MAX_DIAGONALIZE = 6


class PartitionSizeError(ValueError):
    """Ground set too large for the requested lattice computation."""


@dataclass(frozen=True, order=False)
class SetPartition:
    rgs: tuple

    def __post_init__(self):
        top = -1
        for x in self.rgs:
            if not isinstance(x, int) or x < 0 or x > top + 1:
                raise ValueError(f"not a restricted-growth string: {self.rgs!r}")
            top = max(top, x)

    @classmethod
    def from_blocks(cls, n, blocks):
        """Build from an iterable of blocks of 0-based elements."""
        labels = [-1] * n
        for b, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise ValueError("empty block")
            for x in block:
                if not 0 <= x < n or labels[x] != -1:
                    raise ValueError(f"blocks do not partition range({n})")
                labels[x] = b
        if -1 in labels:
            raise ValueError(f"blocks do not cover range({n})")
        return kernel_partition(labels)

    @classmethod
    def from_string(cls, rgs: str):
        """Parse an RGS string such as ``"0010"``."""
        return cls(tuple(int(c) for c in rgs))

    @property
    def n(self) -> int:
        return len(self.rgs)

    @cached_property
    def blocks(self) -> tuple:
        out = [[] for _ in range(len(self))]
        for i, b in enumerate(self.rgs):
            out[b].append(i)
        return tuple(tuple(b) for b in out)

    def __len__(self):
        return max(self.rgs) + 1 if self.rgs else 0

    def block_of(self, i) -> int:
        return self.rgs[i]

    def to_string(self) -> str:
        return "".join(str(x) for x in self.rgs) if len(self) <= 10 else ",".join(map(str, self.rgs))

    def __str__(self):
        return "{" + ",".join("{" + ",".join(str(x + 1) for x in b) + "}" for b in self.blocks) + "}"

    def __repr__(self):
        return f"SetPartition({self})"

    def __le__(self, other):
        return refines(self, other)


def singletons(n) -> SetPartition:
    return SetPartition(tuple(range(n)))


def one_block(n) -> SetPartition:
    return SetPartition((0,) * n)


def bell_number(n) -> int:
    """Bell number from the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def _enumerate(n):
    out = []

    def extend(prefix, top):
        if len(prefix) == n:
            out.append(SetPartition(tuple(prefix)))
            return
        for v in range(top + 2):
            prefix.append(v)
            extend(prefix, max(top, v))
            prefix.pop()

    extend([], -1)
    out.reverse()
    return tuple(out)


def enumerate_partitions(n) -> tuple:
    """All partitions of ``range(n)``, reverse-lexicographic RGS order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ENUMERATE:
        raise PartitionSizeError(f"n={n} exceeds the enumeration limit {MAX_ENUMERATE}")
    return _enumerate(n)


@lru_cache(maxsize=None)
def _index(n):
    return {p: i for i, p in enumerate(_enumerate(n))}


def partition_index(p: SetPartition) -> int:
    return _index(p.n)[p]


def _same_ground(p, q):
    if p.n != q.n:
        raise ValueError(f"partitions of different ground sets ({p.n} vs {q.n})")


def refines(p: SetPartition, q: SetPartition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    _same_ground(p, q)
    image = {}
    for a, b in zip(p.rgs, q.rgs):
        if image.setdefault(a, b) != b:
            return False
    return True


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Finest common coarsening."""
    _same_ground(p, q)
    ds = DisjointSet(p.n)
    for partition in (p, q):
        for block in partition.blocks:
            for x in block[1:]:
                ds.union(block[0], x)
    return SetPartition(tuple(ds.labels()))


def kernel_partition(values) -> SetPartition:
    """Partition of positions into the nonempty fibres of a map given as a sequence."""
    seen = {}
    return SetPartition(tuple(seen.setdefault(v, len(seen)) for v in values))


@dataclass(frozen=True)
class LatticeMatrix:
    """Square matrix indexed by ``Pi_n`` in the module's canonical order."""

    n: int
    rows: tuple

    @property
    def partitions(self):
        return _enumerate(self.n)

    def __getitem__(self, key):
        p, q = key
        idx = _index(self.n)
        return self.rows[idx[p]][idx[q]]

    def as_lists(self):
        return [list(r) for r in self.rows]

    def to_json(self):
        return [[str(x) for x in row] for row in self.rows]


def _guard(n, limit, what):
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise PartitionSizeError(f"{what}: n={n} exceeds limit {limit}")


@lru_cache(maxsize=None)
def _zeta_int(n):
    parts = _enumerate(n)
    return tuple(tuple(1 if refines(p, q) else 0 for q in parts) for p in parts)


def zeta_matrix(n) -> LatticeMatrix:
    _guard(n, MAX_MATRIX, "zeta_matrix")
    z = _zeta_int(n)
    return LatticeMatrix(n, tuple(tuple(ONE if x else ZERO for x in row) for row in z))


@lru_cache(maxsize=None)
def _moebius_int(n):
    # Z is upper unitriangular in the canonical order; solve M Z = I row by row,
    # touching only the up-set of each row partition.
    z = _zeta_int(n)
    size = len(z)
    rows = []
    for i in range(size):
        up = [j for j in range(i, size) if z[i][j]]
        m = {i: 1}
        for j in up[1:]:
            m[j] = -sum(m[r] for r in up if r < j and z[r][j])
        row = [0] * size
        for j, v in m.items():
            row[j] = v
        rows.append(tuple(row))
    return tuple(rows)


def moebius_matrix(n) -> LatticeMatrix:
    """Exact inverse of :func:`zeta_matrix` by unitriangular back-substitution."""
    _guard(n, MAX_MATRIX, "moebius_matrix")
    return LatticeMatrix(n, tuple(tuple(as_scalar(x) for x in row) for row in _moebius_int(n)))


@lru_cache(maxsize=None)
def _mu_top_row(n):
    # Row of the singleton partition only; every partition lies above it.
    parts = _enumerate(n)
    mu = [1]
    for j in range(1, len(parts)):
        q = parts[j]
        mu.append(-sum(mu[r] for r in range(j) if refines(parts[r], q)))
    return tuple(mu)


def mu_top(p: SetPartition) -> int:
    """Moebius value between the all-singletons partition and ``p``."""
    _guard(p.n, MAX_MATRIX, "mu_top")
    return _mu_top_row(p.n)[partition_index(p)]


def mu_top_closed_form(p: SetPartition) -> int:
    """Product over blocks of ``(-1)**(|B|-1) * (|B|-1)!``."""
    out = 1
    for block in p.blocks:
        s = len(block)
        out *= (-1) ** (s - 1) * factorial(s - 1)
    return out


def p_matrix(n, x) -> LatticeMatrix:
    """Matrix with entry ``x ** |P v Q|``."""
    _guard(n, MAX_P_MATRIX, "p_matrix")
    x = as_scalar(x)
    powers = [x**e for e in range(n + 1)]
    parts = _enumerate(n)
    rows = []
    for i, p in enumerate(parts):
        row = []
        for j, q in enumerate(parts):
            row.append(powers[len(join(p, q))] if j >= i else rows[j][i])
        rows.append(row)
    return LatticeMatrix(n, tuple(tuple(r) for r in rows))


def p_matrix_determinant(n, x) -> GaussianRational:
    return determinant(p_matrix(n, x).as_lists())


def falling_factorial(x, k) -> GaussianRational:
    """``x (x-1) ... (x-k+1)``; the empty product for ``k = 0`` is 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = as_scalar(x)
    out = ONE
    for i in range(k):
        out = out * (x - i)
    return out


@dataclass(frozen=True)
class DiagonalizationReport:
    n: int
    x: GaussianRational
    passed: bool
    mismatches: int
    first_mismatch: tuple | None  # (P, Q, expected, actual)

    def to_json(self):
        out = {"n": self.n, "x": str(self.x), "passed": self.passed, "mismatches": self.mismatches}
        if self.first_mismatch is not None:
            p, q, expected, actual = self.first_mismatch
            out["first_mismatch"] = {
                "P": p.to_string(),
                "Q": q.to_string(),
                "expected": str(expected),
                "actual": str(actual),
            }
        return out


def verify_diagonalization(n, x) -> DiagonalizationReport:
    """Check ``M P_n(x) M^T`` against the diagonal of falling factorials, exactly."""
    _guard(n, MAX_DIAGONALIZE, "verify_diagonalization")
    x = as_scalar(x)
    m = moebius_matrix(n).as_lists()
    product = matmul(matmul(m, p_matrix(n, x).as_lists()), transpose(m))
    parts = _enumerate(n)
    mismatches = 0
    first = None
    for i, p in enumerate(parts):
        for j, q in enumerate(parts):
            expected = falling_factorial(x, len(p)) if i == j else ZERO
            if product[i][j] != expected:
                mismatches += 1
                if first is None:
                    first = (p, q, expected, product[i][j])
    return DiagonalizationReport(n, x, mismatches == 0, mismatches, first)


def convolution_failures(k):
    """Partitions ``R`` where the sum of ``mu(P) mu(Q)`` over ``P v Q = R`` differs from ``mu(R)``.

    Returns ``[(R, lhs, mu(R)), ...]``; empty when the identity holds on all of ``Pi_k``.
    """
    parts = enumerate_partitions(k)
    mu = {p: mu_top(p) for p in parts}
    sums = dict.fromkeys(parts, 0)
    for p in parts:
        for q in parts:
            sums[join(p, q)] += mu[p] * mu[q]
    return [(r, sums[r], mu[r]) for r in parts if sums[r] != mu[r]]
