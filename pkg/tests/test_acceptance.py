"""Acceptance criteria, one PASS/FAIL line each (shown in the terminal summary)."""

import json
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from spinrank.characterize import moebius_residual, run_characterization, verify_gluing_identity
from spinrank.connection import generate_family, necessity_check
from spinrank.invariants import SpinSource, TableSource
from spinrank.marked import FormalSum, b_element, formal_product
from spinrank.multigraph import Multigraph, enumerate_multigraphs
from spinrank.partitions import (
    convolution_failures,
    enumerate_partitions,
    falling_factorial,
    p_matrix_determinant,
    verify_diagonalization,
)
from spinrank.spin import SpinMatrix, evaluate_formal, min_degree_order, partition_function, partition_function_ordered

from .conftest import ACCEPTANCE_LINES, count_proper_colourings, random_graph, random_symmetric

K1 = Multigraph(1)


def record(number, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def criterion_matrices():
    return {
        "I_1": SpinMatrix.identity(1),
        "I_2": SpinMatrix.identity(2),
        "J_2-I_2": SpinMatrix.colouring(2),
        "I_3": SpinMatrix.identity(3),
    }


def test_1_diagonalization():
    xs = [-2, -1, 0, Fraction(1, 2), 1, 2, 3, 7]
    start = time.perf_counter()
    failures = [(n, str(x)) for n in range(1, 6) for x in xs if not verify_diagonalization(n, x).passed]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    record(1, "diagonalization M P_n(x) M^T", ok, f"{5 * len(xs)} cases, failures={failures}, {elapsed:.2f}s (< 30s)")


def test_2_singularity():
    bad = []
    for n in range(1, 6):
        for x in range(-2, n + 3):
            singular = p_matrix_determinant(n, x) == 0
            if singular != (0 <= x <= n - 1):
                bad.append((n, x))
    record(2, "det P_n(x) = 0 exactly on {0..n-1}", not bad, f"n<=5, x in [-2, n+2], failures={bad}")


def test_3_necessity(rng):
    families = {1: generate_family(1, 3, 3), 2: generate_family(2, 3, 2)}
    start = time.perf_counter()
    bad = []
    cases = 0
    for n, k in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]:
        family = families[k]
        need = min(60, 2 * n**k + 10)
        matrices = [SpinMatrix.identity(n), SpinMatrix.ones(n), SpinMatrix.colouring(n), random_symmetric(rng, n)]
        for a in matrices:
            cases += 1
            report = necessity_check(a, k, family)
            if len(family) < need or report.rank > n**k or not report.factorization_ok:
                bad.append((n, k, a.to_json()["entries"], report.rank, report.factorization_ok))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record(
        3,
        "necessity rank <= n^k and C = B B^T",
        ok,
        f"{cases} cases, families {len(families[1])}/{len(families[2])} (k=1/k=2), failures={bad}, {elapsed:.2f}s (< 300s)",
    )


def test_4_moebius_residual():
    checked = 0
    bad = []
    for name, a in criterion_matrices().items():
        f = SpinSource(a)
        ks = [a.n + 1] + ([a.n + 2] if a.n <= 2 else [])
        for k in ks:
            for g in enumerate_multigraphs(k, 4):
                checked += 1
                r = moebius_residual(f, g)
                if r != 0:
                    bad.append((name, g, str(r)))
    record(4, "Moebius residual vanishes for p_A", not bad, f"{checked} (matrix, graph) pairs, nonzero={bad[:3]}")


def test_5_idempotent_and_convolution():
    not_idempotent = [k for k in range(0, 5) if formal_product(b_element(k), b_element(k)) != b_element(k)]
    conv = {k: convolution_failures(k) for k in range(0, 6)}
    conv_bad = [k for k, v in conv.items() if v]
    value_bad = []
    for name, a in criterion_matrices().items():
        f = SpinSource(a)
        for k in range(0, 6):
            if evaluate_formal(f, b_element(k)) != falling_factorial(a.n, k):
                value_bad.append((name, k))
    ok = not (not_idempotent or conv_bad or value_bad)
    record(
        5,
        "b^2 = b, convolution identity, f(b) = falling factorial",
        ok,
        f"b^2!=b at k={not_idempotent}, convolution failures at k={conv_bad}, f(b) mismatches={value_bad}",
    )


def test_6_gluing_identity():
    zs = [FormalSum.of(m) for m in generate_family(1, 2, 2).members]
    cases = 0
    bad = []
    for name, a in [("I_2", SpinMatrix.identity(2)), ("J_2-I_2", SpinMatrix.colouring(2))]:
        for n in (2, 3):
            parts = enumerate_partitions(n)
            for p, q in product(parts, repeat=2):
                for z in zs:
                    cases += 1
                    if not verify_gluing_identity(a, p, q, z):
                        bad.append((name, str(p), str(q), z.to_json()))
    record(6, "gluing identity f(gamma_P(1_k) gamma_Q(z))", not bad, f"{cases} cases over {len(zs)} marked graphs, failures={bad[:3]}")


def test_7_checker_soundness_and_sensitivity():
    def table(fn):
        return TableSource.tabulate(fn, 4, 3)

    results = []

    report = run_characterization(SpinSource(SpinMatrix.identity(2)))
    results.append(("p_I2 accepted", report.consistent and report.to_json()["verdict"] == "consistent-up-to"))

    report = run_characterization(table(lambda g: 1 if g.vertex_count == 0 else 0))
    results.append(("[G=empty] accepted", report.consistent))

    def rejected(fn, condition, graphs):
        f = table(fn)
        v = run_characterization(f).violation
        return v is not None and v.condition == condition and v.graphs == graphs and v.replay(f) == v.value != 0

    results.append(("(1/2)^|V| rejected (moebius, K1)", rejected(lambda g: Fraction(1, 2) ** g.vertex_count, "moebius", (K1,))))
    results.append(("|V|+1 rejected (multiplicativity, K1 K1)", rejected(lambda g: g.vertex_count + 1, "multiplicativity", (K1, K1))))
    f = table(lambda g: 2 if g.vertex_count == 0 else 1)
    v = run_characterization(f).violation
    results.append(("f(empty)=2 rejected (normalization)", v is not None and v.condition == "normalization" and v.replay(f) == 1))

    ok = all(r for _, r in results)
    record(7, "checker soundness and sensitivity", ok, ", ".join(f"{name}={'ok' if r else 'NO'}" for name, r in results))


def test_8_oracle_equivalence(rng):
    ordered_bad = []
    for _ in range(50):
        g = random_graph(rng, max_vertices=6)
        a = random_symmetric(rng, rng.randint(1, 3))
        if partition_function_ordered(a, g, min_degree_order(g)) != partition_function(a, g):
            ordered_bad.append(g)
    graphs = [(Multigraph.complete(3), 3), (Multigraph.cycle(5), 2)]
    graphs += [(random_graph(rng, max_vertices=6, loops=False), rng.randint(1, 4)) for _ in range(18)]
    colour_bad = [
        (g, q) for g, q in graphs if partition_function_ordered(SpinMatrix.colouring(q), g) != count_proper_colourings(g, q)
    ]
    anchors = (
        partition_function(SpinMatrix.colouring(3), Multigraph.complete(3)) == 6
        and partition_function(SpinMatrix.colouring(2), Multigraph.cycle(5)) == 0
    )
    ok = not ordered_bad and not colour_bad and anchors
    record(
        8,
        "ordered == brute force, colouring oracle",
        ok,
        f"50 ordered cases mismatches={len(ordered_bad)}, {len(graphs)} colouring cases mismatches={len(colour_bad)}, "
        f"triangle/q=3 -> 6 and C5/q=2 -> 0: {anchors}",
    )


@pytest.fixture
def cli_inputs(tmp_path):
    files = {
        "triangle.json": Multigraph.complete(3).to_json(),
        "j3.json": SpinMatrix.colouring(3).to_json(),
        "i2.json": SpinMatrix.identity(2).to_json(),
        "table.json": TableSource.tabulate(lambda g: Fraction(1, 2) ** g.vertex_count, 4, 3).to_json(),
    }
    for name, data in files.items():
        (tmp_path / name).write_text(json.dumps(data))
    return tmp_path


def test_9_cli_determinism(cli_inputs):
    d = cli_inputs
    commands = {
        "eval": ["eval", "--graph", d / "triangle.json", "--matrix", d / "j3.json"],
        "rank": ["rank", "--matrix", d / "i2.json", "--k", "2"],
        "rank-table": ["rank", "--table", d / "table.json", "--k", "1", "--max-edges", "1"],
        "lattice": ["lattice", "--n", "3", "--x", "1/2"],
        "algebra": ["algebra", "--k", "3"],
        "check": ["check", "--matrix", d / "i2.json", "--seed", "7", "--json"],
        "check-violation": ["check", "--table", d / "table.json", "--seed", "7", "--json"],
    }
    bad = []
    for name, argv in commands.items():
        runs = [
            subprocess.run([sys.executable, "-m", "spinrank", *map(str, argv)], capture_output=True, cwd=d)
            for _ in range(2)
        ]
        if runs[0].stdout != runs[1].stdout or not runs[0].stdout or runs[0].returncode not in (0, 1):
            bad.append((name, runs[0].returncode, runs[0].stderr.decode()[-200:]))
    record(9, "CLI byte-identical output across reruns", not bad, f"{len(commands)} invocations run twice, differences={bad}")
