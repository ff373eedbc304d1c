# Finite windows of connection matrices and their exact ranks.
from spinrank import SpinMatrix
from spinrank.connection import build_submatrix, generate_family, necessity_check
from spinrank.invariants import SpinSource, TableSource

# for a spin model on n states the rank never exceeds n^k
for k in (1, 2):
    family = generate_family(k, 3, 2)
    for name, a in (("I_2", SpinMatrix.identity(2)), ("J_2 - I_2", SpinMatrix.colouring(2))):
        report = necessity_check(a, k, family)
        print(k, name, report.to_json())

# ranks only grow as the window grows
f = SpinSource(SpinMatrix([[2, 1], [1, 0]]))
family = generate_family(2, 3, 2)
for size in (5, 10, 20, 40, len(family)):
    print("window", size, "rank", build_submatrix(f, family.truncated(size)).rank())

# a tabulated invariant works the same way, as long as the table covers the window
table = TableSource.tabulate(lambda g: 3 ** g.vertex_count, 4, 2)
print("multiplicative table, k=0 rank:", build_submatrix(table, generate_family(0, 2, 1)).rank())
