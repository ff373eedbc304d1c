# The partition lattice: zeta, Moebius and the matrix P_n(x).
from fractions import Fraction

from spinrank.partitions import (
    enumerate_partitions,
    moebius_matrix,
    mu_top,
    p_matrix,
    p_matrix_determinant,
    verify_diagonalization,
    zeta_matrix,
)

n = 3
parts = enumerate_partitions(n)
print("partitions of 3:", [str(p) for p in parts])
print("zeta:", zeta_matrix(n).as_lists())
print("moebius:", moebius_matrix(n).as_lists())
print("mu from the singletons:", [mu_top(p) for p in parts])

# P_n(x)[P, Q] = x^|P v Q|
print("P_3(2):", p_matrix(n, 2).as_lists())

# M P M^T is diagonal with falling factorials on the diagonal
for x in (-1, 0, Fraction(1, 2), 2, 7):
    print("x =", x, "diagonalizes:", verify_diagonalization(4, x).passed)

# so det P_n(x) vanishes exactly at 0..n-1
for x in range(-2, 6):
    print("det P_4(%d) = %s" % (x, p_matrix_determinant(4, x)))
