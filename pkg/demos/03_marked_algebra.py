# k-marked graphs, gluing, and the idempotent b.
from spinrank import Multigraph, SpinMatrix
from spinrank.invariants import SpinSource
from spinrank.marked import MarkedGraph, b_element, formal_product, glue, n_p, unit
from spinrank.partitions import enumerate_partitions, falling_factorial, join
from spinrank.spin import evaluate_formal

# two marked edges glued at both ends give a double edge
edge = MarkedGraph(Multigraph(2, [(0, 1)]), (0, 1))
print("edge * edge:", glue(edge, edge).graph)
print("unit law:", glue(edge, unit(2)).key == edge.key)

# N_P multiplies like the join in the partition lattice
parts = enumerate_partitions(3)
ok = all(glue(n_p(p), n_p(q)).key == n_p(join(p, q)).key for p in parts for q in parts)
print("N_P N_Q = N_(P v Q):", ok)

# b is the Moebius-weighted sum of the N_P
b = b_element(3)
for coeff, term in b.terms():
    print(" ", coeff, term.marks)
print("b^2 == b:", formal_product(b, b) == b)

# a spin model with n states sends b to n(n-1)...(n-k+1), which is 0 once k > n
f = SpinSource(SpinMatrix.identity(2))
for k in range(5):
    print("k=%d  f(b)=%s  falling=%s" % (k, evaluate_formal(f, b_element(k)), falling_factorial(2, k)))
