# Partition functions of spin models, evaluated exactly.
from spinrank import Multigraph, SpinMatrix
from spinrank.spin import elimination_widths, min_degree_order, partition_function, partition_function_ordered

# J - I on q states counts proper q-colourings
triangle = Multigraph.complete(3)
for q in range(1, 5):
    print("colourings of K3 with", q, "colours:", partition_function(SpinMatrix.colouring(q), triangle))

# odd cycles are not 2-colourable
print("C5, 2 colours:", partition_function_ordered(SpinMatrix.colouring(2), Multigraph.cycle(5)))

# weights can be Gaussian rationals; loops and parallel edges count with multiplicity
a = SpinMatrix([["1", "1/2+1i"], ["1/2+1i", "-3"]])
g = Multigraph(3, [(0, 1, 2), (1, 2), (2, 2)])
print("p_A(G) =", partition_function(a, g))

# variable elimination agrees with brute force and scales along paths
path = Multigraph.path(40)
order = min_degree_order(path)
print("max width on P40:", max(elimination_widths(path, order)))
print("p_I2(P40) =", partition_function_ordered(SpinMatrix.identity(2), path, order))
