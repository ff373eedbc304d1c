"""Exact partition functions of spin models, connection-matrix ranks and
partition-lattice Moebius machinery."""

from .scalars import GaussianRational, parse_scalar, format_scalar
from .partitions import (
    SetPartition,
    enumerate_partitions,
    join,
    refines,
    zeta_matrix,
    moebius_matrix,
    mu_top,
    p_matrix,
    falling_factorial,
    verify_diagonalization,
)
from .multigraph import Multigraph, canonical_key, disjoint_union, quotient
from .marked import MarkedGraph, FormalSum, glue, unit, n_p, b_element, gamma
from .spin import SpinMatrix, partition_function, partition_function_ordered, marked_partition_function
from .invariants import SpinSource, TableSource
from .connection import generate_family, build_submatrix, exact_rank, necessity_check
from .characterize import run_characterization, moebius_residual

__version__ = "0.1.0"
