"""Exact arithmetic of planar binary trees.

Trees are coded by integer vectors (names); on names the Tamari order is the
coordinatewise order, the dendriform operations are intervals, and a tree
corresponds to a noncrossing partition that drives moment and cumulant
computations in free probability.
"""

from .arithmetic import (
    decompose_grove,
    dend_left,
    dend_right,
    is_prime,
    l_mult,
    ltimes,
    nonprimes,
    omega_expr,
    over,
    solve_left,
    star,
    under,
    varpi_expr,
)
from .errors import (
    ArithmetreeError,
    CrossingPartition,
    DegreeError,
    NoSolution,
    NotAName,
    NotComparable,
    ParseError,
    UndefinedOperation,
)
from .ncp import NCPartition, enumerate_nc, from_partition, nc_mobius, partition_dagger, to_partition
from .tamari import interval, leq, mobius_closed, mobius_poset, path_bound
from .trees import EMPTY, Grove, Name, Tree, dagger, enumerate_names, exp_of, is_name, name_of, tree_of

__version__ = "0.1.0"
