from ._core import (
    Digraph,
    Error,
    Reduction,
    Spec,
    dump,
    enumerate,
    find_violation,
    load,
    matching_covering,
    maximum_matching,
    oracle,
    reduce,
    solve,
    solve_2sat,
    verify,
)

__all__ = [
    "Digraph",
    "Error",
    "Reduction",
    "Spec",
    "dump",
    "enumerate",
    "find_violation",
    "load",
    "matching_covering",
    "maximum_matching",
    "oracle",
    "reduce",
    "solve",
    "solve_2sat",
    "verify",
]
