"""Exact tools for refined list colouring: lambda-choosability, the partition order,
signed and permutation-signature colouring, colour transfers and explicit constructions."""

__version__ = "0.1.0"

from .assignments import LambdaAssignment, ListAssignment, SymmetricAssignment, validate_lambda
from .choosability import decide_lambda_choosable, is_lambda_choosable
from .graph import EmbeddedGraph, Graph
from .partitions import IntPartition, leq
from .signed import SignedGraph, decide_signed_colorable
from .solver import solve_k, solve_list

__all__ = [
    "EmbeddedGraph", "Graph", "IntPartition", "LambdaAssignment", "ListAssignment", "SignedGraph",
    "SymmetricAssignment", "decide_lambda_choosable", "decide_signed_colorable",
    "is_lambda_choosable", "leq", "solve_k", "solve_list", "validate_lambda",
]
