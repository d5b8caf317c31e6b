"""Tree augmentation: a 1.5-approximation solver with exhaustive oracles."""

from .errors import InfeasibleError, InvariantError, LimitExceeded, ParseError, TapError
from .instance import (GraphInput, Instance, format_solution, generate, parse_instance,
                       parse_solution, reduce_graph, serialize_instance)
from .matching import Matching, max_matching
from .oracle import canonical_F, exact_opt, lower_bound_rhs, verify_cover
from .solver import AuditError, Solution, SolveOptions, tree_cover

__all__ = [
    "AuditError", "GraphInput", "InfeasibleError", "Instance", "InvariantError",
    "LimitExceeded", "Matching", "ParseError", "Solution", "SolveOptions", "TapError",
    "canonical_F", "exact_opt", "format_solution", "generate", "lower_bound_rhs",
    "max_matching", "parse_instance", "parse_solution", "reduce_graph",
    "serialize_instance", "tree_cover", "verify_cover",
]

__version__ = "0.1.0"
