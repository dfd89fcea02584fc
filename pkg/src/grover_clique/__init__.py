"""Grover search for the maximum clique problem.

Synthesizes the reversible exclusion / Hamming-weight classifier oracle,
simulates it on a dense or compiled backend, and drives a level-descending
search checked against brute-force enumeration.
"""
from .circuit import (
    Circuit,
    Gate,
    RegisterLayout,
    build_classifier,
    build_diffusion,
    build_exclusion,
    build_g21_reduced,
    build_grover_circuit,
    build_oracle,
    build_superposition,
    classification_table,
    evaluate_classical,
    layout,
    lower,
    parse_text,
    reverse,
    to_text,
)
from .driver import SolveConfig, SolveResult, iterations_for, solve, verify_candidate
from .errors import CliqueError, DomainError, ParseError, ResourceLimitError
from .estimator import GroverCliqueSearch, check_graph
from .graph import (
    Graph,
    complement,
    count_solutions,
    example_graph,
    is_legal_clique,
    max_cliques_bruteforce,
    parse_dimacs,
    random_graph,
    to_dimacs,
)
from .resources import (
    ResourceReport,
    appendix_a_estimate,
    count_gates,
    grover_report,
    qubit_count,
    sat_reduction_size,
)
from .simulator import (
    Distribution,
    State,
    apply_gate,
    compiled_oracle_run,
    dense_grover_run,
    marginal,
    new_state,
    run,
    sample,
    simulate,
)

__all__ = [
    "Circuit",
    "CliqueError",
    "Distribution",
    "DomainError",
    "Gate",
    "Graph",
    "GroverCliqueSearch",
    "ParseError",
    "RegisterLayout",
    "ResourceLimitError",
    "ResourceReport",
    "SolveConfig",
    "SolveResult",
    "State",
    "appendix_a_estimate",
    "apply_gate",
    "build_classifier",
    "build_diffusion",
    "build_exclusion",
    "build_g21_reduced",
    "build_grover_circuit",
    "build_oracle",
    "build_superposition",
    "check_graph",
    "classification_table",
    "compiled_oracle_run",
    "complement",
    "count_gates",
    "count_solutions",
    "dense_grover_run",
    "evaluate_classical",
    "example_graph",
    "grover_report",
    "is_legal_clique",
    "iterations_for",
    "layout",
    "lower",
    "marginal",
    "max_cliques_bruteforce",
    "new_state",
    "parse_dimacs",
    "parse_text",
    "qubit_count",
    "random_graph",
    "reverse",
    "run",
    "sample",
    "sat_reduction_size",
    "simulate",
    "solve",
    "to_dimacs",
    "to_text",
    "verify_candidate",
]

__version__ = "0.1.0"
