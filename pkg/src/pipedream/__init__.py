"""RC-graphs, ladder moves and lower bounds for principal specializations of Schubert polynomials."""

from .perm import (Permutation, PatternError, avoids, count_pattern, inverse, inversions,
                   is_layered, lehmer_code, length, parse_permutation, rothe_diagram)
from .rcgraph import (BudgetExceeded, LadderMove, MoveError, RCGraph, RCGraphError,
                      applicable_moves, apply_move, bottom, count_rc_graphs, enumerate_all,
                      is_simply_connected, label, reading_word, simple_component,
                      strand_types, top, validate)
from .schubert import (CoefficientTable, build_coefficients, max_coefficient, nu,
                       nu_macdonald_oracle, verify_nonnegativity)
from .witness import WitnessError, build_context, build_witnesses, recover_box

__version__ = "0.1.0"

__all__ = [
    "Permutation", "PatternError", "avoids", "count_pattern", "inverse", "inversions",
    "is_layered", "lehmer_code", "length", "parse_permutation", "rothe_diagram",
    "BudgetExceeded", "LadderMove", "MoveError", "RCGraph", "RCGraphError",
    "applicable_moves", "apply_move", "bottom", "count_rc_graphs", "enumerate_all",
    "is_simply_connected", "label", "reading_word", "simple_component", "strand_types",
    "top", "validate", "CoefficientTable", "build_coefficients", "max_coefficient", "nu",
    "nu_macdonald_oracle", "verify_nonnegativity", "WitnessError", "build_context",
    "build_witnesses", "recover_box",
]
