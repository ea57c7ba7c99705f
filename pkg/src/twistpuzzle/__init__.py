"""Engine for sliding-block puzzles whose tiles rotate as they slide.

Boards are twist graphs: connected multigraphs whose oriented edges carry
rotation residues mod m.  The package models states and moves, folds blank
tours into generalized-symmetric-group elements, classifies the reachable
group in closed form where theory decides it (falling back to exhaustive
search where it does not), and verifies the classification against
brute-force enumeration.
"""

from .errors import (
    ClosureCapExceeded,
    CompositionError,
    CycleConditionError,
    DivisorError,
    GraphFormatError,
    IllegalMoveError,
    PathError,
    PuzzleError,
    StateFormatError,
    UndecidedError,
)
from .graph import (
    Edge,
    Step,
    TwistGraph,
    gauge_transform,
    graph_from_dict,
    graph_to_dict,
    is_bipartite,
    is_twist_bipartite,
    normalize_and_reduce,
    parse_twist_graph,
    serialize_twist_graph,
    step_from_str,
    validate,
)
from .groups import GroupElement, closure, inverse, multiply, power, project
from .presets import PRESET_NAMES, preset
from .topology import (
    ClosedPath,
    CycleVector,
    cycle_vector_of_path,
    fundamental_generators,
    is_phi_surjective,
    phi_gamma,
    phi_of_path,
    rotation_kernel_generators,
)
from .dynamics import (
    PuzzleState,
    apply_move,
    apply_moves,
    element_of_path,
    legal_moves,
    parse_state,
    scramble,
    serialize_state,
    solved_state,
    state_element_bridge,
    state_from_element,
    state_home,
    transport_blank_home,
)
from .classifier import (
    CASES,
    GroupDescriptor,
    classify,
    group_order,
    is_solvable,
)
from .oracle import ReachableSet, StateCodec, VerifyReport, enumerate_reachable, verify_classifier
from .solver import SolveResult, solve, verify_solution

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
