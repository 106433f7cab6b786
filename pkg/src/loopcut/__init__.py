"""Loop cutsets for directed acyclic graphs: greedy heuristics, exact search, generators, benchmarks."""

__version__ = "0.1.0"

from .cutset import Cutset, Selection
from .errors import (
    BudgetExceeded,
    CycleBudgetExceeded,
    InvalidCutsetError,
    LoopCutError,
    NoEligibleNodeError,
    ParseError,
    UnknownNodeError,
    ValidationError,
)
from .exact import (
    cutset_weight,
    enumerate_loops,
    exact_min_cutset,
    is_valid_cutset,
    is_valid_cutset_oracle,
    split_graph,
)
from .generators import GenSpec, ValuesAssignment, adv_roles, assign_values, gen_adv, gen_g1, gen_g2, generate
from .graph import (
    Network,
    NodeView,
    dump_network,
    has_same_loop_parents,
    is_on_some_loop,
    is_singly_connected,
    load_network,
    prune_degree_one,
    remove_nodes,
)
from .heuristics import (
    SelectionPolicy,
    decompose,
    eligible_a1,
    eligible_a2,
    run_heuristic,
    run_random_baseline,
    select_next,
)
