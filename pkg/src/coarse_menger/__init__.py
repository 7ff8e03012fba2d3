"""Far-apart path packing and ball separators on undirected graphs.

The library has three pillars: generators for a max-degree-3 gadget family
on which small ball separators provably fail, a brute-force oracle that
certifies such claims exactly at desk scale, and a constructive two-outcome
router that on any graph returns either two mutually far source-target paths
or a verified single-ball separator center of radius 161.
"""

from .graph import (
    Graph,
    Path,
    build_graph,
    ball,
    components_excluding,
    disjoint_union,
    distances_from,
    power,
    set_distance,
    shortest_path,
    INF,
)
from .intervals import (
    Interval,
    IntervalFamily,
    family,
    is_powerful,
    prune_minimal,
    reflect,
    spaced_select,
    standard_form,
    sweep_select,
)
from .gadgets import LabeledGadget, build_counterexample, build_tree_gadget
from .oracle import (
    BudgetExhausted,
    Escapes,
    FoundPaths,
    NoneExists,
    SearchBudget,
    Separates,
    check_gadget_dichotomy,
    find_ball_separator,
    is_ball_separator,
    search_far_paths,
)
from .solver import (
    Center,
    NoPath,
    SolverConfig,
    TwoFarPaths,
    solve,
    solve_at_distance,
)

__version__ = "0.1.0"
