from .complex_core import (
    clique_complex,
    find_disjoint_cliques,
    find_induced_cycle,
    induced_subcomplex,
    is_complete_graph_complex,
    is_exclusive_set,
    maximal_cliques,
    or_product,
    product_assignment,
    relabel,
    skeleton,
    validate,
)
from .lp_solver import SimplexConfig, SimplexSolver, lp_solve, verify_certificate
from .bounds import (
    ce_bound,
    ce_product_bound,
    check_assignment,
    e_bound,
    find_ce_violation,
    nchv_bound,
    theta_matches_root,
    theta_odd_cycle,
    verify_bound,
)
from .scenarios import (
    assignment_from_behavior,
    complete_graph_complex,
    cycle_complex,
    full_simplex_complex,
    joint_scenario,
    lo_complex,
    no_signaling_check,
    pr_box_behavior,
    product_behavior,
    support_events,
)
from .dot_writer import DotWriter, DotWriterConfig

__all__ = [
    "clique_complex",
    "find_disjoint_cliques",
    "find_induced_cycle",
    "induced_subcomplex",
    "is_complete_graph_complex",
    "is_exclusive_set",
    "maximal_cliques",
    "or_product",
    "product_assignment",
    "relabel",
    "skeleton",
    "validate",
    "SimplexConfig",
    "SimplexSolver",
    "lp_solve",
    "verify_certificate",
    "ce_bound",
    "ce_product_bound",
    "check_assignment",
    "e_bound",
    "find_ce_violation",
    "nchv_bound",
    "theta_matches_root",
    "theta_odd_cycle",
    "verify_bound",
    "assignment_from_behavior",
    "complete_graph_complex",
    "cycle_complex",
    "full_simplex_complex",
    "joint_scenario",
    "lo_complex",
    "no_signaling_check",
    "pr_box_behavior",
    "product_behavior",
    "support_events",
    "DotWriter",
    "DotWriterConfig",
]
