# src/tools/bounds.py
from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional

import networkx as nx
import sympy

from src.errors import PreconditionError
from src.schemas import (
    Assignment,
    AssignmentClass,
    BoundResult,
    LPProblem,
    LPSolution,
    RootValue,
    SimplicialComplex,
    ThetaValue,
    Violation,
    significant_digits,
)
from src.tools.complex_core import clique_complex, maximal_cliques, or_product, skeleton
from src.tools.lp_solver import SimplexConfig, SimplexSolver, verify_certificate

logger = logging.getLogger(__name__)


# -----------------------------
# E: fractional packing LP
# -----------------------------
def packing_problem(complex_: SimplicialComplex) -> LPProblem:
    """max Σ w_i  s.t.  Σ_{i∈F} w_i <= 1 for every facet F,  0 <= w_i <= 1."""
    n = complex_.n_vertices
    rows = []
    for f in complex_.facets:
        members = set(f)
        rows.append(tuple(Fraction(1) if v in members else Fraction(0) for v in range(n)))
    return LPProblem(
        objective=tuple(Fraction(1) for _ in range(n)),
        rows=tuple(rows),
        rhs=tuple(Fraction(1) for _ in rows),
        upper=tuple(Fraction(1) for _ in range(n)),
    )


def e_bound(complex_: SimplicialComplex, config: Optional[SimplexConfig] = None) -> BoundResult:
    """
    Maximum of S over class E: the fractional packing number of the complex.
    The facet constraints dominate every other exclusive-set constraint.
    """
    problem = packing_problem(complex_)
    solution = SimplexSolver(config).solve(problem)
    return BoundResult(
        bound_class="E",
        value=solution.value,
        witness=Assignment(values=solution.primal),
        facets=complex_.facets,
        certificate=solution.duals,
        bound_certificate=solution.bound_duals,
    )


def verify_bound(result: BoundResult) -> List[str]:
    """Re-check an LP bound's witness and dual certificate in exact arithmetic."""
    if result.bound_class == "NCHV":
        return ["NCHV bounds carry no LP certificate"]
    complex_ = SimplicialComplex(n_vertices=len(result.witness), facets=result.facets)
    solution = LPSolution(
        value=result.value,
        primal=result.witness.values,
        duals=result.certificate,
        bound_duals=result.bound_certificate,
    )
    return verify_certificate(packing_problem(complex_), solution)


def ce_bound(complex_: SimplicialComplex, config: Optional[SimplexConfig] = None) -> BoundResult:
    """Maximum of S under Consistent Exclusivity: E applied to the clique complex."""
    result = e_bound(clique_complex(complex_), config)
    return result.model_copy(update={"bound_class": "CE"})


def ce_product_bound(complex_: SimplicialComplex, copies: int, config: Optional[SimplexConfig] = None) -> RootValue:
    """
    (E bound of the clique complex of the k-fold OR product)^(1/k).

    This bounds S for one copy only under the product premise: the k copies
    are independent, so every joint event's probability is the product of
    the single-copy probabilities and the joint assignment must obey CE on
    the joint complex. Without that premise the number is just an LP value.
    """
    if copies < 1:
        raise PreconditionError(f"copies must be >= 1, got {copies}")
    joint = complex_
    for _ in range(copies - 1):
        joint = or_product(joint, complex_)
    value = e_bound(clique_complex(joint), config).value
    logger.debug("CE product bound: %d copies, %d joint vertices, LP value %s", copies, joint.n_vertices, value)
    return RootValue(base=value, root=copies)


# -----------------------------
# NCHV: independence number
# -----------------------------
def nchv_bound(complex_: SimplicialComplex) -> BoundResult:
    """
    Maximum of S over noncontextual hidden-variable models. The optimum sits
    at a deterministic assignment, i.e. a maximum independent set of the
    skeleton, found by exact branch and bound on the complement graph.
    """
    complement = nx.complement(skeleton(complex_))
    members, size = nx.max_weight_clique(complement, weight=None)
    chosen = set(members)
    witness = Assignment(
        values=tuple(Fraction(1) if v in chosen else Fraction(0) for v in range(complex_.n_vertices))
    )
    return BoundResult(bound_class="NCHV", value=Fraction(size), witness=witness)


# -----------------------------
# Assignment checks
# -----------------------------
def check_assignment(complex_: SimplicialComplex, assignment: Assignment, model_class: AssignmentClass) -> List[Violation]:
    """
    Sets whose probabilities sum past 1: facets for class E, maximal cliques
    for class CE. An empty list means the assignment is in the class.
    """
    if len(assignment) != complex_.n_vertices:
        raise PreconditionError(
            f"assignment has {len(assignment)} values for a complex on {complex_.n_vertices} vertices"
        )
    if model_class == "E":
        candidates = list(complex_.facets)
    elif model_class == "CE":
        candidates = maximal_cliques(complex_)
    else:
        raise PreconditionError(f"unknown model class {model_class!r}")

    violations = []
    for c in candidates:
        total = assignment.total(c)
        if total > 1:
            violations.append(Violation(clique=tuple(c), total=total))
    return violations


def find_ce_violation(complex_: SimplicialComplex, assignment: Assignment) -> Optional[Violation]:
    """
    The maximal clique with the largest probability sum above 1, or None.
    The assignment must already satisfy E. Among equal sums the clique least
    covered by a single facet is preferred, then the first in canonical order.
    """
    breaches = check_assignment(complex_, assignment, "E")
    if breaches:
        worst = breaches[0]
        raise PreconditionError(
            f"assignment violates E on facet {list(worst.clique)} (sum {worst.total}); CE search needs an E assignment"
        )

    facet_sets = [set(f) for f in complex_.facets]

    def overlap(clique) -> int:
        return max((len(f.intersection(clique)) for f in facet_sets), default=0)

    best: Optional[Violation] = None
    best_key = None
    for c in maximal_cliques(complex_):
        total = assignment.total(c)
        if total <= 1:
            continue
        key = (-total, overlap(c), c)
        if best_key is None or key < best_key:
            best_key, best = key, Violation(clique=c, total=total)
    return best


# -----------------------------
# Quantum reference value
# -----------------------------
def theta_expr(n: int) -> sympy.Expr:
    """Closed form of the Lovász number of the odd n-cycle."""
    if n < 3 or n % 2 == 0:
        raise PreconditionError(f"theta_odd_cycle needs an odd n >= 3, got {n}")
    c = sympy.cos(sympy.pi / n)
    return n * c / (1 + c)


def theta_odd_cycle(n: int, digits: int = 30) -> ThetaValue:
    """n·cos(π/n)/(1+cos(π/n)) to `digits` significant digits."""
    expr = theta_expr(n)
    return ThetaValue(n=n, digits=digits, decimal=significant_digits(expr, digits))


def theta_matches_root(n: int, root: RootValue) -> bool:
    """Exact symbolic test that theta(C_n)^k equals the root value's base."""
    base = sympy.Rational(root.base.numerator, root.base.denominator)
    return sympy.simplify(theta_expr(n) ** root.root - base) == 0
