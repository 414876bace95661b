# src/tools/lp_solver.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.errors import InfeasibleError, LPError, UnboundedError
from src.schemas import LPProblem, LPSolution, to_fraction

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SimplexConfig:
    max_pivots: int = 200_000


class SimplexSolver:
    """
    Dense-tableau two-phase primal simplex over exact rationals.

    - Bland's rule for both entering and leaving variables (no cycling on
      the heavily degenerate packing LPs).
    - Upper bounds are handled as ordinary rows so every bound gets its own
      dual multiplier.
    - Dual multipliers are read off the final objective row under each
      slack column.
    """

    def __init__(self, config: Optional[SimplexConfig] = None) -> None:
        self.config = config or SimplexConfig()

    # -----------------------------
    # Public API
    # -----------------------------
    def solve(self, problem: LPProblem) -> LPSolution:
        n = len(problem.objective)
        bounded = [j for j in range(n) if problem.upper_bound(j) is not None]

        rows: List[List[Fraction]] = [list(r) for r in problem.rows]
        rhs: List[Fraction] = list(problem.rhs)
        for j in bounded:
            unit = [ZERO] * n
            unit[j] = ONE
            rows.append(unit)
            rhs.append(problem.upper_bound(j))

        n_rows = len(rows)
        negated = [b < 0 for b in rhs]
        n_art = sum(negated)
        width = n + n_rows + n_art  # rhs lives at index `width`

        tableau: List[List[Fraction]] = []
        basis: List[int] = []
        art = n + n_rows
        for r in range(n_rows):
            sign = -ONE if negated[r] else ONE
            line = [sign * a for a in rows[r]] + [ZERO] * (n_rows + n_art) + [sign * rhs[r]]
            line[n + r] = sign
            if negated[r]:
                line[art] = ONE
                basis.append(art)
                art += 1
            else:
                basis.append(n + r)
            tableau.append(line)

        pivots = 0
        blocked = set()

        if n_art:
            # Phase 1: maximize -sum(artificials)
            z = [ZERO] * (width + 1)
            for k in range(n + n_rows, width):
                z[k] = ONE
            for r, bv in enumerate(basis):
                if bv >= n + n_rows:
                    z = [zk - tk for zk, tk in zip(z, tableau[r])]
            pivots += self._iterate(tableau, basis, z, blocked)
            if z[width] < 0:
                raise InfeasibleError("linear program is infeasible")

            for r, bv in enumerate(basis):
                if bv < n + n_rows:
                    continue
                column = next((k for k in range(n + n_rows) if tableau[r][k] != 0), None)
                if column is not None:
                    self._pivot(tableau, basis, z, r, column)
                    pivots += 1
            blocked = set(range(n + n_rows, width))

        # Phase 2
        z = [ZERO] * (width + 1)
        for j in range(n):
            z[j] = -problem.objective[j]
        for r, bv in enumerate(basis):
            cost = problem.objective[bv] if bv < n else ZERO
            if cost:
                z = [zk + cost * tk for zk, tk in zip(z, tableau[r])]
        pivots += self._iterate(tableau, basis, z, blocked)

        primal = [ZERO] * n
        for r, bv in enumerate(basis):
            if bv < n:
                primal[bv] = tableau[r][width]

        y = [z[n + r] for r in range(n_rows)]
        m = len(problem.rows)
        bound_duals = [ZERO] * n
        for k, j in enumerate(bounded):
            bound_duals[j] = y[m + k]

        logger.debug("simplex: %d variables, %d rows, %d pivots, value %s", n, n_rows, pivots, z[width])
        return LPSolution(
            value=z[width],
            primal=tuple(primal),
            duals=tuple(y[:m]),
            bound_duals=tuple(bound_duals),
            pivots=pivots,
        )

    # -----------------------------
    # Internal: pivoting
    # -----------------------------
    def _iterate(self, tableau: List[List[Fraction]], basis: List[int], z: List[Fraction], blocked: set) -> int:
        width = len(z) - 1
        pivots = 0
        while True:
            entering = next((k for k in range(width) if z[k] < 0 and k not in blocked), None)
            if entering is None:
                return pivots

            leaving: Optional[int] = None
            best: Optional[Tuple[Fraction, int]] = None
            for r, line in enumerate(tableau):
                a = line[entering]
                if a > 0:
                    key = (line[width] / a, basis[r])
                    if best is None or key < best:
                        best, leaving = key, r
            if leaving is None:
                raise UnboundedError("linear program is unbounded")

            self._pivot(tableau, basis, z, leaving, entering)
            pivots += 1
            if pivots > self.config.max_pivots:
                raise LPError(f"simplex exceeded {self.config.max_pivots} pivots")

    @staticmethod
    def _pivot(tableau: List[List[Fraction]], basis: List[int], z: List[Fraction], r: int, k: int) -> None:
        line = tableau[r]
        piv = line[k]
        if piv != 1:
            line[:] = [v / piv for v in line]
        support = [j for j, v in enumerate(line) if v]

        for other in tableau:
            if other is line:
                continue
            f = other[k]
            if f:
                for j in support:
                    other[j] -= f * line[j]
        f = z[k]
        if f:
            for j in support:
                z[j] -= f * line[j]
        basis[r] = k


def lp_solve(
    objective: Sequence,
    constraints: Sequence[Tuple[Sequence, object]],
    upper: Optional[Sequence[Optional[object]]] = None,
    config: Optional[SimplexConfig] = None,
) -> LPSolution:
    """
    maximize objective·w subject to row·w <= rhs for each (row, rhs) and
    0 <= w_j <= upper[j] (upper defaults to 1 for every variable; None drops a bound).
    """
    n = len(objective)
    problem = LPProblem(
        objective=tuple(to_fraction(c) for c in objective),
        rows=tuple(tuple(to_fraction(a) for a in row) for row, _ in constraints),
        rhs=tuple(to_fraction(b) for _, b in constraints),
        upper=tuple(ONE for _ in range(n)) if upper is None else tuple(upper),
    )
    return SimplexSolver(config).solve(problem)


def verify_certificate(problem: LPProblem, solution: LPSolution) -> List[str]:
    """
    Re-check an optimum without the solver: primal feasibility, dual
    feasibility (y >= 0, yA + bound duals >= c) and equal objectives.
    Returns the defects found; empty means the certificate proves optimality.
    """
    defects: List[str] = []
    n = len(problem.objective)
    x, y, yb = solution.primal, solution.duals, solution.bound_duals

    if len(x) != n or len(yb) != n or len(y) != len(problem.rows):
        return [f"certificate shape mismatch: {len(x)} primal, {len(y)} duals, {len(yb)} bound duals"]

    for j in range(n):
        if x[j] < 0:
            defects.append(f"w[{j}]={x[j]} is negative")
        ub = problem.upper_bound(j)
        if ub is not None and x[j] > ub:
            defects.append(f"w[{j}]={x[j]} exceeds its upper bound {ub}")
    for r, (row, b) in enumerate(zip(problem.rows, problem.rhs)):
        lhs = sum((a * v for a, v in zip(row, x)), ZERO)
        if lhs > b:
            defects.append(f"row {r}: {lhs} > {b}")
    primal_value = sum((c * v for c, v in zip(problem.objective, x)), ZERO)
    if primal_value != solution.value:
        defects.append(f"primal objective {primal_value} != reported value {solution.value}")

    for r, v in enumerate(y):
        if v < 0:
            defects.append(f"dual[{r}]={v} is negative")
    for j in range(n):
        if yb[j] < 0:
            defects.append(f"bound dual[{j}]={yb[j]} is negative")
        if problem.upper_bound(j) is None and yb[j] != 0:
            defects.append(f"bound dual[{j}]={yb[j]} on an unbounded variable")
        reduced = sum((y[r] * problem.rows[r][j] for r in range(len(y))), ZERO) + yb[j]
        if reduced < problem.objective[j]:
            defects.append(f"dual constraint {j}: {reduced} < {problem.objective[j]}")
    dual_value = sum((v * b for v, b in zip(y, problem.rhs)), ZERO)
    dual_value += sum((yb[j] * problem.upper_bound(j) for j in range(n) if problem.upper_bound(j) is not None), ZERO)
    if dual_value != solution.value:
        defects.append(f"dual objective {dual_value} != primal value {solution.value}")

    return defects
