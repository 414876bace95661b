from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence

import pytest

from src.schemas import SimplicialComplex
from src.tools import (
    ce_bound,
    ce_product_bound,
    clique_complex,
    complete_graph_complex,
    cycle_complex,
    e_bound,
    full_simplex_complex,
    nchv_bound,
    skeleton,
    verify_bound,
)


def _solve(matrix: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Gauss-Jordan on a square system; None when singular."""
    n = len(matrix)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def brute_force_packing(complex_: SimplicialComplex) -> Fraction:
    """
    max Σ w over {w >= 0, Σ_F w <= 1 per facet, w_i <= 1}, by enumerating
    every vertex of the polytope: pick the support S, then every choice of
    |S| tight constraints restricted to S.
    """
    n = complex_.n_vertices
    constraints: List[FrozenSet[int]] = [frozenset(f) for f in complex_.facets if len(f) >= 2]
    covered = set().union(*constraints) if constraints else set()
    constraints += [frozenset({v}) for v in range(n) if v not in covered]

    best = Fraction(0)
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            s = set(support)
            restricted = sorted({c & s for c in constraints if c & s}, key=sorted)
            for tight in itertools.combinations(restricted, size):
                matrix = [[Fraction(1) if v in c else Fraction(0) for v in support] for c in tight]
                w = _solve(matrix, [Fraction(1)] * size)
                if w is None or any(x < 0 for x in w):
                    continue
                weights = dict(zip(support, w))
                if all(sum((weights.get(v, 0) for v in c), Fraction(0)) <= 1 for c in constraints):
                    best = max(best, sum(w, Fraction(0)))
    return best


def brute_force_independence(complex_: SimplicialComplex) -> int:
    g = skeleton(complex_)
    n = complex_.n_vertices
    best = 0
    for mask in range(1 << n):
        chosen = [v for v in range(n) if mask >> v & 1]
        if len(chosen) > best and not any(g.has_edge(u, v) for u, v in itertools.combinations(chosen, 2)):
            best = len(chosen)
    return best


def _random_families(count: int, seed: int) -> List[SimplicialComplex]:
    rng = random.Random(seed)
    families = []
    for _ in range(count):
        n = rng.randint(1, 6)
        facets = [rng.sample(range(n), rng.randint(1, n)) for _ in range(rng.randint(1, 4))]
        families.append(SimplicialComplex.from_facets(n, facets))
    return families


NAMED: List[SimplicialComplex] = (
    [cycle_complex(n) for n in range(3, 7)]
    + [complete_graph_complex(n) for n in range(1, 7)]
    + [full_simplex_complex(n) for n in range(1, 7)]
)
ORACLE_SUITE: Sequence[SimplicialComplex] = NAMED + _random_families(100, seed=20130)


def _ids(suite: Sequence[SimplicialComplex]) -> List[str]:
    return [f"n{c.n_vertices}-{'-'.join(''.join(map(str, f)) for f in c.facets)}" for c in suite]


class TestOracles:
    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_e_bound_matches_vertex_enumeration(self, complex_) -> None:
        result = e_bound(complex_)
        assert result.value == brute_force_packing(complex_)
        assert verify_bound(result) == []

    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_ce_bound_matches_vertex_enumeration(self, complex_) -> None:
        result = ce_bound(complex_)
        assert result.value == brute_force_packing(clique_complex(complex_))
        assert verify_bound(result) == []

    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_nchv_matches_subset_search(self, complex_) -> None:
        assert nchv_bound(complex_).value == brute_force_independence(complex_)

    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_bound_ordering(self, complex_) -> None:
        nchv, ce, e = nchv_bound(complex_).value, ce_bound(complex_).value, e_bound(complex_).value
        assert nchv <= ce <= e


def _with_extra_pair(complex_: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex.from_facets(complex_.n_vertices, list(complex_.facets) + [(0, complex_.n_vertices - 1)])


WITH_PAIRS = [c for c in ORACLE_SUITE if c.n_vertices >= 2]


class TestStructuralInvariants:
    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_clique_complex_keeps_the_skeleton(self, complex_) -> None:
        closure = clique_complex(complex_)
        assert {frozenset(e) for e in skeleton(closure).edges} == {frozenset(e) for e in skeleton(complex_).edges}
        assert all(any(set(f) <= set(g) for g in closure.facets) for f in complex_.facets)

    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_clique_complex_never_raises_e(self, complex_) -> None:
        assert e_bound(clique_complex(complex_)).value <= e_bound(complex_).value

    @pytest.mark.parametrize("complex_", WITH_PAIRS, ids=_ids(WITH_PAIRS))
    def test_extra_exclusive_pair_never_raises_e(self, complex_) -> None:
        assert e_bound(_with_extra_pair(complex_)).value <= e_bound(complex_).value

    @pytest.mark.parametrize("complex_", ORACLE_SUITE, ids=_ids(ORACLE_SUITE))
    def test_one_copy_product_bound_is_ce(self, complex_) -> None:
        root = ce_product_bound(complex_, 1)
        assert root.root == 1
        assert root.base == ce_bound(complex_).value


class TestOracleHelpers:
    def test_packing_oracle_on_known_values(self) -> None:
        assert brute_force_packing(cycle_complex(5)) == Fraction(5, 2)
        assert brute_force_packing(full_simplex_complex(4)) == 1
        assert brute_force_packing(SimplicialComplex.from_facets(3, [[0, 1]])) == 2

    def test_independence_oracle_on_known_values(self) -> None:
        assert brute_force_independence(cycle_complex(5)) == 2
        assert brute_force_independence(complete_graph_complex(4)) == 1
