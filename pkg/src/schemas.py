# src/schemas.py
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Annotated, Any, Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import mpmath
import sympy
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator


# -------------------------
# Exact rationals
# -------------------------
def to_fraction(value: Any) -> Fraction:
    """
    Coerce ints, Fractions, "p/q" strings and {"num": ..., "den": ...} dicts.
    Floats are rejected: every probability in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        try:
            return Fraction(int(value["num"]), int(value["den"]))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"not a rational: {value!r}")


Rational = Annotated[Fraction, BeforeValidator(to_fraction)]
VertexSet = Tuple[int, ...]


def significant_digits(expr: Any, digits: int) -> str:
    """`expr` rounded once to `digits` significant digits, trailing zeros kept."""
    guarded = sympy.N(expr, digits + 10)
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(mpmath.mpf(str(guarded)), digits, strip_zeros=False)


def canonical_sets(sets: Iterable[Iterable[int]]) -> List[VertexSet]:
    """Sort each set ascending, drop duplicates, order the family lexicographically."""
    return sorted({tuple(sorted(set(s))) for s in sets})


def antichain(sets: Iterable[Iterable[int]]) -> List[VertexSet]:
    """
    Keep only the maximal sets of a family (no kept set is a subset of another),
    returned in canonical order.
    """
    candidates = sorted(
        {frozenset(s) for s in sets if s},
        key=lambda s: (-len(s), sorted(s)),
    )
    kept: List[frozenset] = []
    containing: Dict[int, set] = {}

    for s in candidates:
        it = iter(s)
        first = next(it)
        pool = set(containing.get(first, ()))
        for v in it:
            if not pool:
                break
            pool &= containing.get(v, set())
        if pool:
            continue
        idx = len(kept)
        kept.append(s)
        for v in s:
            containing.setdefault(v, set()).add(idx)

    return sorted(tuple(sorted(s)) for s in kept)


# -------------------------
# Complexes
# -------------------------
class SimplicialComplex(BaseModel):
    """
    Exclusivity structure Γ = {V, Θ} stored by its facets (maximal simplices).

    Θ is implicit: a set S of two or more vertices is exclusive iff S is
    contained in some facet. Isolated vertices are stored as singleton facets.
    Construct through `from_facets` to get a canonical value; plain
    validation keeps whatever was supplied so `validate` can report defects.
    """
    model_config = ConfigDict(frozen=True)

    n_vertices: int = Field(..., ge=0, description="Vertices are 0..n_vertices-1")
    facets: Tuple[VertexSet, ...] = Field(default_factory=tuple, description="Maximal simplices")
    labels: Optional[Tuple[str, ...]] = Field(None, description="Optional per-vertex event names")

    @classmethod
    def from_facets(
        cls,
        n_vertices: int,
        facets: Iterable[Iterable[int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "SimplicialComplex":
        reduced = antichain(facets)
        covered = {v for f in reduced for v in f}
        reduced.extend((v,) for v in range(n_vertices) if v not in covered)
        return cls(
            n_vertices=n_vertices,
            facets=tuple(sorted(reduced)),
            labels=tuple(labels) if labels is not None else None,
        )

    def label(self, vertex: int) -> str:
        if self.labels is not None:
            return self.labels[vertex]
        return str(vertex)


# -------------------------
# Assignments and bounds
# -------------------------
BoundClass = Literal["E", "CE", "NCHV"]
AssignmentClass = Literal["E", "CE"]


class Assignment(BaseModel):
    """The map P: V -> [0, 1], one exact probability per vertex."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[Rational, ...] = Field(default_factory=tuple)

    @field_validator("values")
    @classmethod
    def _in_unit_interval(cls, values: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
        for i, v in enumerate(values):
            if v < 0 or v > 1:
                raise ValueError(f"values[{i}]={v} is outside [0, 1]")
        return values

    @classmethod
    def uniform(cls, n: int, p: Union[Fraction, int, str]) -> "Assignment":
        return cls(values=tuple(to_fraction(p) for _ in range(n)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, vertex: int) -> Fraction:
        return self.values[vertex]

    def total(self, vertices: Optional[Iterable[int]] = None) -> Fraction:
        if vertices is None:
            return sum(self.values, Fraction(0))
        return sum((self.values[v] for v in vertices), Fraction(0))


class Violation(BaseModel):
    """A clique whose probabilities sum past 1."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    clique: VertexSet
    total: Rational


class BoundResult(BaseModel):
    """
    Optimum of S = Σ P(i) over one model class, with the assignment attaining
    it. For LP bounds, `certificate` holds one dual multiplier per row of
    `facets` and `bound_certificate` one per vertex upper bound.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    bound_class: BoundClass
    value: Rational
    witness: Assignment
    facets: Tuple[VertexSet, ...] = Field(default_factory=tuple, description="LP constraint rows")
    certificate: Tuple[Rational, ...] = Field(default_factory=tuple)
    bound_certificate: Tuple[Rational, ...] = Field(default_factory=tuple)


class RootValue(BaseModel):
    """
    base^(1/root) kept symbolically. Comparisons against rationals go
    through root-th powers, never through decimals.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: Rational
    root: int = Field(1, ge=1)

    @field_validator("base")
    @classmethod
    def _non_negative(cls, base: Fraction) -> Fraction:
        if base < 0:
            raise ValueError("base must be >= 0")
        return base

    def compare(self, other: Union[Fraction, int]) -> int:
        """-1, 0 or 1 as this value is below, equal to or above `other`."""
        other = Fraction(other)
        if other < 0:
            return 1
        target = other ** self.root
        return (self.base > target) - (self.base < target)

    def equals(self, other: Union[Fraction, int]) -> bool:
        return self.compare(other) == 0

    def as_rational(self) -> Optional[Fraction]:
        """The exact value when base is a perfect root-th power of a rational."""
        num, num_exact = sympy.integer_nthroot(self.base.numerator, self.root)
        den, den_exact = sympy.integer_nthroot(self.base.denominator, self.root)
        if num_exact and den_exact:
            return Fraction(int(num), int(den))
        return None

    def to_decimal(self, digits: int = 30) -> str:
        expr = sympy.Rational(self.base.numerator, self.base.denominator) ** sympy.Rational(1, self.root)
        return significant_digits(expr, digits)

    def __str__(self) -> str:
        if self.root == 1:
            return str(self.base)
        return f"{self.root}-th root of {self.base}"


class ThetaValue(BaseModel):
    """Lovász number of an odd cycle rendered to `digits` significant digits."""
    model_config = ConfigDict(frozen=True)

    n: int
    digits: int
    decimal: str


# -------------------------
# Linear programs
# -------------------------
class LPProblem(BaseModel):
    """
    maximize objective·w  s.t.  rows[r]·w <= rhs[r],  0 <= w_j <= upper[j]
    (upper[j] None means no upper bound).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    objective: Tuple[Rational, ...]
    rows: Tuple[Tuple[Rational, ...], ...] = Field(default_factory=tuple)
    rhs: Tuple[Rational, ...] = Field(default_factory=tuple)
    upper: Tuple[Optional[Rational], ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def _shapes(self) -> "LPProblem":
        n = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise ValueError(f"{len(self.rows)} rows but {len(self.rhs)} right-hand sides")
        for r, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError(f"row {r} has {len(row)} coefficients, expected {n}")
        if self.upper and len(self.upper) != n:
            raise ValueError(f"{len(self.upper)} upper bounds, expected {n}")
        return self

    def upper_bound(self, j: int) -> Optional[Fraction]:
        return self.upper[j] if self.upper else None


class LPSolution(BaseModel):
    """Optimum with primal point and dual multipliers (rows, then upper bounds)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Rational
    primal: Tuple[Rational, ...]
    duals: Tuple[Rational, ...]
    bound_duals: Tuple[Rational, ...]
    pivots: int = 0


# -------------------------
# Bell-box scenarios
# -------------------------
class BoxScenario(BaseModel):
    """
    Parties, their settings and the outcome count of each (party, setting).
    `boxes` groups consecutive parties into boxes for event labels; a single
    scenario is one box holding every party.
    """
    model_config = ConfigDict(frozen=True)

    parties: int = Field(..., ge=1)
    settings_per_party: Tuple[int, ...]
    outcomes_per_setting: Tuple[Tuple[int, ...], ...]
    boxes: Tuple[int, ...] = Field(default_factory=tuple)

    @model_validator(mode="before")
    @classmethod
    def _default_boxes(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("boxes"):
            data = dict(data)
            data["boxes"] = (data.get("parties"),)
        return data

    @model_validator(mode="after")
    def _counts(self) -> "BoxScenario":
        if len(self.settings_per_party) != self.parties:
            raise ValueError("settings_per_party must have one entry per party")
        if len(self.outcomes_per_setting) != self.parties:
            raise ValueError("outcomes_per_setting must have one entry per party")
        for p, (n_settings, outcomes) in enumerate(zip(self.settings_per_party, self.outcomes_per_setting)):
            if n_settings < 1:
                raise ValueError(f"party {p} has no settings")
            if len(outcomes) != n_settings:
                raise ValueError(f"party {p}: {len(outcomes)} outcome counts for {n_settings} settings")
            if any(o < 1 for o in outcomes):
                raise ValueError(f"party {p} has a setting with no outcomes")
        if any(b < 1 for b in self.boxes) or sum(self.boxes) != self.parties:
            raise ValueError(f"boxes {list(self.boxes)} do not partition {self.parties} parties")
        return self

    def contexts(self) -> List[Tuple[int, ...]]:
        """Every full settings tuple, lexicographic."""
        return list(itertools.product(*(range(s) for s in self.settings_per_party)))

    def outcome_tuples(self, settings: Sequence[int]) -> List[Tuple[int, ...]]:
        return list(
            itertools.product(*(range(self.outcomes_per_setting[p][s]) for p, s in enumerate(settings)))
        )

    def in_range(self, settings: Sequence[int], outcomes: Sequence[int]) -> bool:
        if len(settings) != self.parties or len(outcomes) != self.parties:
            return False
        for p, (s, o) in enumerate(zip(settings, outcomes)):
            if not 0 <= s < self.settings_per_party[p]:
                return False
            if not 0 <= o < self.outcomes_per_setting[p][s]:
                return False
        return True


class BoxEvent(BaseModel):
    """One joint setting/outcome specification: a vertex of a box complex."""
    model_config = ConfigDict(frozen=True)

    settings: Tuple[int, ...]
    outcomes: Tuple[int, ...]
    label: str


class BehaviorEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    settings: Tuple[int, ...]
    outcomes: Tuple[int, ...]
    p: Rational


class Behavior(BaseModel):
    """
    P(outcomes | settings) as an exact table. Only nonzero entries are stored;
    every context must sum to exactly 1.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scenario: BoxScenario
    table: Tuple[BehaviorEntry, ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def _normalized(self) -> "Behavior":
        sums: Dict[Tuple[int, ...], Fraction] = {}
        seen = set()
        for e in self.table:
            key = (e.settings, e.outcomes)
            if key in seen:
                raise ValueError(f"duplicate entry for outcomes {list(e.outcomes)} | settings {list(e.settings)}")
            seen.add(key)
            if not self.scenario.in_range(e.settings, e.outcomes):
                raise ValueError(f"entry outside scenario: outcomes {list(e.outcomes)} | settings {list(e.settings)}")
            if e.p < 0 or e.p > 1:
                raise ValueError(f"probability {e.p} outside [0, 1]")
            sums[e.settings] = sums.get(e.settings, Fraction(0)) + e.p
        for context in self.scenario.contexts():
            total = sums.get(context, Fraction(0))
            if total != 1:
                raise ValueError(f"context settings {list(context)} sums to {total}, expected 1")
        return self

    @classmethod
    def from_mapping(
        cls,
        scenario: BoxScenario,
        mapping: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction],
    ) -> "Behavior":
        entries = [
            BehaviorEntry(settings=s, outcomes=o, p=p)
            for (s, o), p in sorted(mapping.items())
            if p != 0
        ]
        return cls(scenario=scenario, table=tuple(entries))

    def as_mapping(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
        return {(e.settings, e.outcomes): e.p for e in self.table}

    def probability(self, settings: Sequence[int], outcomes: Sequence[int]) -> Fraction:
        key = (tuple(settings), tuple(outcomes))
        for e in self.table:
            if (e.settings, e.outcomes) == key:
                return e.p
        return Fraction(0)


# -------------------------
# Reproduction report
# -------------------------
class ClaimResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    claim_id: str
    description: str
    expected: str
    computed: str
    passed: bool


class PaperCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    claims: Tuple[ClaimResult, ...] = Field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return bool(self.claims) and all(c.passed for c in self.claims)

    def failures(self) -> List[ClaimResult]:
        return [c for c in self.claims if not c.passed]
