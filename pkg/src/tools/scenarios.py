# src/tools/scenarios.py
from __future__ import annotations

import itertools
import logging
import random
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.errors import PreconditionError, ScenarioError
from src.schemas import (
    Assignment,
    Behavior,
    BoxEvent,
    BoxScenario,
    SimplicialComplex,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


# -----------------------------
# Named complexes
# -----------------------------
def cycle_complex(n: int) -> SimplicialComplex:
    """Exclusive sets {i, i+1 mod n}; n=5 is the pentagon."""
    if n < 3:
        raise PreconditionError(f"a cycle needs n >= 3, got {n}")
    return SimplicialComplex.from_facets(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph_complex(n: int) -> SimplicialComplex:
    """Every pair exclusive and nothing larger; n=5 is the pentagram."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return SimplicialComplex.from_facets(n, itertools.combinations(range(n), 2))


def full_simplex_complex(n: int) -> SimplicialComplex:
    """Every subset exclusive; n=5 is the pentachoron."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return SimplicialComplex.from_facets(n, [range(n)])


# -----------------------------
# Events and labels
# -----------------------------
def _split_by_box(values: Sequence[int], boxes: Sequence[int]) -> List[Sequence[int]]:
    parts, start = [], 0
    for size in boxes:
        parts.append(values[start:start + size])
        start += size
    return parts


def format_event_label(settings: Sequence[int], outcomes: Sequence[int], scenario: BoxScenario) -> str:
    """'o,o;o,o|s,s;s,s': boxes separated by ';', parties within a box by ','."""
    def render(values: Sequence[int]) -> str:
        return ";".join(",".join(str(v) for v in part) for part in _split_by_box(values, scenario.boxes))

    return f"{render(outcomes)}|{render(settings)}"


def make_event(settings: Sequence[int], outcomes: Sequence[int], scenario: BoxScenario) -> BoxEvent:
    if not scenario.in_range(settings, outcomes):
        raise ScenarioError(f"outcomes {list(outcomes)} | settings {list(settings)} are outside the scenario")
    return BoxEvent(
        settings=tuple(settings),
        outcomes=tuple(outcomes),
        label=format_event_label(settings, outcomes, scenario),
    )


_LABEL_HALF = re.compile(r"^\d+(,\d+)*(;\d+(,\d+)*)*$")


def parse_event_label(label: str, scenario: BoxScenario) -> BoxEvent:
    """Strict inverse of format_event_label."""
    halves = label.split("|")
    if len(halves) != 2 or not all(_LABEL_HALF.match(h) for h in halves):
        raise ScenarioError(f"malformed event label {label!r}")

    def read(text: str) -> Tuple[int, ...]:
        boxes = text.split(";")
        if [len(b.split(",")) for b in boxes] != list(scenario.boxes):
            raise ScenarioError(f"event label {label!r} does not match box layout {list(scenario.boxes)}")
        return tuple(int(v) for b in boxes for v in b.split(","))

    outcomes, settings = read(halves[0]), read(halves[1])
    event = make_event(settings, outcomes, scenario)
    if event.label != label:
        raise ScenarioError(f"event label {label!r} is not canonical (expected {event.label!r})")
    return event


def scenario_events(scenario: BoxScenario) -> List[BoxEvent]:
    """Every event, ordered by settings tuple then outcome tuple."""
    return [
        make_event(settings, outcomes, scenario)
        for settings in scenario.contexts()
        for outcomes in scenario.outcome_tuples(settings)
    ]


def support_events(behavior: Behavior) -> List[BoxEvent]:
    """Events with nonzero probability, in canonical order."""
    return [
        make_event(e.settings, e.outcomes, behavior.scenario)
        for e in sorted(behavior.table, key=lambda e: (e.settings, e.outcomes))
    ]


# -----------------------------
# Behaviors
# -----------------------------
def bipartite_binary_scenario() -> BoxScenario:
    return BoxScenario(parties=2, settings_per_party=(2, 2), outcomes_per_setting=((2, 2), (2, 2)))


def pr_box_behavior() -> Behavior:
    """P(a,b|x,y) = 1/2 if a XOR b = x AND y, else 0."""
    scenario = bipartite_binary_scenario()
    table = {}
    for (x, y) in scenario.contexts():
        for (a, b) in scenario.outcome_tuples((x, y)):
            if a ^ b == x & y:
                table[((x, y), (a, b))] = HALF
    return Behavior.from_mapping(scenario, table)


def joint_scenario(s1: BoxScenario, s2: BoxScenario) -> BoxScenario:
    """Parties of s1 followed by parties of s2; box grouping is kept."""
    return BoxScenario(
        parties=s1.parties + s2.parties,
        settings_per_party=s1.settings_per_party + s2.settings_per_party,
        outcomes_per_setting=s1.outcomes_per_setting + s2.outcomes_per_setting,
        boxes=s1.boxes + s2.boxes,
    )


def product_behavior(b1: Behavior, b2: Behavior) -> Behavior:
    """Independent copies: joint entries are products of the factors' entries."""
    scenario = joint_scenario(b1.scenario, b2.scenario)
    table = {}
    for e1 in b1.table:
        for e2 in b2.table:
            table[(e1.settings + e2.settings, e1.outcomes + e2.outcomes)] = e1.p * e2.p
    return Behavior.from_mapping(scenario, table)


def deterministic_behavior(scenario: BoxScenario, strategy: Sequence[Sequence[int]]) -> Behavior:
    """Local deterministic box: party p answers strategy[p][s] to setting s."""
    if len(strategy) != scenario.parties:
        raise ScenarioError(f"strategy covers {len(strategy)} parties, scenario has {scenario.parties}")
    table = {}
    for settings in scenario.contexts():
        outcomes = tuple(strategy[p][s] for p, s in enumerate(settings))
        if not scenario.in_range(settings, outcomes):
            raise ScenarioError(f"strategy outcome {list(outcomes)} out of range for settings {list(settings)}")
        table[(settings, outcomes)] = Fraction(1)
    return Behavior.from_mapping(scenario, table)


def mix_behaviors(weighted: Iterable[Tuple[Fraction, Behavior]]) -> Behavior:
    """Convex combination; weights must be non-negative and sum to 1."""
    weighted = list(weighted)
    if not weighted:
        raise ScenarioError("cannot mix an empty list of behaviors")
    scenario = weighted[0][1].scenario
    if any(w < 0 for w, _ in weighted) or sum(w for w, _ in weighted) != 1:
        raise ScenarioError("mixture weights must be non-negative and sum to 1")
    table: Dict = {}
    for w, b in weighted:
        if b.scenario != scenario:
            raise ScenarioError("cannot mix behaviors from different scenarios")
        for e in b.table:
            key = (e.settings, e.outcomes)
            table[key] = table.get(key, Fraction(0)) + w * e.p
    return Behavior.from_mapping(scenario, table)


def random_local_behavior(scenario: BoxScenario, rng: random.Random, components: int = 3) -> Behavior:
    """Mixture of random local deterministic boxes with random rational weights."""
    raw = [rng.randint(1, 9) for _ in range(components)]
    weights = [Fraction(r, sum(raw)) for r in raw]
    boxes = []
    for w in weights:
        strategy = [
            [rng.randrange(scenario.outcomes_per_setting[p][s]) for s in range(scenario.settings_per_party[p])]
            for p in range(scenario.parties)
        ]
        boxes.append((w, deterministic_behavior(scenario, strategy)))
    return mix_behaviors(boxes)


def _marginal(behavior: Behavior, party: int, settings: Tuple[int, ...]) -> Dict[int, Fraction]:
    m: Dict[int, Fraction] = {}
    for e in behavior.table:
        if e.settings == settings:
            m[e.outcomes[party]] = m.get(e.outcomes[party], Fraction(0)) + e.p
    return m


def no_signaling_check(behavior: Behavior) -> List[str]:
    """
    One defect per (party, setting, context) whose marginal differs from the
    marginal in the first context sharing that party's setting.
    """
    scenario = behavior.scenario
    defects: List[str] = []
    for party in range(scenario.parties):
        for setting in range(scenario.settings_per_party[party]):
            contexts = [c for c in scenario.contexts() if c[party] == setting]
            reference = contexts[0]
            ref_marginal = _marginal(behavior, party, reference)
            for context in contexts[1:]:
                marginal = _marginal(behavior, party, context)
                for outcome in range(scenario.outcomes_per_setting[party][setting]):
                    p_ref = ref_marginal.get(outcome, Fraction(0))
                    p_other = marginal.get(outcome, Fraction(0))
                    if p_ref != p_other:
                        defects.append(
                            f"party {party}, setting {setting}, outcome {outcome}: "
                            f"marginal {p_ref} under settings {list(reference)} but {p_other} under settings {list(context)}"
                        )
                        break
    return defects


# -----------------------------
# Local orthogonality complexes
# -----------------------------
def locally_orthogonal(e1: BoxEvent, e2: BoxEvent) -> bool:
    """Some party uses the same setting in both events with different outcomes."""
    return any(
        s1 == s2 and o1 != o2
        for s1, s2, o1, o2 in zip(e1.settings, e2.settings, e1.outcomes, e2.outcomes)
    )


def lo_complex(scenario: BoxScenario, support: Optional[Iterable[BoxEvent]] = None) -> SimplicialComplex:
    """
    Exclusivity derived from no-signaling. Facets: every locally orthogonal
    pair, plus for each context the set of its outcome events. No larger
    joint facets are added.
    """
    events = scenario_events(scenario) if support is None else list(support)
    for e in events:
        if not scenario.in_range(e.settings, e.outcomes):
            raise ScenarioError(f"event {e.label!r} is outside the scenario")
    events = sorted({(e.settings, e.outcomes): e for e in events}.values(), key=lambda e: (e.settings, e.outcomes))

    facets: List[List[int]] = []
    by_context: Dict[Tuple[int, ...], List[int]] = {}
    for i, e in enumerate(events):
        by_context.setdefault(e.settings, []).append(i)
    facets.extend(by_context.values())
    for i, j in itertools.combinations(range(len(events)), 2):
        if events[i].settings != events[j].settings and locally_orthogonal(events[i], events[j]):
            facets.append([i, j])

    complex_ = SimplicialComplex.from_facets(len(events), facets, [e.label for e in events])
    logger.debug("lo_complex: %d events, %d facets", complex_.n_vertices, len(complex_.facets))
    return complex_


def assignment_from_behavior(complex_: SimplicialComplex, behavior: Behavior) -> Assignment:
    """P(vertex) = probability of the event named by the vertex label."""
    if complex_.labels is None:
        raise ScenarioError("complex has no event labels to resolve")
    table = behavior.as_mapping()
    values = []
    for label in complex_.labels:
        event = parse_event_label(label, behavior.scenario)
        values.append(table.get((event.settings, event.outcomes), Fraction(0)))
    return Assignment(values=tuple(values))
