# src/tools/store.py
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from src.errors import ExlabError
from src.schemas import (
    Assignment,
    Behavior,
    BehaviorEntry,
    BoundResult,
    BoxScenario,
    RootValue,
    SimplicialComplex,
    Violation,
    to_fraction,
)
from src.tools.scenarios import (
    complete_graph_complex,
    cycle_complex,
    full_simplex_complex,
    lo_complex,
    pr_box_behavior,
    product_behavior,
    support_events,
)

BUILTIN_COMPLEXES = ("pentagon", "pentagram", "pentachoron", "cycle:n", "complete:n", "simplex:n", "prbox", "prbox2")


# -----------------------------
# JSON encoding
# -----------------------------
def rational_to_json(q: Fraction) -> Dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def complex_to_json(complex_: SimplicialComplex) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "n_vertices": complex_.n_vertices,
        "facets": [list(f) for f in complex_.facets],
    }
    if complex_.labels is not None:
        data["labels"] = list(complex_.labels)
    return data


def behavior_to_json(behavior: Behavior) -> Dict[str, Any]:
    s = behavior.scenario
    return {
        "parties": s.parties,
        "settings": list(s.settings_per_party),
        "outcomes": [list(o) for o in s.outcomes_per_setting],
        "boxes": list(s.boxes),
        "table": [
            {"settings": list(e.settings), "outcomes": list(e.outcomes), "p": f"{e.p.numerator}/{e.p.denominator}"}
            for e in sorted(behavior.table, key=lambda e: (e.settings, e.outcomes))
        ],
    }


def root_to_json(value: RootValue) -> Dict[str, Any]:
    return {"base": rational_to_json(value.base), "root": value.root}


def bound_to_json(result: Union[BoundResult, RootValue], copies: Optional[int] = None) -> Dict[str, Any]:
    """{"class", "value", "witness", "certificate"}; CEk results carry a root value."""
    if isinstance(result, RootValue):
        return {
            "class": "CEk",
            "copies": copies if copies is not None else result.root,
            "value": root_to_json(result),
            "witness": [],
            "certificate": [],
        }
    return {
        "class": result.bound_class,
        "value": rational_to_json(result.value),
        "witness": [rational_to_json(v) for v in result.witness.values],
        "certificate": [rational_to_json(v) for v in result.certificate],
        "bound_certificate": [rational_to_json(v) for v in result.bound_certificate],
    }


def violation_to_json(violation: Violation, complex_: Optional[SimplicialComplex] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {"clique": list(violation.clique), "total": rational_to_json(violation.total)}
    if complex_ is not None and complex_.labels is not None:
        data["labels"] = [complex_.labels[v] for v in violation.clique]
    return data


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# -----------------------------
# Loading / saving
# -----------------------------
def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ExlabError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ExlabError(f"malformed JSON in {path.name}: {e.msg} (line {e.lineno})") from e


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    where = ".".join(str(p) for p in err.get("loc", ())) or "<root>"
    return f"field '{where}': {err.get('msg')}"


def complex_from_json(raw: Any, source: str = "<input>") -> SimplicialComplex:
    try:
        return SimplicialComplex.model_validate(raw)
    except ValidationError as e:
        raise ExlabError(f"invalid complex in {source}: {_first_error(e)}") from e


def behavior_from_json(raw: Any, source: str = "<input>") -> Behavior:
    if not isinstance(raw, dict):
        raise ExlabError(f"invalid behavior in {source}: expected a JSON object")
    try:
        scenario = BoxScenario(
            parties=raw.get("parties"),
            settings_per_party=raw.get("settings"),
            outcomes_per_setting=raw.get("outcomes"),
            boxes=raw.get("boxes") or (),
        )
        rows = raw.get("table", [])
        if not isinstance(rows, list):
            raise ExlabError(f"invalid behavior in {source}: field 'table' must be a list")
        entries = tuple(
            BehaviorEntry(settings=row.get("settings"), outcomes=row.get("outcomes"), p=row.get("p"))
            for row in rows
        )
        return Behavior(scenario=scenario, table=tuple(e for e in entries if e.p != 0))
    except ValidationError as e:
        raise ExlabError(f"invalid behavior in {source}: {_first_error(e)}") from e
    except (AttributeError, TypeError) as e:
        raise ExlabError(f"invalid behavior in {source}: field 'table' rows must be objects") from e


def load_complex(path: Path) -> SimplicialComplex:
    return complex_from_json(_read_json(path), path.name)


def load_behavior(path: Path) -> Behavior:
    return behavior_from_json(_read_json(path), path.name)


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# -----------------------------
# Builtins and CLI inputs
# -----------------------------
def _builtin_size(name: str, prefix: str) -> int:
    try:
        return int(name[len(prefix):])
    except ValueError as e:
        raise ExlabError(f"builtin {name!r} needs an integer size, e.g. {prefix}5") from e


def builtin_behavior(name: str) -> Optional[Behavior]:
    if name == "prbox":
        return pr_box_behavior()
    if name == "prbox2":
        pr = pr_box_behavior()
        return product_behavior(pr, pr)
    return None


def resolve_behavior(source: str) -> Behavior:
    """A builtin box name or a behavior JSON file."""
    behavior = builtin_behavior(source)
    if behavior is not None:
        return behavior
    path = Path(source)
    if not path.exists():
        raise ExlabError(f"unknown behavior {source!r}: not a builtin (prbox, prbox2) and no such file")
    return load_behavior(path)


def resolve_input(source: str, support: str = "nonzero") -> Tuple[SimplicialComplex, Optional[Behavior]]:
    """
    Builtin names (pentagon, pentagram, pentachoron, cycle:n, complete:n,
    simplex:n, prbox, prbox2) or a JSON file. A behavior resolves to its
    LO complex on the requested support and is returned alongside it.
    """
    if source == "pentagon":
        return cycle_complex(5), None
    if source == "pentagram":
        return complete_graph_complex(5), None
    if source == "pentachoron":
        return full_simplex_complex(5), None
    if source.startswith("cycle:"):
        return cycle_complex(_builtin_size(source, "cycle:")), None
    if source.startswith("complete:"):
        return complete_graph_complex(_builtin_size(source, "complete:")), None
    if source.startswith("simplex:"):
        return full_simplex_complex(_builtin_size(source, "simplex:")), None

    behavior = builtin_behavior(source)
    if behavior is None:
        path = Path(source)
        if not path.exists():
            raise ExlabError(f"unknown complex {source!r}: not a builtin ({', '.join(BUILTIN_COMPLEXES)}) and no such file")
        raw = _read_json(path)
        if not (isinstance(raw, dict) and "table" in raw):
            return complex_from_json(raw, path.name), None
        behavior = behavior_from_json(raw, path.name)
    return behavior_lo_complex(behavior, support), behavior


def behavior_lo_complex(behavior: Behavior, support: str = "nonzero") -> SimplicialComplex:
    if support == "nonzero":
        return lo_complex(behavior.scenario, support_events(behavior))
    if support == "all":
        return lo_complex(behavior.scenario)
    raise ExlabError(f"support must be 'nonzero' or 'all', got {support!r}")


def parse_assignment(source: str, n_vertices: int) -> Assignment:
    """'uniform:p/q', a comma list of rationals, or a JSON file holding a list."""
    try:
        if source.startswith("uniform:"):
            return Assignment.uniform(n_vertices, source[len("uniform:"):])
        path = Path(source)
        if path.exists():
            raw = _read_json(path)
            if not isinstance(raw, list):
                raise ExlabError(f"assignment file {path.name} must hold a JSON list")
            values: List[Fraction] = [to_fraction(v) for v in raw]
        else:
            values = [to_fraction(v) for v in source.split(",")]
        return Assignment(values=tuple(values))
    except ValidationError as e:
        raise ExlabError(f"invalid assignment: {_first_error(e)}") from e
    except ValueError as e:
        if isinstance(e, ExlabError):
            raise
        raise ExlabError(f"invalid assignment {source!r}: {e}") from e
