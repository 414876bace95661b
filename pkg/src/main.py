# src/main.py
from __future__ import annotations

from dotenv import load_dotenv
load_dotenv()

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional, TextIO, Tuple

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.config import Settings, load_settings
from src.errors import ExlabError
from src.orchestrator import paper_check
from src.schemas import Assignment, Behavior, BoundResult, SimplicialComplex
from src.tools import (
    DotWriter,
    assignment_from_behavior,
    ce_bound,
    ce_product_bound,
    check_assignment,
    clique_complex,
    e_bound,
    find_ce_violation,
    induced_subcomplex,
    nchv_bound,
    or_product,
    pr_box_behavior,
    product_behavior,
    theta_odd_cycle,
    validate,
)
from src.tools.store import (
    behavior_lo_complex,
    behavior_to_json,
    bound_to_json,
    complex_to_json,
    dumps,
    parse_assignment,
    resolve_behavior,
    resolve_input,
    violation_to_json,
    write_text,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


@dataclass
class Output:
    """What a verb produced: JSON payload, a human renderable and an exit status."""
    data: Dict[str, Any]
    table: Any
    dot: Optional[str] = None
    status: int = EXIT_OK


# -----------------------------
# Input helpers
# -----------------------------
def _load_complex(source: str, support: str = "nonzero") -> Tuple[SimplicialComplex, Optional[Behavior]]:
    complex_, behavior = resolve_input(source, support)
    defects = validate(complex_)
    if defects:
        raise ExlabError(f"invalid complex {source}: {defects[0]}")
    canonical = SimplicialComplex.from_facets(complex_.n_vertices, complex_.facets, complex_.labels)
    return canonical, behavior


def _load_assignment(args: argparse.Namespace, complex_: SimplicialComplex, behavior: Optional[Behavior]) -> Assignment:
    if args.assignment:
        assignment = parse_assignment(args.assignment, complex_.n_vertices)
    elif behavior is not None:
        assignment = assignment_from_behavior(complex_, behavior)
    else:
        raise ExlabError("field 'assignment': required unless the input is a behavior")
    if len(assignment) != complex_.n_vertices:
        raise ExlabError(
            f"field 'assignment': {len(assignment)} values for a complex on {complex_.n_vertices} vertices"
        )
    return assignment


# -----------------------------
# Human-readable rendering
# -----------------------------
def _complex_table(title: str, complex_: SimplicialComplex) -> Table:
    table = Table(title=f"{title}: {complex_.n_vertices} vertices, {len(complex_.facets)} facets")
    table.add_column("#", justify="right")
    table.add_column("facet")
    for k, f in enumerate(complex_.facets):
        names = [complex_.label(v) for v in f] if complex_.labels is not None else [str(v) for v in f]
        table.add_row(str(k), "{" + ", ".join(names) + "}")
    return table


def _behavior_table(title: str, behavior: Behavior) -> Table:
    table = Table(title=f"{title}: {behavior.scenario.parties} parties, {len(behavior.table)} nonzero entries")
    table.add_column("settings")
    table.add_column("outcomes")
    table.add_column("p", justify="right")
    for e in sorted(behavior.table, key=lambda e: (e.settings, e.outcomes)):
        table.add_row(",".join(map(str, e.settings)), ",".join(map(str, e.outcomes)), str(e.p))
    return table


def _bound_table(result: BoundResult) -> Table:
    table = Table(title=f"{result.bound_class} bound = {result.value}")
    table.add_column("vertex", justify="right")
    table.add_column("witness P(i)", justify="right")
    for v, p in enumerate(result.witness.values):
        table.add_row(str(v), str(p))
    return table


# -----------------------------
# Verbs
# -----------------------------
def cmd_validate(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, _ = resolve_input(args.input, args.support)
    defects = validate(complex_)
    table = Table(title=f"validate {args.input}")
    table.add_column("defect")
    for d in defects:
        table.add_row(d)
    if not defects:
        table.add_row("none")
    return Output({"valid": not defects, "defects": defects}, table, status=EXIT_DOMAIN if defects else EXIT_OK)


def cmd_bounds(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, _ = _load_complex(args.input, args.support)
    model_class = args.model_class or "E"
    if model_class == "CEk":
        root = ce_product_bound(complex_, args.copies)
        rendered = str(root)
        exact = root.as_rational()
        if exact is not None:
            rendered += f" = {exact}"
        return Output(bound_to_json(root, args.copies), Panel(rendered, title=f"CE bound over {args.copies} copies"))
    compute: Dict[str, Callable[[SimplicialComplex], BoundResult]] = {"E": e_bound, "CE": ce_bound, "NCHV": nchv_bound}
    result = compute[model_class](complex_)
    return Output(bound_to_json(result), _bound_table(result))


def cmd_clique_complex(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, _ = _load_complex(args.input, args.support)
    result = clique_complex(complex_)
    return Output(complex_to_json(result), _complex_table("clique complex", result))


def cmd_or_product(args: argparse.Namespace, settings: Settings) -> Output:
    a, _ = _load_complex(args.input, args.support)
    b, _ = _load_complex(args.other, args.support)
    result = or_product(a, b)
    return Output(complex_to_json(result), _complex_table("OR product", result))


def cmd_induced(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, _ = _load_complex(args.input, args.support)
    if not args.vertices:
        raise ExlabError("field 'vertices': required for induced")
    try:
        vertices = [int(v) for v in args.vertices.split(",")]
    except ValueError as e:
        raise ExlabError(f"field 'vertices': expected a comma list of integers, got {args.vertices!r}") from e
    result = induced_subcomplex(complex_, vertices)
    return Output(complex_to_json(result), _complex_table("induced subcomplex", result))


def cmd_lo_complex(args: argparse.Namespace, settings: Settings) -> Output:
    behavior = resolve_behavior(args.input)
    result = behavior_lo_complex(behavior, args.support)
    return Output(complex_to_json(result), _complex_table("LO complex", result))


def cmd_pr_box(args: argparse.Namespace, settings: Settings) -> Output:
    behavior = pr_box_behavior()
    return Output(behavior_to_json(behavior), _behavior_table("PR box", behavior))


def cmd_product(args: argparse.Namespace, settings: Settings) -> Output:
    result = product_behavior(resolve_behavior(args.input), resolve_behavior(args.other))
    return Output(behavior_to_json(result), _behavior_table("product behavior", result))


def cmd_check(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, behavior = _load_complex(args.input, args.support)
    assignment = _load_assignment(args, complex_, behavior)
    model_class = args.model_class or "E"
    if model_class not in ("E", "CE"):
        raise ExlabError(f"field 'class': check supports E or CE, got {model_class}")
    violations = check_assignment(complex_, assignment, model_class)
    table = Table(title=f"class {model_class}: {len(violations)} violation(s)")
    table.add_column("set")
    table.add_column("sum", justify="right")
    for v in violations:
        table.add_row("{" + ", ".join(complex_.label(i) for i in v.clique) + "}", str(v.total))
    data = {"class": model_class, "member": not violations, "violations": [violation_to_json(v, complex_) for v in violations]}
    return Output(data, table)


def cmd_find_violation(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, behavior = _load_complex(args.input, args.support)
    assignment = _load_assignment(args, complex_, behavior)
    violation = find_ce_violation(complex_, assignment)
    if violation is None:
        return Output({"violation": None}, Panel("no CE violation", title="find-violation"))
    names = ", ".join(complex_.label(v) for v in violation.clique)
    return Output(
        {"violation": violation_to_json(violation, complex_)},
        Panel(f"{{{names}}}\nsum = {violation.total}", title=f"CE violation ({len(violation.clique)}-clique)"),
    )


def cmd_theta(args: argparse.Namespace, settings: Settings) -> Output:
    theta = theta_odd_cycle(args.n, settings.theta_precision)
    return Output(theta.model_dump(), Panel(theta.decimal, title=f"theta(C{args.n})"))


def cmd_dot(args: argparse.Namespace, settings: Settings) -> Output:
    complex_, behavior = _load_complex(args.input, args.support)
    assignment = None
    if args.assignment or behavior is not None:
        assignment = _load_assignment(args, complex_, behavior)
    dot = DotWriter().render(complex_, assignment)
    return Output({"dot": dot}, dot, dot=dot)


def cmd_paper_check(args: argparse.Namespace, settings: Settings) -> Output:
    report = paper_check()
    table = Table(title="reproduction claims")
    table.add_column("claim")
    table.add_column("expected")
    table.add_column("computed")
    table.add_column("result")
    for c in report.claims:
        table.add_row(c.claim_id, c.expected, c.computed, "[green]pass[/green]" if c.passed else "[red]FAIL[/red]")
    data = {"passed": report.passed, "claims": [c.model_dump() for c in report.claims]}
    return Output(data, table, status=EXIT_OK if report.passed else EXIT_DOMAIN)


VERBS: Dict[str, Callable[[argparse.Namespace, Settings], Output]] = {
    "validate": cmd_validate,
    "bounds": cmd_bounds,
    "clique-complex": cmd_clique_complex,
    "or-product": cmd_or_product,
    "induced": cmd_induced,
    "lo-complex": cmd_lo_complex,
    "pr-box": cmd_pr_box,
    "product": cmd_product,
    "check": cmd_check,
    "find-violation": cmd_find_violation,
    "theta": cmd_theta,
    "dot": cmd_dot,
    "paper-check": cmd_paper_check,
}


# -----------------------------
# Argument parsing
# -----------------------------
class UsageError(Exception):
    def __init__(self, prog: str, usage: str, message: str) -> None:
        super().__init__(message)
        self.prog = prog
        self.usage = usage
        self.message = message


class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting, so `run` picks the error format."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(self.prog, self.format_usage(), message)


def _wants_json(argv: List[str]) -> bool:
    return "--format=json" in argv or any(a == "--format" and b == "json" for a, b in zip(argv, argv[1:]))


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "dot"], default="table", help="Output format")
    common.add_argument("--out", default=None, help="Write the result to this file (JSON, or DOT with --format dot)")
    common.add_argument("--support", choices=["nonzero", "all"], default="nonzero", help="Events used for box complexes")
    common.add_argument("--class", dest="model_class", choices=["E", "CE", "NCHV", "CEk"], default=None)
    common.add_argument("--copies", type=int, default=2, help="Number of copies for --class CEk")
    common.add_argument("--assignment", default=None, help="uniform:p/q, comma list, or JSON list file")
    common.add_argument("--vertices", default=None, help="Comma list of vertices (induced)")

    parser = ArgumentParser(description="Noncontextuality bounds on exclusivity complexes")
    sub = parser.add_subparsers(dest="cmd", required=True)

    one_input = {
        "validate": "Report structural defects of a complex",
        "bounds": "Compute the E, CE, NCHV or CEk bound",
        "clique-complex": "Build the clique complex",
        "induced": "Restrict a complex to --vertices",
        "lo-complex": "LO complex of a behavior",
        "check": "List E or CE violations of an assignment",
        "find-violation": "Find the worst CE violation",
        "dot": "Export the skeleton as DOT",
    }
    for verb, help_text in one_input.items():
        p = sub.add_parser(verb, parents=[common], help=help_text)
        p.add_argument("input", help="Builtin name or JSON file")
    for verb, help_text in {"or-product": "OR product of two complexes", "product": "Product of two behaviors"}.items():
        p = sub.add_parser(verb, parents=[common], help=help_text)
        p.add_argument("input")
        p.add_argument("other")
    sub.add_parser("pr-box", parents=[common], help="Emit the PR box behavior")
    theta = sub.add_parser("theta", parents=[common], help="Lovász number of an odd cycle")
    theta.add_argument("n", type=int)
    sub.add_parser("paper-check", parents=[common], help="Run the reproduction suite")
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def run(argv: Optional[List[str]] = None, stream: Optional[TextIO] = None) -> int:
    """
    Parse `argv`, run one verb and write its result to `stream`.
    Returns 0 on success, 1 on a domain error, 2 on a usage error.
    """
    stream = stream or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        if _wants_json(argv):
            stream.write(dumps({"error": e.message}))
        else:
            sys.stderr.write(f"{e.usage}{e.prog}: error: {e.message}\n")
        return EXIT_USAGE
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    console = Console(file=stream, width=160)
    as_json = args.format == "json"

    try:
        settings = load_settings()
        configure_logging(settings.log_level)
        output = VERBS[args.cmd](args, settings)
    except (ExlabError, OSError) as e:
        message = str(e).splitlines()[0]
        if as_json:
            stream.write(dumps({"error": message}))
        else:
            console.print(f"[red]error:[/red] {escape(message)}", highlight=False, soft_wrap=True)
        return EXIT_DOMAIN

    if args.format == "dot" and output.dot is None:
        if as_json:
            stream.write(dumps({"error": f"{args.cmd} has no DOT output"}))
        else:
            console.print(f"[red]error:[/red] {args.cmd} has no DOT output")
        return EXIT_USAGE

    if args.out:
        text = output.dot if args.format == "dot" else dumps(output.data)
        write_text(Path(args.out), text)
        if as_json:
            stream.write(dumps({"written": args.out, "status": output.status}))
        else:
            console.print(f"[green]Wrote[/green] {escape(args.out)}", soft_wrap=True)
        return output.status

    if as_json:
        stream.write(dumps(output.data))
    elif args.format == "dot":
        stream.write(output.dot)
    elif isinstance(output.table, str):
        stream.write(output.table)
    else:
        console.print(output.table)
    return output.status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
