# src/tools/dot_writer.py
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from src.errors import PreconditionError
from src.schemas import Assignment, SimplicialComplex
from src.tools.complex_core import skeleton


@dataclass(frozen=True)
class DotWriterConfig:
    graph_name: str = "skeleton"
    node_shape: str = "circle"
    empty_color: str = "#ffffff"  # probability 0
    full_color: str = "#1f4e9c"   # probability 1
    show_probabilities: bool = True


class DotWriter:
    """
    Renders a complex's skeleton as one DOT `graph` block. Vertices are
    labeled by event names when present; with an assignment, each vertex is
    shaded between `empty_color` and `full_color` by its probability.
    """

    def __init__(self, config: Optional[DotWriterConfig] = None) -> None:
        self.config = config or DotWriterConfig()

    def render(self, complex_: SimplicialComplex, assignment: Optional[Assignment] = None) -> str:
        if assignment is not None and len(assignment) != complex_.n_vertices:
            raise PreconditionError(
                f"assignment has {len(assignment)} values for a complex on {complex_.n_vertices} vertices"
            )
        g = skeleton(complex_)
        lines: List[str] = [
            f"graph {self.config.graph_name} {{",
            f'  node [shape={self.config.node_shape}, style=filled, fillcolor="{self.config.empty_color}"];',
        ]
        for v in range(complex_.n_vertices):
            label = complex_.label(v)
            attrs = []
            if assignment is not None:
                p = assignment[v]
                if self.config.show_probabilities:
                    label = f"{label}\\n{p}"
                attrs.append(f'fillcolor="{self._shade(p)}"')
            attrs.insert(0, f'label="{self._escape(label)}"')
            lines.append(f"  {v} [{', '.join(attrs)}];")
        for u, v in sorted((min(e), max(e)) for e in g.edges()):
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _shade(self, p: Fraction) -> str:
        lo = self._rgb(self.config.empty_color)
        hi = self._rgb(self.config.full_color)
        mixed = [round(a + (b - a) * float(p)) for a, b in zip(lo, hi)]
        return "#" + "".join(f"{c:02x}" for c in mixed)

    @staticmethod
    def _rgb(color: str) -> List[int]:
        return [int(color[k:k + 2], 16) for k in (1, 3, 5)]

    @staticmethod
    def _escape(text: str) -> str:
        return text.replace('"', '\\"')
