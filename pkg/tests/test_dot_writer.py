from __future__ import annotations

from fractions import Fraction

import pytest

from src.errors import PreconditionError
from src.schemas import Assignment
from src.tools import DotWriter, DotWriterConfig, cycle_complex, lo_complex, support_events


class TestDotWriter:
    def test_pentagon_structure(self, pentagon) -> None:
        dot = DotWriter().render(pentagon)
        lines = dot.splitlines()
        assert lines[0] == "graph skeleton {"
        assert lines[-1] == "}"
        assert [l.strip() for l in lines if "--" in l] == ["0 -- 1;", "0 -- 4;", "1 -- 2;", "2 -- 3;", "3 -- 4;"]
        assert '  2 [label="2"];' in lines

    def test_assignment_shading(self, pentagon) -> None:
        dot = DotWriter().render(pentagon, Assignment.uniform(5, Fraction(1, 2)))
        assert 'fillcolor="#8fa6ce"' in dot
        assert 'label="0\\n1/2"' in dot

    def test_extreme_probabilities_use_configured_colors(self) -> None:
        config = DotWriterConfig(graph_name="g", show_probabilities=False)
        dot = DotWriter(config).render(cycle_complex(3), Assignment(values=(Fraction(0), Fraction(1), Fraction(0))))
        assert dot.startswith("graph g {")
        assert '1 [label="1", fillcolor="#1f4e9c"]' in dot
        assert '0 [label="0", fillcolor="#ffffff"]' in dot

    def test_event_labels(self, pr) -> None:
        dot = DotWriter().render(lo_complex(pr.scenario, support_events(pr)))
        assert 'label="0,0|0,0"' in dot

    def test_size_mismatch(self, pentagon) -> None:
        with pytest.raises(PreconditionError):
            DotWriter().render(pentagon, Assignment.uniform(3, 0))
