from __future__ import annotations

import io
import json
from typing import List, Tuple

import pytest

from src.main import run
from src.tools import full_simplex_complex, pr_box_behavior
from src.tools.store import load_behavior, load_complex


def invoke(*argv: str) -> Tuple[int, str]:
    stream = io.StringIO()
    code = run(list(argv), stream)
    return code, stream.getvalue()


def invoke_json(*argv: str) -> Tuple[int, dict]:
    code, text = invoke(*argv, "--format", "json")
    return code, json.loads(text)


class TestBounds:
    def test_pentagon_e(self) -> None:
        code, data = invoke_json("bounds", "pentagon", "--class", "E")
        assert code == 0
        assert data["class"] == "E"
        assert data["value"] == {"num": "5", "den": "2"}

    def test_human_mode_prints_exact_rationals(self) -> None:
        code, text = invoke("bounds", "pentagon")
        assert code == 0
        assert "E bound = 5/2" in text

    def test_simplex_nchv(self) -> None:
        code, data = invoke_json("bounds", "simplex:5", "--class", "NCHV")
        assert code == 0
        assert data["value"] == {"num": "1", "den": "1"}

    def test_product_root(self) -> None:
        code, data = invoke_json("bounds", "pentagon", "--class", "CEk", "--copies", "2")
        assert code == 0
        assert data["value"] == {"base": {"num": "5", "den": "1"}, "root": 2}
        code, text = invoke("bounds", "pentagon", "--class", "CEk")
        assert "2-th root of 5" in text

    def test_complex_file_input(self, data_dir) -> None:
        code, data = invoke_json("bounds", str(data_dir / "complexes" / "pentagram.json"), "--class", "CE")
        assert code == 0
        assert data["value"] == {"num": "1", "den": "1"}


class TestErrors:
    def test_unknown_builtin(self) -> None:
        code, data = invoke_json("bounds", "hexagon")
        assert code == 1
        assert "hexagon" in data["error"]

    def test_unknown_builtin_human_mode(self) -> None:
        code, text = invoke("bounds", "hexagon")
        assert code == 1
        assert text.startswith("error:")
        assert len(text.strip().splitlines()) == 1

    def test_malformed_file(self, tmp_path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("[1, 2", encoding="utf-8")
        code, data = invoke_json("bounds", str(path))
        assert code == 1
        assert "malformed JSON" in data["error"]

    def test_malformed_behavior_table(self, tmp_path) -> None:
        path = tmp_path / "box.json"
        path.write_text(json.dumps({"parties": 1, "settings": [1], "outcomes": [[2]], "table": 5}), encoding="utf-8")
        for verb in ("lo-complex", "bounds"):
            code, data = invoke_json(verb, str(path))
            assert code == 1
            assert "field 'table'" in data["error"]

    def test_unreadable_json_file(self, tmp_path) -> None:
        path = tmp_path / "dir.json"
        path.mkdir()
        code, data = invoke_json("validate", str(path))
        assert code == 1
        assert data["error"].startswith("cannot read")

    def test_invalid_complex_is_a_domain_error(self, tmp_path) -> None:
        path = tmp_path / "nested.json"
        path.write_text(json.dumps({"n_vertices": 3, "facets": [[0, 1], [0, 1, 2]]}), encoding="utf-8")
        code, data = invoke_json("bounds", str(path))
        assert code == 1
        assert "nested" in data["error"]

    @pytest.mark.parametrize(
        "argv",
        [["frobnicate"], ["bounds"], ["bounds", "pentagon", "--class", "X"], ["theta", "five"], []],
    )
    def test_usage_errors(self, argv: List[str]) -> None:
        assert invoke(*argv)[0] == 2

    @pytest.mark.parametrize("argv", [["frobnicate"], ["bounds"], ["theta", "five"], ["bounds", "pentagon", "--class", "X"]])
    def test_usage_errors_in_json_mode_write_an_error_payload(self, argv: List[str]) -> None:
        code, data = invoke_json(*argv)
        assert code == 2
        assert set(data) == {"error"}

    def test_usage_error_with_equals_form(self) -> None:
        code, text = invoke("theta", "five", "--format=json")
        assert code == 2
        assert "five" in json.loads(text)["error"]

    def test_usage_errors_in_table_mode_go_to_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, text = invoke("bounds")
        assert (code, text) == (2, "")
        assert "error:" in capsys.readouterr().err

    def test_no_dot_output(self) -> None:
        assert invoke("bounds", "pentagon", "--format", "dot")[0] == 2

    def test_bad_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("EXLAB_LOG_LEVEL", "chatty")
        code, data = invoke_json("theta", "5")
        assert code == 1
        assert "EXLAB_LOG_LEVEL" in data["error"]


class TestValidate:
    def test_clean_builtin(self) -> None:
        code, data = invoke_json("validate", "pentagram")
        assert code == 0
        assert data == {"valid": True, "defects": []}

    def test_defects_reported(self, tmp_path) -> None:
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n_vertices": 3, "facets": [[0, 4]]}), encoding="utf-8")
        code, data = invoke_json("validate", str(path))
        assert code == 1
        assert data["valid"] is False
        assert "vertex 2 appears in no facet" in data["defects"]


class TestConstructions:
    def test_clique_complex_written_to_file(self, tmp_path) -> None:
        out = tmp_path / "clique.json"
        code, _ = invoke("clique-complex", "pentagram", "--out", str(out))
        assert code == 0
        assert load_complex(out) == full_simplex_complex(5)

    def test_written_complex_reloads_identically(self, tmp_path) -> None:
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        assert invoke("or-product", "pentagon", "cycle:3", "--out", str(first))[0] == 0
        assert invoke("induced", str(first), "--vertices", ",".join(map(str, range(15))), "--out", str(second))[0] == 0
        assert first.read_bytes() == second.read_bytes()

    def test_or_product(self) -> None:
        code, data = invoke_json("or-product", "pentagon", "pentagon")
        assert code == 0
        assert data["n_vertices"] == 25
        assert data["labels"][6] == "1⊗1"

    def test_induced(self) -> None:
        code, data = invoke_json("induced", "pentagon", "--vertices", "0,1,2")
        assert code == 0
        assert data == {"n_vertices": 3, "facets": [[0, 1], [1, 2]]}

    def test_induced_needs_vertices(self) -> None:
        assert invoke("induced", "pentagon")[0] == 1
        assert invoke("induced", "pentagon", "--vertices", "0,x")[0] == 1

    def test_lo_complex(self) -> None:
        code, data = invoke_json("lo-complex", "prbox")
        assert code == 0
        assert data["n_vertices"] == 8
        assert "0,0|0,0" in data["labels"]
        code, data = invoke_json("lo-complex", "prbox", "--support", "all")
        assert data["n_vertices"] == 16

    def test_pr_box_round_trip(self, tmp_path) -> None:
        out = tmp_path / "pr.json"
        assert invoke("pr-box", "--out", str(out))[0] == 0
        assert load_behavior(out) == pr_box_behavior()

    def test_product_of_behaviors(self, data_dir) -> None:
        code, data = invoke_json("product", "prbox", str(data_dir / "behaviors" / "pr_box.json"))
        assert code == 0
        assert len(data["table"]) == 64
        assert data["boxes"] == [2, 2]


class TestAssignments:
    def test_check_member(self) -> None:
        code, data = invoke_json("check", "pentagon", "--assignment", "uniform:1/2")
        assert code == 0
        assert data["member"] is True

    def test_check_violations(self) -> None:
        code, data = invoke_json("check", "pentagram", "--assignment", "uniform:1/2", "--class", "CE")
        assert code == 0
        assert data["member"] is False
        assert data["violations"][0]["total"] == {"num": "5", "den": "2"}

    def test_check_needs_an_assignment(self) -> None:
        assert invoke("check", "pentagon")[0] == 1

    def test_check_rejects_nchv(self) -> None:
        assert invoke("check", "pentagon", "--assignment", "uniform:1/2", "--class", "NCHV")[0] == 1

    def test_behavior_supplies_the_assignment(self) -> None:
        code, data = invoke_json("check", "prbox")
        assert code == 0
        assert data["member"] is True

    def test_find_violation_in_two_pr_boxes(self) -> None:
        code, data = invoke_json("find-violation", "prbox2")
        assert code == 0
        violation = data["violation"]
        assert len(violation["clique"]) == 5
        assert len(violation["labels"]) == 5
        assert violation["total"] == {"num": "5", "den": "4"}

    def test_no_violation(self) -> None:
        code, data = invoke_json("find-violation", "pentagon", "--assignment", "uniform:1/2")
        assert code == 0
        assert data == {"violation": None}

    def test_find_violation_outside_e(self) -> None:
        assert invoke("find-violation", "pentagon", "--assignment", "uniform:1")[0] == 1


class TestOtherVerbs:
    def test_theta_uses_configured_precision(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("EXLAB_PRECISION", "10")
        code, data = invoke_json("theta", "5")
        assert code == 0
        assert data == {"n": 5, "digits": 10, "decimal": "2.236067977"}

    def test_theta_even_cycle(self) -> None:
        assert invoke("theta", "4")[0] == 1

    def test_dot(self) -> None:
        code, text = invoke("dot", "pentagon", "--format", "dot", "--assignment", "uniform:1/2")
        assert code == 0
        assert text.startswith("graph skeleton {")
        assert "0 -- 4;" in text

    def test_dot_to_file(self, tmp_path) -> None:
        out = tmp_path / "pr.dot"
        assert invoke("dot", "prbox", "--format", "dot", "--out", str(out))[0] == 0
        assert out.read_text(encoding="utf-8").startswith("graph skeleton {")

    def test_paper_check(self) -> None:
        code, data = invoke_json("paper-check")
        assert code == 0
        assert data["passed"] is True
        assert len(data["claims"]) == 11
