"""End-to-end runs of the command-line interface on fixture documents."""

import json

import pytest
from click.testing import CliRunner

from app import catalog
from app.cli.main import cli, run
from app.cli.serialization import parse_all, serialize
from app.simplicial.core import constant_map, identity_map, point, standard_complex


@pytest.fixture
def invoke():
    runner = CliRunner()

    def _invoke(*args: str):
        return runner.invoke(cli, ["--log-level", "error", *map(str, args)])

    return _invoke


@pytest.fixture
def structured(invoke):
    def _structured(*args: str):
        result = invoke("--format", "structured", *args)
        return result.exit_code, json.loads(result.output)

    return _structured


@pytest.fixture
def write(tmp_path):
    def _write(name: str, *values) -> str:
        path = tmp_path / name
        path.write_text(serialize(*values), encoding="utf-8")
        return str(path)

    return _write


class TestCheck:
    def test_kan_holds_on_a_nerve(self, structured, fixture_dir):
        code, record = structured("check", "kan", fixture_dir / "nerve_pair2.kf", "--m", "2")
        assert code == 0
        assert record["verdict"] == "holds"
        assert record["report"]["subject"].startswith("N")

    def test_kan_fails_on_an_interval(self, structured, write):
        path = write("interval.kf", standard_complex("simplex", 1, N=2))
        code, record = structured("check", "kan", path, "--m", "2", "--j", "0")
        assert code == 1
        assert record["verdict"] == "fails"
        assert record["report"]["witnesses"]

    def test_2group_is_a_2_groupoid(self, invoke, fixture_dir):
        result = invoke("check", "ngroupoid", fixture_dir / "xm0.kf", "--n", "2")
        assert result.exit_code == 0
        assert "holds" in result.output

    def test_isotropy_fails_for_xm0(self, invoke, fixture_dir):
        assert invoke("check", "isotropy", fixture_dir / "xm0.kf").exit_code == 1

    def test_fibration_of_a_map_document(self, invoke, write, nerve_pair2):
        path = write("proj.kf", constant_map(nerve_pair2, point(3), 0))
        assert invoke("check", "fibration", path, "--n", "1").exit_code == 1
        assert invoke("check", "fibration", path, "--n", "2").exit_code == 0

    def test_identity_is_an_equivalence(self, invoke, write, nerve_c2):
        path = write("id.kf", identity_map(nerve_c2))
        assert invoke("check", "equivalence", path).exit_code == 0


class TestBuild:
    def test_nerve_document_parses_back(self, structured, fixture_dir):
        code, record = structured("build", "nerve", fixture_dir / "nerve_pair2.kf", "--N", "2")
        assert code == 0
        assert record["summary"]["levels"] == [2, 4, 8]
        doc = parse_all(record["document"])
        assert doc.last().sizes == (2, 4, 8)

    def test_reduce_with_isotropy_fails(self, structured, fixture_dir):
        code, record = structured("build", "reduce", fixture_dir / "xm0.kf")
        assert code == 1
        assert record["error"]["error"] == "Not2IsotropyFree"

    def test_action_bundle(self, structured, fixture_dir):
        code, record = structured("build", "action", fixture_dir / "swap_action.kf")
        assert code == 0
        assert record["summary"]["total"][:2] == [2, 4]
        assert record["summary"]["base"] == [1, 2, 4, 8]

    def test_crossed_module_action_bundle(self, structured, write):
        path = write("xm0_on_c2.kf", catalog.xm0_on_c2())
        code, record = structured("build", "action2", path, "--N", "3")
        assert code == 0
        assert record["summary"]["total"] == [1, 2, 8, 64]

    def test_quotient(self, structured, fixture_dir):
        code, record = structured("build", "quotient", fixture_dir / "swap_action.kf")
        assert code == 0
        assert record["summary"] == {"objects": 1, "arrows": 1}

    def test_pushforward_needs_one_target(self, invoke, fixture_dir):
        assert invoke("build", "pushforward", fixture_dir / "swap_action.kf").exit_code == 2


class TestExtract:
    def test_swap_has_no_invariants(self, structured, fixture_dir):
        code, record = structured("extract", "invariants", fixture_dir / "swap_action.kf")
        assert code == 0
        assert record["summary"]["count"] == 0

    def test_fiber(self, structured, fixture_dir):
        code, record = structured("extract", "fiber", fixture_dir / "swap_action.kf")
        assert code == 0
        assert record["summary"]["levels"][0] == 2


class TestHom:
    def test_count_horn(self, structured, fixture_dir):
        code, record = structured("hom", "count", fixture_dir / "nerve_pair2.kf", "--domain", "horn:2:1")
        assert code == 0
        assert record["summary"]["count"] == 8

    def test_bad_domain(self, invoke, fixture_dir):
        result = invoke("hom", "count", fixture_dir / "nerve_pair2.kf", "--domain", "cube:2")
        assert result.exit_code == 2

    def test_list_with_limit(self, structured, fixture_dir):
        code, record = structured(
            "hom", "list", fixture_dir / "nerve_pair2.kf", "--domain", "simplex:1", "--limit", "3"
        )
        assert code == 0
        assert record["summary"]["shown"] == 3


class TestErrorsAndOutput:
    def test_malformed_document(self, structured, fixture_dir):
        code, record = structured("check", "kan", fixture_dir / "malformed.kf", "--m", "1")
        assert code == 2
        assert record["error"]["error"] == "ParseError"
        assert record["error"]["witness"]["line"] == 2

    def test_empty_key_in_an_action(self, structured, fixture_dir):
        code, record = structured("build", "action", fixture_dir / "empty_key.kf")
        assert code == 2
        assert record["error"]["error"] == "ParseError"
        assert record["error"]["witness"]["column"] == 3

    def test_missing_file_is_a_usage_error(self, invoke, tmp_path):
        assert invoke("check", "kan", tmp_path / "absent.kf", "--m", "1").exit_code == 2

    def test_quiet_text(self, invoke, fixture_dir):
        result = invoke("--verbosity", "quiet", "check", "kan", fixture_dir / "nerve_pair2.kf", "--m", "2")
        assert result.output.strip().splitlines() == [result.output.strip()]
        assert result.output.strip().endswith("holds")

    def test_run_returns_the_exit_code(self, fixture_dir):
        assert run(["--log-level", "error", "check", "isotropy", str(fixture_dir / "xm0.kf")]) == 1
