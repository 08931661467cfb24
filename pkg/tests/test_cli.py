import json
from fractions import Fraction

import pytest

from distort_lab.config import Settings
from distort_lab.models.embedding import MatrixEmbedding
from distort_lab.models.metric_space import GraphSpec
from distort_lab.schemas.embedding import dump_embedding
from distort_lab.services import spaces


@pytest.mark.cli
class TestDispatch:
    """test subcommand dispatch, output formats and exit codes"""

    def test_tree_index(self, run_cli):
        result = run_cli("tree", "index", "--alpha", "4")
        assert result.code == 0
        assert result.out.strip() == "5"

    def test_build_graph_json(self, run_cli):
        result = run_cli("space", "build-graph", "--sizes", "2,3", "--format", "json")
        assert result.code == 0
        data = result.json()
        assert len(data["labels"]) == 20
        assert data["run"]["run_id"] == "test-run"
        assert data["run"]["seed"] == 20240607

    def test_ordinal_normalize(self, run_cli):
        assert run_cli("ordinal", "normalize", "w + w").out.strip() == "w*2"

    def test_ordinal_count(self, run_cli):
        result = run_cli("ordinal", "count", "--beta", "w*2", "--alpha", "1", "--format", "json")
        assert result.json()["count"] == 2

    def test_flags_override_settings(self, run_cli):
        result = run_cli("tree", "truncate", "--alpha", "2", "--width", "2", "--format", "json")
        assert result.code == 0
        data = result.json()
        assert data["width"] == 2
        assert data["brute_index"] == data["predicted_index"] == 3
        assert data["run"]["width"] == 2

    def test_env_settings(self, run_cli, monkeypatch):
        monkeypatch.setenv("DISTORT_LAB_WIDTH", "2")
        data = run_cli("tree", "truncate", "--alpha", "1", "--format", "json").json()
        assert data["width"] == 2

    def test_settings_read_prefixed_environment(self, monkeypatch):
        monkeypatch.setenv("distort_lab_budget", "7")
        monkeypatch.setenv("DISTORT_LAB_SUBPROBLEM", "simplex")
        loaded = Settings()
        assert (loaded.budget, loaded.subproblem) == (7, "simplex")
        assert Settings.model_config["env_prefix"] == "DISTORT_LAB_"


@pytest.mark.cli
class TestErrors:
    """test error payloads and exit codes"""

    def test_bad_ordinal(self, run_cli):
        result = run_cli("ordinal", "normalize", "w^")
        assert result.code == 2
        assert result.error()["error"] == "usage_error"

    def test_unknown_command(self, run_cli):
        result = run_cli("frobnicate")
        assert result.code == 2
        assert result.error()["error"] == "usage_error"

    def test_missing_action(self, run_cli):
        assert run_cli("tree").code == 2

    def test_size_cap(self, run_cli):
        result = run_cli("space", "build-graph", "--sizes", "2,3", "--size-cap", "10")
        assert result.code == 2
        error = result.error()
        assert error["error"] == "size_cap_exceeded"
        assert error["sizing"]["points"] == 20
        assert error["run_id"] == "test-run"

    def test_domain_error(self, run_cli):
        result = run_cli("ordinal", "fundamental", "--alpha", "5", "--n", "1")
        assert result.code == 2
        assert result.error()["error"] == "domain_error"

    def test_not_in_tree(self, run_cli):
        result = run_cli("tree", "rank", "--alpha", "0", "--path", "1,1")
        assert result.code == 2
        assert result.error()["error"] == "not_in_tree"

    def test_malformed_json(self, run_cli, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        result = run_cli("space", "validate", str(path))
        assert result.code == 2
        assert result.error()["error"] == "usage_error"

    def test_missing_file(self, run_cli, tmp_path):
        result = run_cli("space", "validate", str(tmp_path / "nope.json"))
        assert result.code == 2

    def test_schema_violation(self, run_cli, tmp_path):
        path = tmp_path / "space.json"
        path.write_text(json.dumps({"labels": ["bot", "x"], "dist": [["0"]]}))
        result = run_cli("space", "validate", str(path))
        assert result.code == 2
        assert "invalid metric space" in result.error()["message"]

    def test_verification_failure_exit_code(self, run_cli, write_space, broken_metric):
        result = run_cli("space", "validate", write_space(broken_metric))
        assert result.code == 1
        assert "triangle" in result.out

    def test_not_isometric(self, run_cli):
        result = run_cli("embed", "finite", "--sizes", "1,1")
        assert result.code == 1
        error = result.error()
        assert error["error"] == "not_isometric"
        assert error["pair"] == ["a1_1", "a2_1"]

    def test_non_injective_embedding(self, run_cli, tmp_path, star):
        """test two points sent to one value give a domain error, not a crash"""
        rows = tuple((Fraction(v),) for v in (0, 1, 1, -1))
        e = MatrixEmbedding(star, ("c1",), rows)
        path = tmp_path / "collapsed.json"
        path.write_text(json.dumps(dump_embedding(e)))
        result = run_cli("stepfn", "verify-embedding", str(path))
        assert result.code == 2
        error = result.error()
        assert error["error"] == "domain_error"
        assert "not injective" in error["message"]

    def test_invalid_environment(self, run_cli, monkeypatch):
        monkeypatch.setenv("DISTORT_LAB_THREADS", "0")
        result = run_cli("tree", "index", "--alpha", "1")
        assert result.code == 2
        assert result.error()["error"] == "usage_error"


@pytest.mark.cli
@pytest.mark.integration
class TestWorkflows:
    """test multi-step runs through files"""

    def test_output_file(self, run_cli, tmp_path):
        target = tmp_path / "out" / "graph.json"
        result = run_cli("space", "build-graph", "-o", str(target))
        assert result.code == 0
        data = json.loads(target.read_text())
        assert len(data["labels"]) == 5
        assert not [p for p in target.parent.iterdir() if p.name.endswith(".tmp")]

    def test_embed_then_certify(self, run_cli, tmp_path):
        target = tmp_path / "embedding.json"
        assert run_cli("embed", "finite", "--sizes", "3", "-o", str(target)).code == 0
        result = run_cli("certify", "witness", str(target), "--D", "1", "--format", "json")
        assert result.code == 0
        assert result.json()["passed"]

    def test_embed_then_verify(self, run_cli, tmp_path):
        target = tmp_path / "embedding.json"
        run_cli("embed", "finite", "--sizes", "2", "-o", str(target))
        data = run_cli("stepfn", "verify-embedding", str(target), "--pairs", "1,2", "--D", "1", "--format", "json").json()
        assert data["isometric"]
        assert data["distortion"] == "1"
        assert data["witness"]["threshold"] == "2"
        distance = run_cli("stepfn", "distance", str(target), "--a", "1", "--b", "2")
        assert distance.out.strip() == "2"

    def test_distance_unknown_label(self, run_cli, tmp_path):
        target = tmp_path / "embedding.json"
        run_cli("embed", "finite", "-o", str(target))
        assert run_cli("stepfn", "distance", str(target), "--a", "1", "--b", "q").code == 2

    def test_amalgam_of_files(self, run_cli, tmp_path):
        paths = []
        for n in (2, 3):
            path = tmp_path / f"part{n}.json"
            run_cli("embed", "finite", "--sizes", str(n), "-o", str(path))
            paths.append(str(path))
        result = run_cli("embed", "amalgam", *paths, "--shared", "bot,1,2", "--format", "json")
        assert result.code == 0
        data = result.json()
        assert data["restriction_consistent"]
        assert len(data["sign_patterns"]) == 1

    def test_space_amalgam(self, run_cli, write_space):
        a = write_space(spaces.build_graph(GraphSpec((2,))), "a.json")
        b = write_space(spaces.build_graph(GraphSpec((3,))), "b.json")
        result = run_cli("space", "amalgam", a, b, "--shared", "bot,1,2", "--format", "json")
        assert len(result.json()["labels"]) == 18

    def test_solve_min_distortion(self, run_cli, write_space, star):
        result = run_cli("solve", "min-distortion", write_space(star), "--dims", "1", "--format", "json")
        assert result.code == 0
        data = result.json()
        assert data["upper"] == data["lower"] == "3"
        assert data["status"] == "exact"
        assert data["run"]["budget"] == 200000

    def test_solve_curve_csv(self, run_cli, write_space, star, tmp_path):
        target = tmp_path / "curve.csv"
        result = run_cli("solve", "curve", "--space", write_space(star), "--dims", "1..3", "-o", str(target))
        assert result.code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == "n,D_min_num,D_min_den"
        assert lines[1] == "1,3,1"
        assert lines[-1] == "3,1,1"

    def test_solve_oracle(self, run_cli, write_space, star):
        assert run_cli("solve", "oracle", write_space(star), "--dims", "1").out.strip() == "3"

    def test_certify_counting(self, run_cli):
        result = run_cli("certify", "counting", "--D", "3/2", "--m", "5", "--format", "json")
        data = result.json()
        assert (data["base"], data["n_min"]) == (4, 2)
        assert data["D"] == "3/2"

    def test_certify_byproduct(self, run_cli):
        assert run_cli("certify", "byproduct", "--D", "1", "--m", "1").out.strip() == "k = 3, n = 32"

    def test_certify_packing(self, run_cli):
        result = run_cli("certify", "packing", "--D", "6/5", "--n", "1", "--format", "json")
        assert result.code == 0
        assert result.json()["agree"]

    def test_certify_rejects_D(self, run_cli):
        assert run_cli("certify", "counting", "--D", "2", "--m", "5").code == 2

    def test_selftest_subset(self, run_cli):
        result = run_cli("selftest", "run", "--only", "ordinal_properties", "--samples", "50", "--format", "json")
        assert result.code == 0
        data = result.json()
        assert data["passed"]
        assert data["run"]["run_id"] == "test-run"

    def test_selftest_injected_violation(self, run_cli):
        result = run_cli("selftest", "run", "--only", "metric_axioms", "--inject-violation")
        assert result.code == 1
        assert "FAIL metric_axioms" in result.out
