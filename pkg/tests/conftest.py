import json

import pytest

from distort_lab.main import dispatch
from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.schemas.metric_space import MetricSpaceSchema
from distort_lab.services import spaces


@pytest.fixture
def star():
    """bot in the middle of three leaves at mutual distance 2"""
    labels = [BASEPOINT, "x", "y", "z"]
    rows = [[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]]
    return MetricSpace.from_rows(labels, rows)


@pytest.fixture
def broken_metric():
    labels = [BASEPOINT, "x", "y"]
    rows = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    return MetricSpace.from_rows(labels, rows)


@pytest.fixture
def base_graph():
    """M(A_0^2): bot, 1, 2, {1}, {2}"""
    return spaces.build_graph(GraphSpec(()))


@pytest.fixture
def graph_23():
    return spaces.build_graph(GraphSpec((2, 3)))


@pytest.fixture
def write_space(tmp_path):
    """dump a metric space to a json file and return its path"""
    def _write(m, name="space.json"):
        path = tmp_path / name
        path.write_text(json.dumps(MetricSpaceSchema.from_domain(m).model_dump(by_alias=True)))
        return str(path)
    return _write


@pytest.fixture
def quiet_settings(monkeypatch):
    """keep log output to warnings and pin the run id"""
    monkeypatch.setenv("DISTORT_LAB_LOG_LEVEL", "WARNING")
    monkeypatch.setenv("DISTORT_LAB_RUN_ID", "test-run")
    monkeypatch.delenv("DISTORT_LAB_THREADS", raising=False)


class CliResult:
    def __init__(self, code, out, err):
        self.code = code
        self.out = out
        self.err = err

    def json(self):
        return json.loads(self.out)

    def error(self):
        """the error payload is the last line written to stderr"""
        return json.loads(self.err.strip().splitlines()[-1])


@pytest.fixture
def run_cli(capsys, quiet_settings):
    def _run(*argv):
        code = dispatch([str(a) for a in argv])
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)
    return _run
