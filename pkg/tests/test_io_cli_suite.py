import json

import pytest
from hypothesis import given

from geninv.cli import main
from geninv.errors import InvalidSpec, ParseError
from geninv.io import matrix_from_json, matrix_to_json, read_matrix, write_matrix
from geninv.matrix import Matrix
from geninv.suite import SuiteConfig, exit_code, run_suite
from strategies import gaussians, matrices


@given(matrices(max_dim=4, entries=gaussians))
def test_matrix_json_round_trip(A):
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(A)))) == A


def test_reader_accepts_loose_entries():
    A = matrix_from_json({"entries": [["1/2", 0.25], [[1, "-1"], 3]]})
    assert A.to_pairs() == [[["1/2", "0"], ["1/4", "0"]], [["1", "-1"], ["3", "0"]]]


@pytest.mark.parametrize("bad", [
    {}, {"entries": []}, {"entries": [[1, 2], [3]]}, {"rows": 3, "entries": [[1]]},
    {"entries": [[True]]}, {"entries": [[[1, 2, 3]]]}, {"entries": [["x"]]},
])
def test_reader_rejects(bad):
    with pytest.raises(ParseError):
        matrix_from_json(bad)


def test_read_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "none.json")


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, rows in {"A": [[1, 0, 1], [0, 1, 0], [0, 0, 0]], "M": [[1, 0, 0], [0, 2, 0], [0, 0, 1]],
                       "P": [["0.5", 0, 1], [0, 1, 0], ["0.5", 0, 0]], "J": [[0, 1], [0, 0]],
                       "D": [[1, 0], [0, 0]]}.items():
        p = tmp_path / (name + ".json")
        write_matrix(p, Matrix(rows))
        paths[name] = str(p)
    paths["out"] = str(tmp_path / "out.json")
    return paths


def test_cli_compute(files):
    assert main(["compute", "--kind", "dual-core-N", "--matrix", files["A"], "--weight-n", files["M"],
                 "--out", files["out"]]) == 0
    assert read_matrix(files["out"]) == Matrix([["1/2", 0, "1/2"], [0, 1, 0], ["1/2", 0, "1/2"]])


def test_cli_compute_missing_inverse(files):
    assert main(["compute", "--kind", "core", "--matrix", files["J"], "--out", files["out"]]) == 2
    assert json.load(open(files["out"]))["status"] == "NotExists"


def test_cli_verify_exit_codes(files, capsys):
    args = ["verify", "--matrix", files["A"], "--candidate", files["P"], "--weight-m", files["M"],
            "--weight-n", files["M"]]
    assert main(args + ["--tags", "1,4N"]) == 0
    assert main(args + ["--tags", "1,2,3M,4N"]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert main(args + ["--tags", "1", "--tolerance", "0.1"]) == 3
    assert main(args + ["--tags", "1", "--mode", "float", "--tolerance", "1e-9"]) == 0


def test_cli_input_errors(files, tmp_path):
    assert main(["verify", "--matrix", str(tmp_path / "nope.json"), "--candidate", files["P"],
                 "--tags", "1"]) == 3
    assert main(["compute", "--kind", "bogus", "--matrix", files["A"]]) == 3
    assert main(["compute", "--kind", "core-M", "--matrix", files["A"]]) == 3
    assert main(["suite", "--theorems", ""]) == 3
    assert main([]) == 3


def test_cli_theorem(files, capsys):
    assert main(["theorem", "--id", "T3_14", "--matrix", files["A"], "--weight-m", files["M"],
                 "--out", files["out"]]) == 0
    assert json.load(open(files["out"]))["verdict"] == "Pass"
    assert main(["theorem", "--id", "T3_7", "--matrix", files["J"], "--weight-m", files["J"]]) == 2
    assert main(["theorem", "--id", "T3_18", "--matrix", files["D"], "--weight-m", files["D"],
                 "--weight-n", files["D"]]) == 2


def test_suite_config_validation():
    with pytest.raises(InvalidSpec):
        SuiteConfig(theorems=[]).validate()
    with pytest.raises(InvalidSpec):
        SuiteConfig(theorems=["T3_7"], tolerance=1e-6).validate()
    cfg = SuiteConfig.from_dict({"theorems": ["T3_7"], "sizes": "2..3", "samplesPerSize": 2})
    assert cfg.sizes == (2, 3) and cfg.samples_per_size == 2
    assert SuiteConfig(theorems=["T3_7"]).with_env({"GENINV_SEED": "0x10"}).seed == 16


def test_suite_report_shape():
    rep = run_suite(SuiteConfig(theorems=["T3_14", "ROL4_4"], sizes=(2, 3), samples_per_size=3, seed=3))
    assert rep["schemaVersion"] == 1
    assert [t["theorem"] for t in rep["theorems"]] == ["ROL4_4", "T3_14"]
    assert rep["totals"]["instances"] == 12
    assert exit_code(rep) == 0
    assert "jobs" not in rep["config"] and "reportPath" not in rep["config"]


def test_suite_counts_failures():
    rep = run_suite(SuiteConfig(theorems=["T3_18"], sizes=(2, 3), samples_per_size=20, seed=1,
                                fixtures=False))
    t = rep["theorems"][0]
    assert t["passes"] + t["failCount"] + t["interpretationNotes"] == t["hypothesisHit"]
    assert exit_code(rep) == (1 if t["failCount"] else 0)
