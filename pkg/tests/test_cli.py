import json

import pytest

from hyperturan import Hypergraph3, SampleSpec, decode, encode, sample
from hyperturan.cli import main
from hyperturan.experiments import CSV_HEADER


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k4(tmp_path):
    path = tmp_path / "k4.json"
    path.write_text(encode(Hypergraph3.complete(4)))
    return str(path)


@pytest.fixture
def k5(tmp_path):
    path = tmp_path / "k5.json"
    path.write_text(encode(Hypergraph3.complete(5)))
    return str(path)


def test_sample_matches_library(capsys):
    code, out, _ = run(["sample", "--n", "7", "--p", "0.5", "--seed", "3"], capsys)
    assert code == 0 and decode(out) == sample(SampleSpec(7, 0.5, 3))


def test_sample_bytes_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["sample", "--n", "15", "--p", "0.3", "--seed", "0xffffffffffffffff", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [["sample", "--n", "5", "--p", "1.5"],
                                  ["sample", "--n", "5", "--p", "0.5", "--seed", "-1"],
                                  ["sample", "--n", "5", "--p", "0.5", "--seed", str(2 ** 64)],
                                  ["census", "/nonexistent.json"],
                                  ["frobnicate"]])
def test_input_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_parse_error_message(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 4, "edges": [[0, 0, 1]]}')
    code, _, err = run(["census", str(bad)], capsys)
    assert code == 2 and "[0, 0, 1]" in err


def test_census(k5, capsys):
    assert run(["census", k5, "--count"], capsys)[1] == "30\n"
    code, out, _ = run(["census", k5, "--motif", "k4minus", "--json"], capsys)
    assert json.loads(out)["count"] == 20
    doc = json.loads(run(["census", k5], capsys)[1])
    assert doc["count"] == 30 and len(doc["constraints"]) == 30
    assert json.loads(run(["census", k5, "--motif", "witness"], capsys)[1])["present"] is False


def test_census_witness_present(k4, capsys):
    doc = json.loads(run(["census", k4, "--motif", "witness"], capsys)[1])
    assert doc["present"] and doc["witness"]["edge_indices"] == [0, 1, 2]


def test_solve_tripartite(k5, capsys):
    doc = json.loads(run(["solve", "tripartite", k5], capsys)[1])
    assert doc["count"] == 4 and len(doc["assignment"]) == 5
    doc = json.loads(run(["solve", "tripartite", k5, "--local", "--restarts", "20"], capsys)[1])
    assert doc["count"] == 4


def test_solve_tripartite_capacity(tmp_path, capsys):
    path = tmp_path / "big.json"
    path.write_text(encode(Hypergraph3(17)))
    code, _, err = run(["solve", "tripartite", str(path)], capsys)
    assert code == 2 and "local" in err


def test_solve_f5free(k5, capsys):
    a = run(["solve", "f5free", k5, "--no-timing"], capsys)
    b = run(["solve", "f5free", k5, "--no-timing"], capsys)
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    assert doc["size"] == 6 and doc["optimal"] and "wallclock" not in doc
    assert json.loads(run(["solve", "f5free", k5, "--oracle"], capsys)[1])["size"] == 6


def test_solve_f5free_budget_exit(tmp_path, capsys):
    path = tmp_path / "k8.json"
    path.write_text(encode(Hypergraph3.complete(8)))
    code, out, _ = run(["solve", "f5free", str(path), "--budget", "3", "--no-timing"], capsys)
    assert code == 3 and json.loads(out)["optimal"] is False


def test_audit(k4, tmp_path, capsys):
    sub = tmp_path / "f.json"
    sub.write_text(json.dumps({"edge_indices": [0, 1, 2, 3]}))
    part = tmp_path / "p.json"
    part.write_text(json.dumps({"n": 4, "classes": [[0, 1], [2], [3]]}))
    code, out, _ = run(["audit", k4, "--f5sub", str(sub), "--partition", str(part), "--p", "0.5"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["B"] == [2, 0, 0] and doc["checks"]["crossing_plus_3B1_bound"] is False


def test_audit_missing_flags(k4, capsys):
    assert run(["audit", k4], capsys)[0] == 2


def test_audit_constants(capsys):
    doc = json.loads(run(["audit", "constants"], capsys)[1])
    assert doc["eps1"]["exact"] == "1/960"


def test_sweep(capsys):
    code, out, _ = run(["sweep", "--n", "4", "--p", "1.0"], capsys)
    assert code == 0
    assert out == CSV_HEADER + "\n4,1,0,0,4,0,4,1,2,1,0,2\n"


def test_sweep_threshold(capsys):
    code, out, _ = run(["sweep", "--n", "8", "--p-threshold", "upper", "1", "--trials", "2"], capsys)
    assert code == 0 and out.splitlines()[1].startswith("8,0.25993,0,")


def test_sweep_degraded_exit(capsys):
    code, out, _ = run(["sweep", "--n", "8", "--p", "1", "--mode", "oracle"], capsys)
    assert code == 3 and len(out.splitlines()) == 2


def test_sweep_files_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        main(["sweep", "--n", "6", "7", "--p", "0.3", "0.6", "--trials", "3", "--seed", "11", "-o", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_witness_scan(capsys):
    doc = json.loads(run(["witness-scan", "--n", "4", "--p", "1", "--trials", "2"], capsys)[1])
    assert doc["fraction"] == 1.0
    doc = json.loads(run(["witness-scan", "--n", "20", "--trials", "3", "--seed", "9"], capsys)[1])
    assert doc["p"] == pytest.approx(0.1 * (2.995732273553991 ** 0.5) / 20)


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep defaults\nn = 4\np = 1.0\ntrials = 1\n")
    code, out, _ = run(["--config", str(cfg), "sweep"], capsys)
    assert code == 0 and out.splitlines()[1] == "4,1,0,0,4,0,4,1,2,1,0,2"


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 5\np = 0.0\nseed = 9\n")
    code, out, _ = run(["--config", str(cfg), "sample", "--n", "6"], capsys)
    assert code == 0 and json.loads(out) == {"n": 6, "edges": []}


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no equals sign here\n")
    assert run(["--config", str(cfg), "audit", "constants"], capsys)[0] == 2
