import json
import subprocess
import sys

import pytest

from uwk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    assert set(doc) == {"command", "inputs", "result"}
    assert doc["command"] == argv[0]
    return doc["result"]


def labels(result):
    return [w["label"] for w in result["weights"]]


def test_weights(capsys):
    assert labels(run_json(capsys, "weights", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0")) == \
        ["F((2,0))", "F((6,4))"]
    assert labels(run_json(capsys, "weights", "--p", "7", "--f", "1", "--s", "1", "--mu", "2,0")) == \
        ["F((2,0))", "F((7,3))"]
    res = run_json(capsys, "weights", "--p", "7", "--f", "2", "--s", "10", "--mu", "2,0,3,1")
    assert len(res["weights"]) == 4
    assert res["by_omega"] == {"0,0": "F((9,7),(2,0))", "0,1": "F((6,3),(3,0))",
                               "1,0": "F((30,29),(3,0))", "1,1": "F((35,31),(2,0))"}


def test_weights_depth_failure_exits_2(capsys):
    code, out, err = run(capsys, "weights", "--p", "7", "--f", "1", "--s", "1", "--mu", "6,0")
    assert code == 2 and out == "" and "deep" in err


@pytest.mark.parametrize("argv", [
    ["weights", "--p", "9", "--f", "1", "--s", "0", "--mu", "2,0"],
    ["weights", "--p", "7", "--f", "1", "--s", "01", "--mu", "2,0"],
    ["weights", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0,1"],
    ["weights", "--p", "7", "--f", "1", "--s", "0"],
    ["match", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0", "--shape", "xx", "--omega", "0"],
])
def test_bad_input_exits_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_theta(capsys):
    res = run_json(capsys, "theta", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0")
    assert res == {"F((2,0))": "t01", "F((6,4))": "t10"}


def test_jh(capsys):
    res = run_json(capsys, "jh", "--p", "7", "--f", "1", "--s", "0", "--w", "0", "--nu", "1,0", "--mu", "2,0")
    assert labels(res) == ["F((2,0))", "F((7,3))"]
    res = run_json(capsys, "jh", "--p", "7", "--f", "1", "--s", "0", "--w", "0", "--nu", "0,1", "--mu", "2,0")
    assert labels(res) == ["F((6,4))", "F((11,7))"]
    assert res["type"] == {"s": "00", "mu": [[3, -1], [1, -3]], "p": 7}


def test_types(capsys):
    res = run_json(capsys, "types", "--p", "7", "--f", "1", "--mu", "3,0")
    assert len(res["types"]) == 2
    assert all("F((3,0))" in t["jh"] for t in res["types"])


def test_shape_and_match(capsys):
    res = run_json(capsys, "shape", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0", "--shape", "wt10")
    assert res["shape"] == ["wt10", "wt10"]
    assert res["type"] == {"s": "11", "mu": [[3, -1], [1, -3]], "p": 7}
    assert res["labels"] == {"0": ["c22"], "1": ["c11"]}
    res = run_json(capsys, "shape", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0",
                   "--type-s", "00", "--type-mu", "3,-1,1,-3")
    assert res["shape"] == ["t01", "t01"]
    assert res["labels"] == {"1": ["0"]} and res["intersection"] == {"1": "F((6,4))"}
    res = run_json(capsys, "match", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0", "--shape", "wt10",
                   "--omega", "0")
    assert res["labels"] == ["c22"] and res["labels_by_slot"] == {"1": "c22"}


def test_lift(capsys):
    res = run_json(capsys, "lift", "--p", "7", "--f", "1", "--s", "0", "--nu", "2,0", "--mu", "2,0")
    assert res["ht"] == [[3, 0], [1, -2]] and res["a0"] == [10, -14] and res["v"] == "0"
    res = run_json(capsys, "lift", "--p", "7", "--f", "1", "--s", "0", "--nu", "2,0", "--mu", "6,4")
    assert res["v"] == "0"


def test_equiv(capsys):
    res = run_json(capsys, "equiv", "--p", "7", "--f", "1", "--t1-s", "00", "--t1-mu", "3,0,1,-2",
                   "--t2-s", "00", "--t2-mu", "3,0,1,-2")
    assert res["equivalent"] is True


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# job\np = 7\nf = 1\ns = 0\nmu = 2,0\n")
    res = run_json(capsys, "weights", "--config", str(cfg))
    assert labels(res) == ["F((2,0))", "F((6,4))"]
    res = run_json(capsys, "weights", "--config", str(cfg), "--s", "1")
    assert labels(res) == ["F((2,0))", "F((7,3))"]


def test_output_is_deterministic(capsys):
    argv = ["weights", "--p", "11", "--f", "2", "--s", "10", "--mu", "3,0,4,1"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_text_output(capsys):
    code, out, _ = run(capsys, "theta", "--p", "7", "--f", "1", "--s", "0", "--mu", "2,0", "--text")
    assert code == 0 and out == 'F((2,0)): "t01"\nF((6,4)): "t10"\n'


def test_verify_ideals(capsys):
    res = run_json(capsys, "verify", "ideals")
    assert res["summary"]["failed"] == 0 and res["summary"]["total"] >= 3


def test_verify_types_f2(capsys):
    res = run_json(capsys, "verify", "--suite", "types", "--p", "7", "--f", "2")
    assert res["summary"]["failed"] == 0
    assert any("81 words" in c["check"] for c in res["checks"])


def test_verify_groups_guard(capsys):
    code, out, _ = run(capsys, "verify", "groups", "--p", "7", "--f", "2")
    assert code == 2 and out == ""


def test_verify_groups_text(capsys):
    code, out, _ = run(capsys, "verify", "groups", "--p", "3", "--f", "1", "--text")
    assert code == 0
    assert out.splitlines()[-1].endswith("checks passed")
    assert not any(line.startswith("FAIL") for line in out.splitlines())


def test_verify_table_file(capsys, tmp_path):
    table = tmp_path / "extra.txt"
    table.write_text("c11jf*dstar12j*dstar21j + c11j\n")
    code, out, _ = run(capsys, "verify", "ideals", "--table-file", str(table))
    assert code == 0


def test_report_writes_figures(capsys, tmp_path):
    res = run_json(capsys, "report", "--p", "7", "--f", "2", "--s", "10", "--mu", "2,0,3,1", "--out", str(tmp_path))
    for name in ("extension_graph.png", "jh_incidence.png", "report.json"):
        assert (tmp_path / name).stat().st_size > 0
    assert json.loads((tmp_path / "report.json").read_text())["result"]["theta"] == res["theta"]
    assert len(res["theta"]) == 4


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "uwk.cli", "weights", "--p", "7", "--f", "1", "--s", "0",
                          "--mu", "2,0"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["by_omega"] == {"0": "F((2,0))", "1": "F((6,4))"}
