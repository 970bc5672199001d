import json

import fga.sweep
from fga.constructions import make_tau
from fga.exceptions import GrowthClassificationException


def test_root_command(run_cmd):
    _, err = run_cmd("sweep", expected_exit=2)
    assert err.startswith("usage: fga sweep")


def test_sweep(run_cmd, tau_file):
    out, _ = run_cmd(f"sweep {tau_file} --max-len 1")
    data = json.loads(out)
    assert data["n"] == 2
    assert data["ePrime"] == 1
    assert data["d"] == 0
    assert [c["subject"] for c in data["classes"]] == ["A", "B"]
    assert data["failures"] == []


def test_sweep_with_sidecar(run_cmd, tau_file, tmp_path):
    sidecar = tmp_path / "tau.json"
    sidecar.write_text(json.dumps(make_tau().to_dict()))
    out, _ = run_cmd(f"sweep {tau_file} --max-len 1 --sidecar {sidecar}")
    data = json.loads(out)
    assert len(data["classes"]) == 3
    assert data["classes"][-1]["m"] == 0


def test_sweep_bad_sidecar(run_cmd, tau_file, tmp_path):
    sidecar = tmp_path / "bad.json"
    sidecar.write_text(json.dumps({"probes": [{"class": "c"}]}))
    _, err = run_cmd(f"sweep {tau_file} --max-len 1 --sidecar {sidecar}", expected_exit=2)
    assert "bad probe" in err


def test_sweep_tsv(run_cmd, tau_file):
    out, _ = run_cmd(f"sweep {tau_file} --max-len 1 --format tsv --max-iter 5")
    lines = out.splitlines()
    assert lines[0] == "class\tp\tlength"
    assert lines[1].startswith("A\t1\t")


def test_sweep_inconclusive(run_cmd, tau_file, mocker):
    mocker.patch("fga.sweep.measure_class", side_effect=GrowthClassificationException("irregular"))
    out, err = run_cmd(f"sweep {tau_file} --max-len 1", expected_exit=3)
    assert len(json.loads(out)["failures"]) == 2
    assert "2 classes not classified" in err


def test_bad_jobs(run_cmd, tau_file):
    _, err = run_cmd(f"sweep {tau_file} --jobs 0", expected_exit=2)
    assert "must be positive" in err


def test_sweep_cap(run_cmd, tau_file, mocker):
    spy = mocker.spy(fga.sweep, "measure_class")
    run_cmd(f"sweep {tau_file} --max-len 1 --sweep-cap 100")
    assert {call.args[3] for call in spy.call_args_list} == {100}


def test_sweep_cap_too_small(run_cmd, tau_file):
    _, err = run_cmd(f"sweep {tau_file} --sweep-cap 5", expected_exit=2)
    assert "sweep_cap" in err
