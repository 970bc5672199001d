import json

import pytest

from fga.constructions import make_identity, make_tau, make_theta
from fga.parse import format_automorphism, parse_automorphism


def test_root_command(run_cmd):
    _, err = run_cmd("construct", expected_exit=2)
    assert err.startswith("usage: fga construct")


def test_construct_theta(run_cmd, tmp_path):
    output = tmp_path / "theta"
    out, _ = run_cmd(f"construct theta --n 5 -o {output}")
    assert out.splitlines() == [f"{output}.aut", f"{output}.json"]

    assert parse_automorphism((tmp_path / "theta.aut").read_text()) == make_theta(5).automorphism
    sidecar = json.loads((tmp_path / "theta.json").read_text())
    assert sidecar["family"] == "theta"
    assert sidecar["rank"] == 5
    assert sidecar["expected"]["d"] == 2


def test_default_output(run_cmd, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out, _ = run_cmd("construct alpha_poly --n 3")
    assert out.splitlines() == ["alpha_poly-n3.aut", "alpha_poly-n3.json"]
    assert (tmp_path / "alpha_poly-n3.aut").exists()


def test_construct_optimal_prints_solution(run_cmd, tmp_path):
    output = tmp_path / "optimal"
    out, _ = run_cmd(f"construct optimal --n 5 --e 1 --d 1 -o {output}")
    assert out.splitlines()[0] == "w=0 x=0 y=2 z=0"
    sidecar = json.loads((tmp_path / "optimal.json").read_text())
    assert sidecar["solution"] == {"w": 0, "x": 0, "y": 2, "z": 0}
    assert sidecar["expected"]["fixRank"] == 4


@pytest.mark.parametrize(
    ("command", "message"),
    [
        ("theta", "needs --n"),
        ("optimal --n 5 --e 1", "needs --d"),
        ("theta --n 2", "at least 3"),
        ("optimal --n 3 --e 2 --d 0", "not admissible"),
        ("inner --n 2 --conjugator c", "Unknown generator"),
    ],
)
def test_bad_parameters(run_cmd, tmp_path, command, message):
    _, err = run_cmd(f"construct {command} -o {tmp_path / 'out'}", expected_exit=2)
    assert message in err
    assert not (tmp_path / "out.aut").exists()


def test_unsupported_region(run_cmd, tmp_path):
    _, err = run_cmd(f"construct optimal --n 6 --e 4 --d 0 -o {tmp_path / 'out'}", expected_exit=4)
    assert "unsupported region" in err
    assert "rank 6" in err
    assert not (tmp_path / "out.aut").exists()


def test_geometric_block(run_cmd, tmp_path):
    block = tmp_path / "block.aut"
    block.write_text(format_automorphism(make_identity(6).automorphism))
    out, _ = run_cmd(
        f"construct optimal --n 6 --e 4 --d 0 --block {block} --block-e 4 --block-fixed a -o {tmp_path / 'out'}"
    )
    assert (tmp_path / "out.aut").exists()
    assert parse_automorphism((tmp_path / "out.aut").read_text()).rank == 6


@pytest.mark.parametrize(
    ("flags", "message"),
    [
        ("--block-e 4", "needs --block-e and --block-fixed"),
        ("--block-e 1 --block-fixed a", "not fixed"),
    ],
)
def test_bad_geometric_block(run_cmd, tmp_path, flags, message):
    block = tmp_path / "block.aut"
    block.write_text(format_automorphism(make_tau().automorphism))
    _, err = run_cmd(f"construct optimal --n 6 --e 4 --d 0 --block {block} {flags}", expected_exit=2)
    assert message in err
