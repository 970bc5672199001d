import json

import pytest

from fga.exceptions import GrowthClassificationException


def test_root_command(run_cmd):
    _, err = run_cmd("growth", expected_exit=2)
    assert err.startswith("usage: fga growth")


def test_class_growth(run_cmd, tau_file):
    out, _ = run_cmd(f"growth {tau_file} a")
    data = json.loads(out)
    assert data["subject"] == "a"
    assert data["cyclic"]
    assert data["m"] == 0
    assert data["method"] == "certified"
    assert data["lambda"]["minpoly"] == "x**2 - 3*x + 1"
    assert data["lengths"][:3] == ["3", "8", "21"]


def test_fixed_class(run_cmd, tau_file):
    out, _ = run_cmd(f"growth {tau_file} 'a b A B'")
    data = json.loads(out)
    assert data["lambda"]["approx"] == 1
    assert data["m"] == 0


def test_element_growth(run_cmd, bridson_groves_file):
    out, _ = run_cmd(f"growth {bridson_groves_file} b --element --max-iter 30")
    data = json.loads(out)
    assert not data["cyclic"]
    assert data["m"] == 2
    assert data["method"] == "direct"
    assert data["lengths"][:4] == ["4", "7", "12", "19"]


def test_tsv(run_cmd, tau_file):
    out, _ = run_cmd(f"growth {tau_file} a --format tsv")
    lines = out.splitlines()
    assert lines[0] == "p\tlength"
    assert lines[1] == "1\t3"
    assert lines[2] == "2\t8"


@pytest.mark.parametrize(
    ("subject", "message"),
    [
        ("c", "unknown generator"),
        ("'a A'", "trivial"),
    ],
)
def test_bad_subject(run_cmd, tau_file, subject, message):
    _, err = run_cmd(f"growth {tau_file} {subject}", expected_exit=2)
    assert err.startswith("fga: error:")
    assert message in err.lower()


def test_missing_file(run_cmd, tmp_path):
    _, err = run_cmd(f"growth {tmp_path / 'missing.aut'} a", expected_exit=2)
    assert "cannot read" in err


def test_malformed_file(run_cmd, tmp_path):
    path = tmp_path / "bad.aut"
    path.write_text("rank 2\na -> a\n")
    run_cmd(f"growth {path} a", expected_exit=2)


def test_duplicate_image_line(run_cmd, tmp_path):
    path = tmp_path / "twice.aut"
    path.write_text("rank 2\na -> a b\nb -> b\na -> a\n")
    _, err = run_cmd(f"growth {path} a", expected_exit=2)
    assert "second image line for 'a'" in err


def test_cap_too_small(run_cmd, tau_file):
    _, err = run_cmd(f"growth {tau_file} a --cap 5", expected_exit=2)
    assert "length_cap" in err


def test_inconclusive(run_cmd, tau_file, mocker):
    mocker.patch("fga.cli._growth.measure_class", side_effect=GrowthClassificationException("irregular"))
    out, err = run_cmd(f"growth {tau_file} a --max-iter 5", expected_exit=3)
    data = json.loads(out)
    assert data["lengths"] == ["3", "8", "21", "55", "144"]
    assert data["error"] == "irregular"
    assert "inconclusive" in err
