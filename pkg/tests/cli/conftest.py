import shlex

import pytest

from fga.cli.cli import main as cli_main
from fga.constructions import make_bridson_groves, make_tau
from fga.parse import format_automorphism


@pytest.fixture
def run_cmd(capsys):
    def _run_cmd(args, expected_exit=0):
        args = shlex.split(args)
        with pytest.raises(SystemExit) as excinfo:
            cli_main(args)
        assert excinfo.value.code == expected_exit
        outerr = capsys.readouterr()
        out = outerr.out.rstrip()
        err = outerr.err.rstrip()
        return out, err

    return _run_cmd


@pytest.fixture
def tau_file(tmp_path):
    path = tmp_path / "tau.aut"
    path.write_text(format_automorphism(make_tau().automorphism))
    return path


@pytest.fixture
def bridson_groves_file(tmp_path):
    path = tmp_path / "bg.aut"
    path.write_text(format_automorphism(make_bridson_groves().automorphism))
    return path
