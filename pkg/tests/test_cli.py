import json

import pytest

from octo_cr.cli import main
from octo_cr.core.config import settings
from octo_cr.core.error_handler import EXIT_FAILED, EXIT_OK, EXIT_USAGE
from octo_cr.verification import runner
from octo_cr.verification.base import Check
from octo_cr.verification.report import read_report


class TestTableCommand:
    def test_csv(self, capsys):
        assert main(["table", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "row,column,sign,index,label"
        assert len(lines) == 65
        assert "e1,e2,1,3,e3" in lines

    def test_markdown(self, capsys):
        assert main(["table", "--format", "markdown"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("| · | 1 | e1")
        assert len(lines) == 10

    def test_json(self, capsys):
        assert main(["table"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["rows"][4][1] == {"sign": -1, "index": 5}

    def test_unknown_format(self, capsys):
        assert main(["table", "--format", "xml"]) == EXIT_USAGE


class TestSystemsCommand:
    def test_diff_paper(self, capsys):
        assert main(["systems", "--diff-paper"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["diff"]["unacknowledged"] == []
        assert len(data["diff"]["acknowledged"]) == 1
        assert len(data["real"]["equations"]) == 8

    def test_markdown(self, capsys):
        assert main(["systems", "--format", "markdown"]) == EXIT_OK
        assert "d0f0" in capsys.readouterr().out


class TestVerifyCommand:
    def test_report_on_stdout(self, capsys):
        assert main(["verify", "algebra", "--samples", "5", "--seed", "3"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["suite"] == "algebra"
        assert data["seed"] == 3
        assert data["samples"] == {"algebra": 5}
        assert data["summary"]["failed"] == 0

    def test_seed_from_settings(self, capsys, monkeypatch):
        monkeypatch.setattr(settings, "SEED", 123)
        assert main(["verify", "algebra", "--samples", "2"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["seed"] == 123

    def test_report_to_file(self, capsys, tmp_path):
        path = tmp_path / "algebra.json"
        assert main(["verify", "algebra", "--samples", "3", "--out", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert read_report(str(path)).suite == "algebra"

    def test_failed_check_exit_code(self, capsys, monkeypatch):
        monkeypatch.setitem(runner.SUITES, "algebra", lambda: [Check("algebra.always_fails", lambda ctx: 1.0, 0.0)])
        assert main(["verify", "algebra", "--samples", "1"]) == EXIT_FAILED
        assert json.loads(capsys.readouterr().out)["summary"]["failed"] == 1

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["verify"],
            ["verify", "geometry"],
            ["verify", "algebra", "--samples", "0"],
            ["verify", "algebra", "--samples", "many"],
            ["verify", "algebra", "--workers", "0"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == EXIT_USAGE

    def test_unwritable_output(self, capsys, tmp_path):
        path = tmp_path / "missing" / "report.json"
        assert main(["verify", "algebra", "--samples", "2", "--out", str(path)]) == EXIT_USAGE
        assert "octo-cr:" in capsys.readouterr().err

    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
