# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit tests for the command line."""

import json
from pathlib import Path

import pytest

from main import main
from src import types_

from .helpers import create_json


def test_main_usage(capsys: pytest.CaptureFixture[str]):
    """
    arrange: given an unknown command
    act: when main is called
    assert: then it exits with the usage exit code.
    """
    with pytest.raises(SystemExit) as exc_info:
        main(["k2"])

    assert exc_info.value.code == types_.ExitCode.USAGE
    assert "usage: cgwk" in capsys.readouterr().err


def test_main_k0(capsys: pytest.CaptureFixture[str]):
    """
    arrange: given the k0 command with a size of three
    act: when main is called
    assert: then one compact JSON report is printed and the run succeeds.
    """
    exit_code = main(["k0", "--max-size", "3", "--workers", "1"])

    report = json.loads(capsys.readouterr().out)
    assert exit_code == types_.ExitCode.SUCCESS
    assert set(report) == {"command", "config", "result", "version"}
    assert report["command"] == "k0"
    assert report["config"]["budget"]["max_object_size"] == 3
    assert report["result"]["free_rank"] == 1


def test_main_out(tmp_path: Path):
    """
    arrange: given the enumerate command with an output path
    act: when main is called
    assert: then the report is written to the path.
    """
    out = tmp_path / "report.json"

    exit_code = main(["enumerate", "--max-size", "1", "--workers", "1", "--out", str(out)])

    assert exit_code == types_.ExitCode.SUCCESS
    assert json.loads(out.read_text(encoding="utf-8"))["result"]["dim"] == 1


def test_main_config_replays_report(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    """
    arrange: given a report written by an earlier run
    act: when main is called with the report as configuration
    assert: then the same configuration and result are reported.
    """
    first = tmp_path / "first.json"
    main(["k1", "--max-size", "2", "--query", "l_tau", "--workers", "1", "--out", str(first)])
    earlier = json.loads(first.read_text(encoding="utf-8"))
    earlier["config"]["out"] = None
    replay = create_json(earlier, tmp_path / "replay.json")

    exit_code = main(["k1", "--config", str(replay)])

    report = json.loads(capsys.readouterr().out)
    assert exit_code == types_.ExitCode.SUCCESS
    assert report["config"] == earlier["config"]
    assert report["result"] == earlier["result"]


def test_main_invalid_config(tmp_path: Path):
    """
    arrange: given a configuration file without a command
    act: when main is called with it
    assert: then the usage exit code is returned.
    """
    path = create_json({"instance": "finset"}, tmp_path / "config.json")

    assert main(["k0", "--config", str(path)]) == types_.ExitCode.USAGE


def test_main_amalgam(data_directory: Path, capsys: pytest.CaptureFixture[str]):
    """
    arrange: given the matroid-amalgam command with the free span
    act: when main is called
    assert: then the universal amalgam is reported.
    """
    exit_code = main(
        [
            "matroid-amalgam",
            "--instance",
            "matroid",
            "--file",
            str(data_directory / "free_span.json"),
        ]
    )

    report = json.loads(capsys.readouterr().out)
    assert exit_code == types_.ExitCode.SUCCESS
    assert report["result"]["universal"] == report["result"]["amalgam"]
