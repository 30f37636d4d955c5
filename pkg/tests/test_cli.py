"""Command-line interface: subcommands, flags, exit codes, seed resolution."""

import json

import pytest

from quadcover.cli import main


def test_list_prints_registry(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "L-projemb" in out
    assert "I-period-Q1" in out


def test_run_with_glob_and_json_output(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        ["run", "--suite", "P-segre-*", "--samples", "50", "--format", "json", "--out", str(out)]
    )
    assert code == 0
    parsed = json.loads(out.read_text())
    assert [entry["id"] for entry in parsed] == ["P-segre-pullback", "P-segre-equivariance"]
    assert all(entry["passed"] for entry in parsed)


def test_run_text_goes_to_stdout(capsys):
    code = main(["run", "--suite", "L-sphereembedding", "--samples", "30", "--n", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "L-sphereembedding" in out
    assert "pass" in out


def test_empty_match_is_usage_error(capsys):
    assert main(["run", "--suite", "nothing-*"]) == 2
    assert "no check matches" in capsys.readouterr().err


def test_bad_flag_is_usage_error():
    assert main(["run", "--definitely-not-a-flag"]) == 2
    assert main(["frobnicate"]) == 2


def test_seed_flag_beats_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("VERIFY_SEED", "7")
    out = tmp_path / "a.json"
    main(["run", "--suite", "I-period-CP1", "--format", "json", "--out", str(out)])
    assert json.loads(out.read_text())[0]["seed"] == 7
    main(["run", "--suite", "I-period-CP1", "--seed", "11", "--format", "json", "--out", str(out)])
    assert json.loads(out.read_text())[0]["seed"] == 11


def test_bad_environment_seed_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("VERIFY_SEED", "not-a-number")
    assert main(["run", "--suite", "I-period-CP1"]) == 2
    assert "VERIFY_SEED" in capsys.readouterr().err


def test_radius_and_dimension_overrides(tmp_path):
    out = tmp_path / "r.json"
    code = main(
        [
            "run",
            "--suite",
            "L-projemb",
            "--n",
            "1",
            "--radius",
            "1.0",
            "--samples",
            "40",
            "--format",
            "json",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    entry = json.loads(out.read_text())[0]
    # one dimension, one radius, 40 samples, 3 tangent pairs each
    assert entry["samples"] == 120


def test_tol_profile_flag(capsys):
    assert main(["run", "--suite", "P-unitcut-flow", "--samples", "10", "--tol-profile", "strict"]) == 0
