"""CLI contract: subcommands, formats, exit codes."""

import json

from thmc.cli import main


def test_design_check_fixture_pass(capsys):
    assert main(["design", "--model", "a", "--S", "2", "--T", "4", "--check-fixture"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_design_csv_output(capsys):
    assert main(["design", "--model", "d", "--S", "3", "--T", "4", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith(",1212,1213,")
    assert len(lines) == 7  # header + 6 rows


def test_design_json_output(capsys):
    assert main(["design", "--model", "b", "--S", "2", "--T", "3", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["model"] == "b" and len(payload["columns"]) == 8


def test_design_invalid_model_exit_1(capsys):
    assert main(["design", "--model", "x", "--S", "2", "--T", "4"]) == 1


def test_design_fixture_wrong_size_exit_1(capsys):
    assert main(["design", "--model", "a", "--S", "2", "--T", "5", "--check-fixture"]) == 1


def test_usage_error_exit_1(capsys):
    assert main(["design", "--model", "a"]) == 1


def test_tables_single_row(capsys):
    assert main(["tables", "--model", "d", "--T", "4..5"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_tables_fail_on_tampered_fixture(capsys, monkeypatch):
    import thmc.cli as cli_mod

    real = cli_mod.fixtures.load_tables

    def tampered():
        tables = real()
        tables["d"] = dict(tables["d"])
        tables["d"][4] = (21, (20, 69, 90, 51, 12))
        return tables

    monkeypatch.setattr(cli_mod.fixtures, "load_tables", tampered)
    assert main(["tables", "--model", "d", "--T", "4"]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_tables_parallel_jobs(capsys):
    assert main(["tables", "--model", "d", "--T", "4..6", "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert out.index("T= 4") < out.index("T= 5") < out.index("T= 6")


def test_tables_json_format(capsys):
    assert main(["tables", "--model", "c", "--T", "4", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rows"][0]["status"] == "PASS"


def test_hyperplanes_check(capsys):
    assert main(["hyperplanes", "--model", "d", "--T", "4..5", "--check-fixture"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_hyperplanes_report_mode_model_c(capsys):
    assert main(["hyperplanes", "--model", "c", "--T", "4", "--check-fixture"]) == 0
    assert "report" in capsys.readouterr().out


def test_hyperplanes_print_block(capsys):
    assert main(["hyperplanes", "--model", "d", "--T", "4"]) == 0
    out = capsys.readouterr().out
    assert "T=4" in out or "T 4" in out or out.strip()


def test_verify_only_filter(capsys):
    assert main(["verify", "--only", "design-fixtures"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "1/1" in out


def test_verify_unknown_criterion(capsys):
    assert main(["verify", "--only", "nope"]) == 1


def test_verify_seed_determinism(capsys):
    assert main(["verify", "--only", "lattice-lemmas", "--seed", "7", "--format", "json"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(["verify", "--only", "lattice-lemmas", "--seed", "7", "--format", "json"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert first["results"][0]["details"] == second["results"][0]["details"]
    assert first["passed"] and second["passed"]


def test_hilbert_csv(capsys):
    assert main(["hilbert", "--model", "d", "--T", "4", "--format", "csv"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 20


def test_hilbert_json(capsys):
    assert main(["hilbert", "--model", "d", "--T", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"model": "d", "S": 3, "T": 4, "count": 20, "normal": True}


def test_markov_report(capsys, tmp_path):
    moves_path = tmp_path / "moves.txt"
    assert main(["markov", "--model", "d", "--T", "4", "--D", "2", "--moves-out", str(moves_path), "--moves-k", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["minimal_k"] == 2
    assert moves_path.exists()
