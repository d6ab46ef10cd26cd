import csv
import io
import json

import pytest

from pglchar import symchar
from pglchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_pgsp_single_row(capsys):
    code, out, _ = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgsp")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].split()[:2] == ["0/1:[2]", "1"]
    assert "sum(mult*degree) = 1" in out
    assert "sum(mult^2) = 1" in out


def test_decompose_unipotent_only_pgo_plus_n4(capsys):
    code, out, _ = run(
        capsys,
        "decompose", "--q", "3", "--n", "4", "--subgroup", "pgo+",
        "--unipotent-only", "--include-zeros", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert [row["mult"] for row in payload["rows"]] == [1, 1, 2, 1, 2]
    assert [row["label"] for row in payload["rows"]] == [
        "0/1:[4]", "0/1:[3,1]", "0/1:[2,2]", "0/1:[2,1,1]", "0/1:[1,1,1,1]",
    ]


def test_decompose_single_label_zero_multiplicity(capsys):
    code, out, _ = run(
        capsys,
        "decompose", "--q", "3", "--n", "2", "--subgroup", "pgo-",
        "--label", "1/2:[1,1]", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [{"label": "1/2:[1,1]", "mult": 0, "degree": 3}]


def test_table_and_json_agree(capsys):
    args = ["decompose", "--q", "5", "--n", "2", "--subgroup", "pgo+"]
    code, table_out, _ = run(capsys, *args)
    assert code == 0
    code, json_out, _ = run(capsys, *args, "--format", "json")
    assert code == 0
    payload = json.loads(json_out)
    for row in payload["rows"]:
        line = next(l for l in table_out.splitlines() if l.startswith(row["label"] + " "))
        cells = line.split()
        assert cells == [row["label"], str(row["mult"]), str(row["degree"])]
    assert f"sum(mult*degree) = {payload['totals']['sum_md']}" in table_out
    assert f"sum(mult^2) = {payload['totals']['sum_m2']}" in table_out


def test_csv_output_parses(capsys):
    code, out, _ = run(
        capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgo+",
        "--format", "csv",
    )
    assert code == 0
    data_lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(data_lines))))
    assert rows[0] == ["label", "mult", "degree"]
    assert ["0/1:[2]", "1", "1"] in rows


def test_deterministic_output(capsys):
    args = ["decompose", "--q", "5", "--n", "2", "--subgroup", "pgo-", "--format", "json"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_argument_error_exit_code(capsys):
    code, _, err = run(capsys, "decompose", "--q", "4", "--n", "2", "--subgroup", "pgsp")
    assert code == 2
    assert "error" in err
    code, _, _ = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgsp",
                     "--label", "0/1:[1]")
    assert code == 2


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify-identities", "--max-size", "4")
    assert code == 0
    assert "0 failures" in out
    assert "FAIL" not in out
    code, out, _ = run(capsys, "verify-identities", "--max-size", "1")
    assert code == 0
    code, _, err = run(capsys, "verify-identities", "--max-size", "99")
    assert code == 3
    assert "capacity" in err


def test_cross_check(capsys):
    code, out, _ = run(capsys, "cross-check", "--q", "3", "--n", "2")
    assert code == 0
    assert "agree" in out
    # n = 4 requires the slow tier
    code, _, err = run(capsys, "cross-check", "--q", "3", "--n", "4")
    assert code == 3
    code, out, _ = run(capsys, "cross-check", "--q", "3", "--n", "4", "--tier", "slow")
    assert code == 0


def test_orders_command(capsys):
    code, out, _ = run(capsys, "orders", "--q", "3", "--n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pgl"] == 24 and payload["index_pgo_plus"] == 6


def test_dcosets_command(capsys):
    code, out, _ = run(
        capsys, "dcosets", "--q", "3", "--n", "2", "--h1", "pgsp", "--h2", "pgsp",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["double_cosets"] == 1


def test_forms_command(capsys):
    code, out, _ = run(capsys, "forms", "--q", "3", "--n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert {(o["kind"], o["size"]) for o in payload["orbits"]} == {
        ("pgsp", 1), ("pgo+", 6), ("pgo-", 3),
    }


def test_forms_capacity_exit(capsys):
    code, _, err = run(capsys, "forms", "--q", "3", "--n", "4")
    assert code == 3


def test_route_mismatch_is_invariant_violation_exit(capsys, monkeypatch):
    from pglchar import cli

    monkeypatch.setattr(cli.formulas, "mult_pgsp_basic", lambda label: 99)
    code, _, err = run(capsys, "cross-check", "--q", "3", "--n", "2")
    assert code == 4
    assert "invariant violation" in err


def test_verify_identities_json(capsys):
    code, out, _ = run(capsys, "verify-identities", "--max-size", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["failures"] == 0
    assert all(check["status"] == "PASS" for check in payload["checks"])


def test_cache_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "chi.json"
    symchar.save_cache(path, 4)
    symchar.clear_memo()
    code, out1, _ = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgo+",
                        "--cache", str(path), "--format", "json")
    assert code == 0
    symchar.clear_memo()
    monkeypatch.setenv("PGLCHAR_CHI_CACHE", str(path))
    code, out2, _ = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgo+",
                        "--format", "json")
    assert code == 0
    monkeypatch.delenv("PGLCHAR_CHI_CACHE")
    symchar.clear_memo()
    code, out3, _ = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgo+",
                        "--format", "json")
    # cache presence or absence never changes the numbers
    assert out1 == out2 == out3


def test_cache_version_mismatch_is_argument_error(capsys, tmp_path):
    path = tmp_path / "chi.json"
    symchar.save_cache(path, 3)
    payload = json.loads(path.read_text())
    payload["format_version"] = 2
    path.write_text(json.dumps(payload))
    code, _, err = run(capsys, "decompose", "--q", "3", "--n", "2", "--subgroup", "pgsp",
                       "--cache", str(path))
    assert code == 2
    assert "format_version" in err
