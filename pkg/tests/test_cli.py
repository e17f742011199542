import json

import pytest

from coopbasis import GExpansion, Poly, expand_in_g, phi_family
from coopbasis.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_phi_pretty_single(capsys):
    code, out, _ = run(capsys, "phi", "--prime", "2", "--n", "1")
    assert code == 0
    assert "(w - 1)/2" in out


def test_phi_table_json_round_trips(capsys):
    code, out, _ = run(capsys, "phi", "--prime", "2", "--n", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [row["af"] for row in payload["family"]] == [-1, -3, -7]
    fam = phi_family(2, 3)
    for row in payload["family"]:
        assert Poly.from_json(row["coefficients"]) == fam.phi(row["n"])


def test_phi_resource_error_exits_2(capsys):
    code, _, err = run(capsys, "phi", "--prime", "7", "--n", "9")
    assert code == 2
    assert "degree" in err


def test_g_csv(capsys):
    code, out, _ = run(capsys, "g", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,degree,poly"
    assert len(lines) == 4


def test_expand_g_json(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "g", "w^2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"0": "1", "1": "8", "2": "8"}
    assert GExpansion.from_json(payload) == expand_in_g(Poly.parse("w^2"))


def test_expand_g_zero(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "g", "0", "--format", "json")
    assert code == 0
    assert json.loads(out) == {}


def test_expand_phi_trace(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "phi", "--precision", "4",
                       "((w-1)/2)^2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["M"] == 4
    first = payload["trace"][0]
    assert first["weight"] == -2
    assert first["indices"] == [2]
    assert first["coefficients"] == {"2": "2"}


def test_expand_phi_rejects_non_semistable(capsys):
    code, _, err = run(capsys, "expand", "--basis", "phi", "w/2")
    assert code == 1
    assert "semistable" in err
    assert "nu_2" in err


def test_expand_parse_error(capsys):
    code, _, err = run(capsys, "expand", "--basis", "g", "x^2")
    assert code == 2
    assert "error" in err


def test_expand_accepts_coefficient_list(capsys):
    code, out, _ = run(capsys, "expand", "--basis", "g", "[\"0\", \"0\", \"1\"]",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == {"0": "1", "1": "8", "2": "8"}


def test_check_integrality_exit_codes(capsys):
    code, out, _ = run(capsys, "check-integrality", "--prime", "2", "(w-1)/2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["integral"] is True

    code, out, _ = run(capsys, "check-integrality", "--prime", "2", "w/2",
                       "--format", "json")
    assert code == 1
    assert json.loads(out)["integral"] is False

    code, out, _ = run(capsys, "check-integrality", "--prime", "3", "(w^2-1)/3",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["method"] == "residues"


def test_weight_report(capsys):
    code, out, _ = run(capsys, "weight", "w^2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["weight"] == 0
    assert payload["argmin"] == [0, 2]

    code, _, err = run(capsys, "weight", "--prime", "3", "w^2")
    assert code == 2
    assert "p = 2" in err


def test_margolis_json(capsys):
    code, out, _ = run(capsys, "margolis", "--prime", "2", "--k", "4",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 4
    assert len(payload["basis"]) == 7
    assert payload["homology"]["Q0"]["classes"][0]["generators"] == ["z1^8"]
    assert payload["homology"]["Q1"]["classes"][0]["generators"] == ["z3^2"]
    assert payload["cover_rank"] == 3


def test_verify_small_runs_clean(capsys):
    code, out, _ = run(capsys, "verify", "--prime", "2", "--max-n", "4",
                       "--max-k", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert {c["name"] for c in payload["checks"]} == {
        "oracle_equivalence", "integrality", "congruence_suite", "margolis"}
    assert all(c["passed"] for c in payload["congruences"])


def test_verify_odd_prime(capsys):
    code, out, _ = run(capsys, "verify", "--prime", "3", "--max-n", "2",
                       "--max-k", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert "congruences" not in payload


def test_verify_rejects_composite_prime(capsys):
    code, _, err = run(capsys, "verify", "--prime", "4", "--max-n", "2", "--max-k", "2")
    assert code == 2
    assert "prime" in err


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("COOPBASIS_BUDGET", "10")
    # phi_2 at p=3 needs e=4, cost 3^4 * 9 = 729 > 10
    code, _, err = run(capsys, "check-integrality", "--prime", "3",
                       "(9*w^8 - w^6 + 3*w^4 - 3*w^2 - 8)/81")
    assert code == 2
    assert "budget" in err

    monkeypatch.setenv("COOPBASIS_BUDGET", "not-a-number")
    code, _, err = run(capsys, "check-integrality", "--prime", "3", "w")
    assert code == 2


def test_budget_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("COOPBASIS_BUDGET", "10")
    code, _, _ = run(capsys, "check-integrality", "--prime", "3",
                     "(9*w^8 - w^6 + 3*w^4 - 3*w^2 - 8)/81", "--budget", "1000000")
    assert code == 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "phi.json"
    code, out, _ = run(capsys, "phi", "--prime", "2", "--n", "2",
                       "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["family"][0]["text"] == "(w - 1)/2"


def test_csv_not_available_for_expand(capsys):
    code, _, err = run(capsys, "expand", "--basis", "g", "w^2", "--format", "csv")
    assert code == 2
    assert "csv" in err
