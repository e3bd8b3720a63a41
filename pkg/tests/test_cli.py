import json

import pytest
from click.testing import CliRunner

from qsl2r.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_spectrum_reference_values(runner):
    res = runner.invoke(main, ["spectrum", "--spin", "1", "--q", "0.5",
                               "--a", "0", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    vals = sorted(e["value"] for e in payload["eigenvalues"])
    assert vals == pytest.approx([-2.5, 0.0, 2.5], abs=1e-12)


def test_spectrum_spin_zero(runner):
    res = runner.invoke(main, ["spectrum", "--spin", "0", "--q", "0.7",
                               "--a", "0.3", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["eigenvalues"]) == 1


def test_spectrum_json_roundtrip_idempotent(runner):
    args = ["spectrum", "--spin", "2", "--q", "0.6", "--a", "0.25",
            "--format", "json"]
    out1 = runner.invoke(main, args).output
    assert json.dumps(json.loads(out1), indent=2, sort_keys=True) + "\n" \
        == out1


def test_spherical_rejects_half_integer_spin(runner):
    res = runner.invoke(main, ["spherical", "--spin", "0.5", "--q", "0.5",
                               "--a", "0"])
    assert res.exit_code == 1


def test_classify_one_dimensional_entries(runner):
    res = runner.invoke(main, ["classify", "--q", "0.5", "--a", "0",
                               "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    ones = [e for e in payload["entries"]
            if e["family"] in ("I", "C") and e["sector"] == 0]
    assert len(ones) == 2


def test_classify_sign_module_sector(runner):
    res = runner.invoke(main, ["classify", "--q", "0.5", "--a", "0.5",
                               "--format", "json"])
    payload = json.loads(res.output)
    c_entries = [e for e in payload["entries"] if e["family"] == "C"]
    assert len(c_entries) == 1 and c_entries[0]["sector"] == 1
    even_one_dim = [e for e in payload["entries"]
                    if e["family"] == "C" and e["sector"] == 0]
    assert not even_one_dim


def test_scan_boundaries(runner):
    res = runner.invoke(main, ["scan", "--q", "0.5", "--a", "0", "--b", "0",
                               "--lambda-grid", "-4:4:801",
                               "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["matched"]
    assert payload["closed_form_boundaries"] == pytest.approx([-2.5, 2.5])


def test_scan_usage_error(runner):
    res = runner.invoke(main, ["scan", "--q", "0.5", "--a", "0", "--b", "0",
                               "--lambda-grid", "oops"])
    assert res.exit_code == 2


def test_module_emits_window_and_residuals(runner):
    res = runner.invoke(main, ["module", "--q", "0.5", "--a", "0",
                               "--lam", "0", "--b", "0", "--w", "4"])
    assert res.exit_code == 0
    lines = res.output.strip().split("\n")
    assert lines[0].startswith("c,r_c,")
    assert len(lines) == 1 + 9


def test_module_symbolic_lambda_token(runner):
    res = runner.invoke(main, ["module", "--q", "0.5", "--a", "0.3",
                               "--lam", "qang:1", "--b", "0.3", "--w", "3",
                               "--format", "text"])
    assert res.exit_code == 0


def test_finite_dim_command(runner):
    res = runner.invoke(main, ["finite-dim", "--q", "0.5", "--a", "0.5",
                               "--n", "2", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["modules"]) == 2
    for m in payload["modules"]:
        assert m["casimir_residual"] < 1e-10


def test_verify_orthogonality_subset(runner):
    res = runner.invoke(main, ["verify", "--max-degree", "2"])
    assert res.exit_code == 0
    assert "PASS" in res.output


def test_verify_corrupt_hook_fails(runner):
    res = runner.invoke(main, ["verify", "--presentation", "podles",
                               "--corrupt"])
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_verify_single_presentation(runner):
    res = runner.invoke(main, ["verify", "--presentation", "podles"])
    assert res.exit_code == 0


def test_tolerance_env_override(runner, monkeypatch):
    monkeypatch.setenv("QSL2R_TOL", "1e-30")
    res = runner.invoke(main, ["spherical", "--spin", "1", "--q", "0.5",
                               "--a", "0.3"])
    assert res.exit_code == 1  # residual cannot beat 1e-30
