import json
from pathlib import Path

import pytest

from spincs import cli, harness
from spincs.densities import DensityLibrary
from spincs.harness import SuiteConfig, parse_config, report_json, run_suite

ROOT = Path(__file__).resolve().parents[1]
FAST = ["scalars", "anticommutation", "shift_projection", "finite_reduction"]


def test_parse_config_values():
    cfg = parse_config("s = 1\nN_max = 2  # comment\nbeta_samples = 1/2, 3\nsuites = daha, qdet\n")
    assert (cfg.s, cfg.N_max) == (1, 2)
    assert [str(b) for b in cfg.beta_samples] == ["1/2", "3"]
    assert cfg.suites == ["daha", "qdet"]


@pytest.mark.parametrize("text", ["s = 0", "nonsense", "beta_samples = 0, 1",
                                  "beta_mode = fuzzy", "suites = nope", "colour = 3",
                                  "s = two"])
def test_parse_config_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_example_configs_parse():
    for name in ("default.cfg", "small.cfg", "fast.cfg"):
        harness.load_config(str(ROOT / "configs" / name))


def test_every_check_has_an_identity_and_evidence_is_reserved():
    for name, chk in harness.REGISTRY.items():
        assert chk.identity
        assert chk.evidence == name.endswith("_evidence")


def test_seed_replay_is_byte_identical():
    cfg = SuiteConfig(N_max=2, degree_bound=2, suites=FAST, seed=5)
    a = report_json(run_suite(cfg))
    b = report_json(run_suite(SuiteConfig(N_max=2, degree_bound=2, suites=FAST, seed=5)))
    assert a == b
    assert json.loads(a)["seed"] == 5


def test_report_schema():
    rep = json.loads(report_json(run_suite(SuiteConfig(N_max=2, degree_bound=2,
                                                       suites=["daha", "shift_projection"]))))
    assert rep["schema"] == "spincs-report/1"
    for entry in rep["checks"]:
        assert entry["status"] in (harness.PROVEN, harness.EVIDENCE, harness.FAILED)
        assert {"check", "identity", "params", "cases", "failures", "notes"} <= set(entry)
    daha = rep["checks"][0]
    assert daha["proof_by_sampling"] and daha["params"]["beta"] == ["3/2", "-2/5", "7"]
    # exact numbers are serialized as fraction strings
    assert all(isinstance(b, str) for b in rep["config"]["beta_samples"])


def test_evidence_status_mapping():
    cfg = SuiteConfig(N_max=1, degree_bound=1)
    entry = harness.run_check(harness.REGISTRY["fock_yangian_evidence"], cfg)
    assert entry["status"] in (harness.EVIDENCE, harness.FAILED)
    assert harness.run_check(harness.REGISTRY["shift_projection"], cfg)["status"] == harness.PROVEN


def corrupt_density_file(tmp_path):
    text = (ROOT / "src" / "spincs" / "data" / "densities_v1.sexp").read_text()
    bad = text.replace("(scale (+ s 1) (no (psis a) (minus (d 1 (psi b)))))",
                       "(scale (+ s 2) (no (psis a) (minus (d 1 (psi b)))))")
    assert bad != text
    path = tmp_path / "corrupt.sexp"
    path.write_text(bad)
    return path


def test_fault_injection_breaks_three_way(tmp_path):
    path = corrupt_density_file(tmp_path)
    good = harness.REGISTRY["three_way"].run(SuiteConfig(N_max=1, degree_bound=2), None)
    cfg = SuiteConfig(N_max=1, degree_bound=2, density_file=str(path), suites=["three_way"])
    rep = run_suite(cfg)
    assert rep["checks"][0]["status"] == harness.FAILED
    bad_t10 = rep["checks"][0]["notes"]["parts"][0]["mismatch"]["T10"]
    assert good.notes["mismatch"]["T10"]["NO~REC"] == 0
    assert bad_t10["NO~REC"] > 0


def test_cli_compute(capsys):
    assert cli.main(["compute", "pi_N", "--state", "psi*[1,-1] psi*[1,0] |0>", "--N", "2"]) == 0
    assert capsys.readouterr().out.strip() == "(-1) * x2^1 * e(1,1) + (1) * x1^1 * e(1,1)"
    assert cli.main(["compute", "T", "--a", "1", "--b", "1", "--n", "0",
                     "--state", "psi*[1,0]|0>"]) == 0
    assert capsys.readouterr().out.strip() == "(1) psi*[1,0] |0>"
    assert cli.main(["compute", "T", "--a", "1", "--b", "2", "--n", "0", "--state", "|0>"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert cli.main(["compute", "pi_bar_N", "--poly", "p[1,2]", "--N", "2", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"op": "pi_bar_N", "result": "(1) * x2^2 * e(1,1) + (1) * x1^2 * e(1,1)"}
    assert cli.main(["compute", "dunkl", "--poly", "(1) * x1^1 * e(1,1)", "--N", "2",
                     "--beta", "2"]) == 0
    assert capsys.readouterr().out.strip() == "(3) * x1^1 * e(1,1)"
    assert cli.main(["compute", "T_bose", "--n", "1", "--poly", "p[1,1]", "--s", "1"]) == 0
    assert capsys.readouterr().out.strip() == "(-b^-1) * p[1,1]"


def test_cli_qdet_json(capsys):
    assert cli.main(["compute", "qdet", "--N", "2", "--s", "1", "--order", "2",
                     "--degree", "1", "--beta", "3/2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["coefficients"]) == 3 and out["basis"]


def test_cli_parse_error_exit_code(capsys):
    assert cli.main(["compute", "pi_N", "--state", "psi*[1,0"]) == 2
    assert "position" in capsys.readouterr().err


def test_cli_suite_run(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["suite", "run", "--config", str(ROOT / "configs" / "fast.cfg"),
                     "--output", str(out), "--quiet"])
    rep = json.loads(out.read_text())
    assert code == (1 if rep["failed"] else 0)
    assert rep["seed"] == 7 and [c["check"] for c in rep["checks"]] == [
        "scalars", "anticommutation", "shift_projection", "fermi_yangian"]
    assert code == 0


def test_cli_suite_exit_code_on_failure(tmp_path):
    path = corrupt_density_file(tmp_path)
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(f"N_max = 1\ndegree_bound = 2\nsuites = three_way\ndensity_file = {path}\n")
    assert cli.main(["suite", "run", "--config", str(cfg), "--output",
                     str(tmp_path / "r.json"), "--quiet"]) == 1
