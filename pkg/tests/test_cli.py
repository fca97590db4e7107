import json
import math

import numpy as np
import pytest

from entwitness.cli import EXPERIMENTS, main, parse_field_spec


def run(argv):
    return main(argv)


def test_list_names_eight_experiments(capsys):
    assert run(["list"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    assert len(lines) == 8
    names = {l.split(":")[0] for l in lines}
    assert names == set(EXPERIMENTS)


def test_describe_mentions_the_physics(capsys):
    assert run(["describe", "dicke"]) == 0
    out = capsys.readouterr().out
    assert "Holstein-Primakoff" in out
    assert run(["describe", "ppt-crosscheck"]) == 0
    out = capsys.readouterr().out
    assert "partial transpose" in out


def test_noise_threshold_bell(tmp_path):
    out = tmp_path / "bell.csv"
    code = run(["noise-threshold", "--family", "bell", "--c1", "0.7071", "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert abs(float(row["s_star"]) - 0.6180) < 1e-3
    assert abs(float(row["closed_form"]) - (math.sqrt(5) - 1) / 2) < 1e-3
    meta = json.loads((tmp_path / "bell.csv.meta.json").read_text())
    assert meta["config"]["experiment"] == "noise-threshold"
    assert "version" in meta


def test_jc_thermal_csv_columns(tmp_path):
    out = tmp_path / "jc.csv"
    code = run(
        [
            "jc-thermal",
            "--nbar",
            "0.01",
            "--kt-max",
            "3",
            "--points",
            "40",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "kt,nbar,M11,M22,absM12,lambda_max"
    assert len(lines) == 41
    m12 = [abs(float(l.split(",")[4])) for l in lines[1:]]
    assert max(m12) < 1e-9


def test_tavis_margins_change_sign(tmp_path):
    out = tmp_path / "tavis.csv"
    assert run(["tavis", "--n", "2", "--grid", "200", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "omega_t,atom_field_margin,field_both_margin"
    margins = [float(l.split(",")[1]) for l in lines[1:]]
    signs = {m > 0 for m in margins}
    assert signs == {True, False}


def test_deterministic_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["ppt-crosscheck", "--trials", "12", "--seed", "7"]
    assert run(args + ["--output", str(a)]) == 0
    assert run(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_ppt_crosscheck_reports_no_violations(tmp_path):
    out = tmp_path / "ppt.csv"
    assert run(["ppt-crosscheck", "--trials", "20", "--output", str(out)]) == 0
    meta = json.loads((tmp_path / "ppt.csv.meta.json").read_text())
    assert meta["diagnostics"]["violations"] == 0


def test_invalid_flags_exit_2():
    assert run(["noise-threshold", "--family", "nope"]) == 2
    assert run(["tavis", "--n", "0"]) == 2
    assert run(["jc-thermal", "--nbar", "-0.5"]) == 2
    assert run(["ppt-crosscheck", "--dims", "2xx"]) == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_numerical_failure_exit_3(capsys):
    # displacement too large for the requested truncation
    code = run(["dicke", "--input", "coherent:4.0", "--fock-dim", "8"])
    assert code == 3
    assert "population" in capsys.readouterr().err


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "tavis", "params": {"n": 3, "grid": 50}}))
    code = run(["tavis", "--config", str(cfg), "--grid", "20", "--dump-config"])
    assert code == 0
    resolved = json.loads(capsys.readouterr().out)
    assert resolved["params"]["n"] == 3  # from the file
    assert resolved["params"]["grid"] == 20  # flag wins


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "tavis", "params": {"bogus": 1}}))
    assert run(["tavis", "--config", str(cfg)]) == 2
    cfg.write_text(json.dumps({"experiment": "tavis", "sneaky": True}))
    assert run(["tavis", "--config", str(cfg)]) == 2
    cfg.write_text(json.dumps({"experiment": "dicke"}))
    assert run(["tavis", "--config", str(cfg)]) == 2


def test_json_format_contains_rows_and_config(tmp_path):
    out = tmp_path / "out.json"
    assert run(["tavis", "--n", "1", "--grid", "10", "--format", "json", "--output", str(out)]) == 0
    blob = json.loads(out.read_text())
    assert blob["config"]["params"]["n"] == 1
    assert len(blob["rows"]) == 10
    assert "version" in blob


def test_two_mode_invariant_rows(tmp_path):
    out = tmp_path / "inv.csv"
    assert run(["two-mode-invariant", "--r-values", "0.2,1.1", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, l.split(","))) for l in lines[1:]]
    assert all(r["matrix_entangled"] == "true" for r in rows)
    flips = [r["cond1_entangled"] for r in rows]
    assert flips == ["true", "false"]  # plain test dies past tanh r = 1/sqrt(2)


def test_lur_tmsv_values(tmp_path):
    out = tmp_path / "lur.csv"
    assert run(["lur", "--mode", "tmsv", "--r-values", "0.3", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert float(row["value_pi_phase"]) == pytest.approx(math.exp(-0.6), abs=1e-6)
    assert float(row["value_plus_phase"]) == pytest.approx(math.exp(0.6), abs=1e-6)
    assert row["violated_pi_phase"] == "true"


def test_beamsplitters_epsilon_row(tmp_path):
    out = tmp_path / "bs.csv"
    assert run(["beamsplitters", "--epsilon", "-0.02", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert float(row["simple_margin"]) < 0
    assert row["matrix_entangled"] == "true"
    assert row["sim_matrix_entangled"] == "true"


def test_parse_field_spec_errors():
    with pytest.raises(Exception):
        parse_field_spec("wibble:3", 8)
    v = parse_field_spec("amps:0.6,0,0.8", 8)
    assert np.abs(np.linalg.norm(v) - 1) < 1e-12
