"""Smoke tests for the python module and the command line contract."""

import json
import math
import os
import subprocess
import sys

import pytest

try:
    import fluidlogic as fl
except ImportError:
    import _fluidlogic as fl

CLI = os.environ.get("FLUIDLOGIC_CLI")
NETLISTS = os.environ.get("FLUIDLOGIC_NETLISTS")


def run_cli(*args, **kw):
    assert CLI, "FLUIDLOGIC_CLI not set"
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def netlist(name):
    assert NETLISTS, "FLUIDLOGIC_NETLISTS not set"
    return os.path.join(NETLISTS, name)


# ---------------------------------------------------------------- module


def test_component_formulas():
    assert fl.hose_resistance(0.45, 2.5e-3) == pytest.approx(4.196e8, rel=1e-3)
    assert fl.membrane_displacement(400.0) == pytest.approx(1.56e-3, rel=1e-3)
    assert fl.orifice_flow(0.0) == 0.0
    assert fl.check_valve_flow(-1e4) == 0.0
    assert fl.and_valve_open(80e3, 69.28e3)
    assert fl.and_valve_open(30e3, 69.28e3)  # pressure gain
    assert not fl.and_valve_open(0.0, 69.28e3)
    assert fl.quantize(8e4) == "1"
    assert fl.quantize(0.0) == "0"
    assert fl.quantize(5e3) == "X"


def test_solve_single_hose():
    text = (
        "src p1 n1 80kPa\n"
        "hose h1 n1 n2 length=45cm diameter=2.5mm\n"
        "tank amb n2\nprobe out n1\n"
    )
    r = fl.solve(text)
    assert r["steady"]
    assert r["flows"]["h1"] == pytest.approx(1.906513532e-4, rel=1e-6)
    assert r["residual"] <= 1e-12


def test_truth_tables_of_templates():
    expected = {
        "or": ["0", "1", "1", "1"],
        "xor": ["0", "1", "1", "0"],
        "and": ["0", "0", "0", "1"],
    }
    for name, levels in expected.items():
        table = fl.truth_table(fl.gate_template(name))
        assert [row["levels"] for row in table["rows"]] == levels


def test_half_adder_tables():
    for name in ("half_adder_1", "half_adder_2"):
        table = fl.truth_table(fl.gate_template(name))
        rows = {row["bits"]: row["levels"] for row in table["rows"]}
        assert rows == {"00": "00", "10": "10", "01": "10", "11": "01"}


def test_compile_and_verify():
    text = fl.compile_expression("a ^ b")
    table = fl.truth_table(text)
    assert [r["levels"] for r in table["rows"]] == ["0", "1", "1", "0"]
    rep = fl.verify_table(
        text, "inputs: in_a in_b\noutputs: out\n00 -> 0\n10 -> 1\n01 -> 1\n11 -> 0\n"
    )
    assert rep["pass"]


def test_oscillator_detection():
    r = fl.solve(fl.gate_template("oscillator"))
    assert not r["steady"]
    assert len(r["cycle"]) >= 3


def test_actuator_mapping():
    for variant in ("I", "II"):
        dominants = [fl.actuate(variant, *bits)["bend"]["dominant"] for bits in ((1, 0), (0, 1), (1, 1))]
        assert dominants == [0, 1, 2]


def test_sweep_monotone():
    points = fl.sweep(fl.gate_template("not"), "in1.pressure", 0.0, 1e5, 21)
    flows = [p["discharge"]["out"] for p in points]
    assert all(a >= b - 1e-15 for a, b in zip(flows, flows[1:]))


# ---------------------------------------------------------------- CLI


def test_cli_sim_ok():
    r = run_cli("sim", netlist("or_gate.fln"), "--set", "in2=0kPa", "--json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["schema"] == 1
    assert doc["steady"]
    assert doc["probes"]["out"] == pytest.approx(69654, rel=0.05)  # ~70 kPa


def test_cli_missing_file_is_input_error():
    r = run_cli("sim", "/nonexistent.fln")
    assert r.returncode == 1
    assert "error" in r.stderr


def test_cli_parse_error_is_input_error(tmp_path):
    bad = tmp_path / "bad.fln"
    bad.write_text("hose h1 n1\n")
    r = run_cli("sim", str(bad))
    assert r.returncode == 1
    assert "line 1" in r.stderr


def test_cli_unknown_set_is_input_error():
    r = run_cli("sim", netlist("or_gate.fln"), "--set", "ghost=1kPa")
    assert r.returncode == 1


def test_cli_oscillator_exit_code():
    r = run_cli("sim", netlist("oscillator.fln"), "--json")
    assert r.returncode == 3
    doc = json.loads(r.stdout)
    assert not doc["steady"]
    assert len(doc["cycle"]) >= 3


def test_cli_divergence_exit_code(tmp_path):
    cfg = tmp_path / "strict.cfg"
    cfg.write_text("tolerance=1e-30\n")
    r = run_cli("--config", str(cfg), "sim", netlist("or_gate.fln"))
    assert r.returncode == 2


def test_cli_config_env(tmp_path):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("theta_hi=100kPa\n")  # nothing quantizes to 1 any more
    env = dict(os.environ, FLUIDLOGIC_CONFIG=str(cfg))
    r = subprocess.run(
        [CLI, "truth", netlist("or_gate.fln")], capture_output=True, text=True, env=env
    )
    assert r.returncode == 0
    assert "X" in r.stdout


def test_cli_truth_format():
    r = run_cli("truth", netlist("half_adder_1.fln"))
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "inputs: in1 in2"
    assert lines[1] == "outputs: Sum Carry"
    assert lines[2:] == ["00 -> 0 0", "10 -> 1 0", "01 -> 1 0", "11 -> 0 1"]


def test_cli_truth_csv_pressures():
    r = subprocess.run(
        [CLI, "truth", netlist("xor_gate.fln"), "--csv"], capture_output=True
    )
    assert r.returncode == 0
    assert b"\r\n" in r.stdout  # RFC 4180 line ends, raw bytes
    header = r.stdout.decode().splitlines()[0]
    assert header == "row,in1,in2,out,out_Pa"


def test_cli_sweep_csv():
    r = run_cli(
        "sweep", netlist("not_bench.fln"), "--var", "in1.pressure",
        "--from", "0", "--to", "100kPa", "--steps", "11", "--csv", "-",
    )
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "value,out_Pa,out_flow"
    flows = [float(line.split(",")[2]) for line in lines[1:]]
    assert len(flows) == 11
    assert all(a >= b - 1e-15 for a, b in zip(flows, flows[1:]))


def test_cli_sweep_step_guard():
    r = run_cli(
        "sweep", netlist("not_bench.fln"), "--var", "in1.pressure",
        "--from", "0", "--to", "1kPa", "--steps", "1",
    )
    assert r.returncode == 1


def test_cli_compile_check_roundtrip(tmp_path):
    out = tmp_path / "xor.fln"
    r = run_cli("compile", "a ^ b", "-o", str(out))
    assert r.returncode == 0

    table = tmp_path / "xor.table"
    table.write_text("inputs: in_a in_b\noutputs: out\n00 -> 0\n10 -> 1\n01 -> 1\n11 -> 0\n")
    assert run_cli("check", str(out), "--table", str(table)).returncode == 0

    wrong = tmp_path / "and.table"
    wrong.write_text("inputs: in_a in_b\noutputs: out\n00 -> 0\n10 -> 0\n01 -> 0\n11 -> 1\n")
    r = run_cli("check", str(out), "--table", str(wrong), "--json")
    assert r.returncode == 4
    doc = json.loads(r.stdout)
    assert not doc["pass"]
    assert doc["mismatches"]


def test_cli_compile_expr_error():
    assert run_cli("compile", "a &").returncode == 1


def test_cli_actuate():
    r = run_cli("actuate", "--half-adder", "I", "--in1", "1", "--in2", "1", "--json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["bend"]["dominant"] == "M"
    assert doc["chambers"]["M"] > 7e4


def test_cli_json_and_table_carry_identical_data():
    j = run_cli("sim", netlist("or_gate.fln"), "--json")
    t = run_cli("sim", netlist("or_gate.fln"), "--table")
    doc = json.loads(j.stdout)
    # every probe value printed in the table appears in the json document
    out_pressure = doc["probes"]["out"]
    assert f"out = {out_pressure:.9g}" in t.stdout
    assert "schema = 1" in t.stdout
