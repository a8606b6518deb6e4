import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from relpres.cli import RunConfig, main, run

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("omega_example", ["omega-check", "data/omega_example.json"], 0),
    ("omega_triangle", ["omega-check", "data/omega_triangle.json"], 1),
    ("sc_a4", ["sc-check", "data/a4.json", "--lambda", "1/6"], 1),
    ("up_z2", ["up-check", "data/up_z2.json"], 0),
    ("up_torsion", ["up-check", "data/up_z2_torsion.json"], 1),
    ("analyze", ["analyze", "data/presentation.json"], 0),
    ("analyze_generalized", ["analyze", "data/generalized.json"], 0),
    ("malformed", ["omega-check", "data/malformed.json"], 2),
    ("diagram_validate", ["diagram", "validate", "data/diagram_balloon.json"], 0),
    ("diagram_simulate", ["diagram", "simulate", "data/diagram_sandwich_m1.json"], 0),
    ("diagram_parity", ["diagram", "parity", "data/diagram_sandwich_m1.json"], 0),
    ("diagram_reduce", ["diagram", "reduce", "data/diagram_three_b.json", "--edge", "e"], 0),
]


def invoke(args, capsys):
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        status = main(args)
    finally:
        os.chdir(cwd)
    return status, capsys.readouterr().out


@pytest.mark.parametrize("name,args,status", CASES, ids=[c[0] for c in CASES])
def test_golden(name, args, status, capsys):
    got_status, out = invoke(args, capsys)
    assert got_status == status
    golden = GOLDEN / f"{name}.json"
    if os.environ.get("RELPRES_REGEN"):
        golden.write_text(out)
    assert out == golden.read_text()


def test_deterministic(capsys):
    a = invoke(["diagram", "simulate", "data/diagram_sandwich_m1.json"], capsys)
    b = invoke(["diagram", "simulate", "data/diagram_sandwich_m1.json"], capsys)
    assert a == b


def test_schema_error_has_pointer(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"I": ["a"], "Omega": [["a"], "oops"]}))
    status, text = run(RunConfig("omega-check", input=p))
    assert status == 2
    assert json.loads(text)["pointer"] == "/Omega/1"


def test_bad_syllable_pointer(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"factors": {"F": {"kind": "free", "basis": ["a"]}},
                             "relators": [[{"factor": "F", "elem": "a"}, {"oops": 1}]]}))
    status, text = run(RunConfig("sc-check", input=p, lam=Fraction(1, 6)))
    assert status == 2 and json.loads(text)["pointer"] == "/relators/0/1"


def test_missing_file():
    status, text = run(RunConfig("omega-check", input=Path("/nonexistent.json")))
    assert status == 2


def test_family_mode_and_output_file(tmp_path):
    out = tmp_path / "r.json"
    status = main(["sc-check", "--family", "section5", "--count", "2", "--blocks", "10",
                   "--lambda", "1/6", "-o", str(out)])
    rep = json.loads(out.read_text())
    assert status == 0 and rep["holds"] and rep["ratio"] == "2/21"


def test_bad_lambda_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["sc-check", "data/a4.json", "--lambda", "-1/2"])
    assert err.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relpres.cli", "omega-check",
                           str(DATA / "omega_example.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ok"]
