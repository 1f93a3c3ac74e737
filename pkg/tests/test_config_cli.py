import csv
import subprocess
import sys
from pathlib import Path

import pytest

from h2ion import cli
from h2ion.config import ConfigError, parse_config, parse_state, transition_from_config

ROOT = Path(__file__).resolve().parents[1]
REFERENCE = ROOT / "configs" / "reference.cfg"

SMALL = """
[run]
seed = 7
[trap]
B0 = 4.0
nu_z = 1e6
nu_plus = 30.48e6
nu_minus = 16.4e3
T_z = 4.2
T_plus = 4.2
[transition]
lower = 0 2 +1/2 0
upper = 2 2 +1/2 0
f0 = 127e12
[levels]
levels = 0,2; 2,2
B = 2, 4, 7
[sensitivity]
scan_steps = 31
[budget]
intensity = 0.1
[rabi]
intensity = 0.1
target = 0.2
[lineshape]
delta_int = 0.12
T_z = 4.2
f0 = 127e12
multipliers = 1, 10
grid_points = 20001
fit_noise = 0.01
[cooling]
duration = 0.02
n_steps = 2
energies = 0.5
ensemble_T = 4.0
ensemble_n = 3
map_energies = 0.001, 0.01
map_nu = 300e3
[bottle]
nu_z = 1e6
"""


def _write(tmp_path, text=SMALL, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return p


def _run(cmd, cfg, out, *extra):
    return cli.main([cmd, "--config", str(cfg), "--out", str(out), *extra])


def _read(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_parse_config_grammar():
    cfg = parse_config("# c\n[trap]\nb0 = 4.0  # tesla\nnu_z=1e6\n")
    assert cfg.float("trap", "B0") == 4.0
    assert cfg.get("trap", "nu_z") == "1e6"
    for bad, msg in [("[nope]\n", "unknown block"), ("[trap]\nfoo = 1\n", "unknown key"),
                     ("x = 1\n", "outside any block"), ("[trap]\nB0 4\n", "key = value"),
                     ("[trap]\n[trap]\n", "duplicate block"), ("[trap]\nB0=1\nB0=2\n", "duplicate key")]:
        with pytest.raises(ConfigError, match=msg):
            parse_config(bad)
    cfg = parse_config("[trap]\nB0 = four\n")
    with pytest.raises(ConfigError, match=r"\[trap\] B0"):
        cfg.float("trap", "B0")


def test_parse_state_and_transition():
    s = parse_state("0 2 -1/2 1", "antimatter")
    assert (s.v, s.N, float(s.M_s), s.M_N, s.species.value) == (0, 2, -0.5, 1, "antimatter")
    with pytest.raises(ConfigError):
        parse_state("0 2 1 1")
    with pytest.raises(ConfigError, match=r"missing \[transition\] block"):
        transition_from_config(parse_config("[trap]\nB0=4\n"))


def test_reference_config_dry_run_all_commands(tmp_path, capsys):
    for cmd in cli.COMMANDS:
        assert _run(cmd, REFERENCE, tmp_path / "o", "--dry-run") == 0
        assert "is valid" in capsys.readouterr().out
    assert not (tmp_path / "o").exists()


def test_levels_output(tmp_path):
    assert _run("levels", _write(tmp_path), tmp_path / "o") == 0
    rows = _read(tmp_path / "o" / "levels.csv")
    assert rows[0][:9] == ["v", "N", "B_T", "M_F", "group", "M_N", "E_exact_Hz", "E_table2_Hz",
                           "difference_Hz"]
    assert len(rows) == 1 + 2 * 3 * 10
    assert all(abs(float(r[8])) < 50 for r in rows[1:])


def test_levels_small_field_flagged(tmp_path):
    text = SMALL.replace("B = 2, 4, 7", "B = 0.0001")
    assert _run("levels", _write(tmp_path, text), tmp_path / "o") == 0
    rows = _read(tmp_path / "o" / "levels.csv")[1:]
    assert any(r[-1] == "false" for r in rows)


def test_missing_level_is_config_error(tmp_path, capsys):
    text = SMALL.replace("levels = 0,2; 2,2", "levels = 5,2")
    assert _run("levels", _write(tmp_path, text), tmp_path / "o") == 2
    assert "level (5, 2) not in table" in capsys.readouterr().err


def test_empty_transition_list(tmp_path, capsys):
    text = SMALL.replace("[sensitivity]\n", "[sensitivity]\ntransitions =\n")
    assert _run("sensitivity", _write(tmp_path, text), tmp_path / "o") == 2
    assert "empty transition list" in capsys.readouterr().err


@pytest.mark.parametrize("cmd,block", [("budget", "transition"), ("bottle", "trap"),
                                       ("lineshape", "lineshape"), ("cooling", "cooling")])
def test_missing_block_names_block(tmp_path, capsys, cmd, block):
    start = SMALL.index(f"[{block}]")
    end = SMALL.find("[", start + 1)
    text = SMALL[:start] + (SMALL[end:] if end > 0 else "")
    assert _run(cmd, _write(tmp_path, text), tmp_path / "o") == 2
    assert f"[{block}]" in capsys.readouterr().err


def test_bad_values_exit_2(tmp_path):
    assert _run("budget", _write(tmp_path, SMALL.replace("B0 = 4.0", "B0 = -1")), tmp_path / "o") == 2
    assert _run("cooling", _write(tmp_path, SMALL.replace("[cooling]\n", "[cooling]\ns0 = 9\n")),
                tmp_path / "o") == 2
    assert cli.main(["levels"]) == 2
    assert cli.main(["levels", "--config", str(tmp_path / "absent.cfg")]) == 2
    assert _run("levels", _write(tmp_path), tmp_path / "o", "--seed", "-3") == 2


def test_computation_failure_exit_1(tmp_path, monkeypatch, capsys):
    def boom(ctx):
        raise RuntimeError("diverged")

    monkeypatch.setitem(cli.COMMANDS, "levels", boom)
    assert _run("levels", _write(tmp_path), tmp_path / "o") == 1
    assert "diverged" in capsys.readouterr().err


def test_rabi_report(tmp_path):
    assert _run("rabi", _write(tmp_path), tmp_path / "o") == 0
    rows = dict(_read(tmp_path / "o" / "rabi.csv")[1:])
    assert float(rows["per_sqrt_intensity_M_N=0"]) == pytest.approx(0.589, rel=0.005)
    assert float(rows["per_sqrt_intensity_M_N=1"]) == pytest.approx(0.295, rel=0.005)


def test_bottle_and_budget_outputs(tmp_path):
    cfg = _write(tmp_path)
    assert _run("bottle", cfg, tmp_path / "o") == 0
    assert _run("budget", cfg, tmp_path / "o") == 0
    rows = dict(_read(tmp_path / "o" / "bottle.csv")[1:])
    assert rows["feasible"] == "false"
    items = [r[0] for r in _read(tmp_path / "o" / "budget.csv")[1:]]
    assert "total" in items


def test_csv_dialect(tmp_path):
    assert _run("sensitivity", _write(tmp_path), tmp_path / "o") == 0
    raw = (tmp_path / "o" / "table4.csv").read_bytes()
    assert b"\r\n" not in raw and raw.endswith(b"\n")
    rows = _read(tmp_path / "o" / "table4.csv")
    assert len(rows) == 1 + 10 + 38
    # shortest round-trip floats
    for r in rows[1:]:
        assert repr(float(r[5])) == r[5]


def test_determinism_byte_identical(tmp_path):
    cfg = _write(tmp_path)
    for out in ("a", "b"):
        for cmd in cli.COMMANDS:
            assert _run(cmd, cfg, tmp_path / out) == 0, cmd
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert "cooling_ensemble.csv" in files and "fit_report.txt" in files
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name
    # a different seed changes the seeded outputs
    assert _run("cooling", cfg, tmp_path / "c", "--seed", "8") == 0
    assert ((tmp_path / "c" / "cooling_ensemble.csv").read_bytes()
            != (tmp_path / "a" / "cooling_ensemble.csv").read_bytes())


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "h2ion", "levels", "--config", str(_write(tmp_path)),
                        "--dry-run"], capture_output=True, text=True)
    assert r.returncode == 0 and "is valid" in r.stdout
    r = subprocess.run([sys.executable, "-m", "h2ion", "--version"], capture_output=True, text=True)
    assert r.returncode == 0
