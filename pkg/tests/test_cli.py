"""Command line behavior: artifacts, exit codes, determinism."""

from __future__ import annotations

import json
import math
import subprocess
import sys

import pytest

from frftzak.cli import InputError, main, parse_angle, parse_phases, \
    parse_signal


def test_parse_angle_forms():
    assert parse_angle("pi/4") == pytest.approx(math.pi / 4)
    assert parse_angle("3pi/5") == pytest.approx(3 * math.pi / 5)
    assert parse_angle("-pi/6") == pytest.approx(-math.pi / 6)
    assert parse_angle("2.5pi") == pytest.approx(2.5 * math.pi)
    assert parse_angle("0.7") == 0.7
    with pytest.raises(InputError):
        parse_angle("quarter turn")


def test_parse_signal_forms():
    assert parse_signal("gaussian").support == pytest.approx(
        parse_signal("gaussian:1").support)
    assert parse_signal("box:-1:1").support == (-1.0, 1.0)
    assert parse_signal("raised-cosine:0:0.5").support == (0.0, 0.5)
    with pytest.raises(InputError, match="unknown signal"):
        parse_signal("sawtooth:0:1")
    with pytest.raises(InputError, match="window"):
        parse_signal("box:1")
    with pytest.raises(InputError):
        parse_signal("box:1:0")     # empty window, constructor refuses


def test_parse_phases_half_turn_units():
    one, minus = parse_phases("0,1")
    assert one == pytest.approx(1.0)
    assert minus == pytest.approx(-1.0)
    third = parse_phases("1/3")[0]
    assert third == pytest.approx(complex(0.5, math.sqrt(3) / 2))


def test_coeffs_artifacts_and_table(tmp_path, capsys):
    out = tmp_path / "c"
    code = main(["coeffs", "--p", "3", "--q", "5", "--out", str(out),
                 "--no-figures"])
    assert code == 0
    stdout = capsys.readouterr().out
    assert stdout.startswith("n,re,im,abs\n")
    assert "PASS gauss coefficient modulus slope=3/5" in stdout
    table = (out / "coeffs.csv").read_text()
    assert len(table.splitlines()) == 1 + 21    # header + n in [-10, 10]
    config = json.loads((out / "coeffs_config.json").read_text())
    assert config["command"] == "coeffs"
    assert config["config"]["n_range"] == [-10, 10]
    bundle = json.loads((out / "coeffs_report.json").read_text())
    assert bundle["reports"][0]["pass"] is True
    assert not (out / "coeffs.png").exists()


def test_coeffs_rejects_non_coprime(tmp_path, capsys):
    code = main(["coeffs", "--p", "2", "--q", "4",
                 "--out", str(tmp_path), "--no-figures"])
    assert code == 2
    assert "coprime" in capsys.readouterr().err


def test_frft_trace_and_config_echo(tmp_path):
    out = tmp_path / "f"
    code = main(["frft", "--signal", "bump:-0.5:0.8", "--angle", "3pi/5",
                 "--window", "-2:2:81", "--out", str(out), "--no-figures"])
    assert code == 0
    rows = (out / "frft_trace.csv").read_text().splitlines()
    assert rows[0] == "t,re,im"
    assert len(rows) == 82
    config = json.loads((out / "frft_config.json").read_text())
    assert config["config"]["angle"] == pytest.approx(3 * math.pi / 5)
    assert config["config"]["chirp_sign"] == -1


def test_frft_rejects_degenerate_angle(tmp_path, capsys):
    code = main(["frft", "--signal", "gaussian", "--angle", "pi",
                 "--out", str(tmp_path), "--no-figures"])
    assert code == 2
    assert capsys.readouterr().err.startswith("error:")


def test_zak_grid_csv(tmp_path):
    out = tmp_path / "z"
    code = main(["zak", "--signal", "gaussian", "--grid", "16x12",
                 "--out", str(out), "--no-figures"])
    assert code == 0
    rows = (out / "zak_grid.csv").read_text().splitlines()
    assert rows[0] == "x,xi,re,im"
    assert len(rows) == 1 + 16 * 12
    bundle = json.loads((out / "zak_report.json").read_text())
    assert {r["check"] for r in bundle["reports"]} == {
        "zak unitarity", "zak quasi-periodicity",
        "zak frequency periodicity", "zak poisson",
        "zak time marginal", "zak frequency marginal"}


def test_oblique_check_pass_and_fail(tmp_path):
    ok = main(["oblique-check", "--p", "2", "--q", "1",
               "--signal", "bump:-0.4:0.8", "--xi-range", "-2:2:41",
               "--out", str(tmp_path / "ok"), "--no-figures"])
    assert ok == 0
    for name in ("oblique-check_zak_route.csv", "oblique-check_direct.csv"):
        assert (tmp_path / "ok" / name).exists()
    bad = main(["oblique-check", "--p", "2", "--q", "1",
                "--signal", "bump:-0.4:0.8", "--xi-range", "-2:2:41",
                "--tol", "1e-17", "--out", str(tmp_path / "bad"),
                "--no-figures"])
    assert bad == 1


def test_approx_pauli_roundtrip(tmp_path):
    targets = tmp_path / "targets.json"
    targets.write_text(json.dumps([
        {"shape": "triangle", "a": -1, "b": 1},
        {"shape": "box", "a": -1, "b": 1}]))
    out = tmp_path / "a"
    code = main(["approx-pauli", "--targets", str(targets),
                 "--angles", "0,pi/2", "--epsilon", "0.05",
                 "--out", str(out), "--no-figures"])
    assert code == 0
    bundle = json.loads((out / "approx-pauli_report.json").read_text())
    assert bundle["solution"]["omegas"] == [1.875, 7.375]
    assert (out / "approx-pauli_angle0.csv").exists()
    assert (out / "approx-pauli_angle1.csv").exists()


def test_approx_pauli_uncertifiable_epsilon(tmp_path, capsys):
    targets = tmp_path / "targets.json"
    targets.write_text(json.dumps([
        {"shape": "triangle", "a": -1, "b": 1},
        {"shape": "box", "a": -1, "b": 1}]))
    code = main(["approx-pauli", "--targets", str(targets),
                 "--angles", "0,pi/2", "--epsilon", "1e-6",
                 "--out", str(tmp_path), "--no-figures"])
    assert code == 1
    assert "not certifiable" in capsys.readouterr().err


def test_approx_pauli_bad_targets(tmp_path, capsys):
    missing = main(["approx-pauli", "--targets", str(tmp_path / "no.json"),
                    "--angles", "0", "--out", str(tmp_path),
                    "--no-figures"])
    assert missing == 3
    bad = tmp_path / "bad.json"
    bad.write_text('[{"shape": "gaussian", "a": -1, "b": 1}]')
    code = main(["approx-pauli", "--targets", str(bad), "--angles", "0",
                 "--out", str(tmp_path), "--no-figures"])
    assert code == 2
    assert "unknown shape" in capsys.readouterr().err


def test_selftest_subset_is_deterministic(tmp_path):
    args = ["selftest", "--criteria", "gauss-modulus,chirp-moment",
            "--no-figures"]
    assert main(args + ["--out", str(tmp_path / "one")]) == 0
    assert main(args + ["--out", str(tmp_path / "two")]) == 0
    first = (tmp_path / "one" / "selftest_report.json").read_bytes()
    second = (tmp_path / "two" / "selftest_report.json").read_bytes()
    assert first == second
    summary = (tmp_path / "one" / "selftest_summary.csv").read_text()
    assert summary.splitlines()[0] == "criterion,check,max_error,tolerance,pass"


def test_selftest_rejects_unknown_criterion(tmp_path, capsys):
    code = main(["selftest", "--criteria", "nope", "--out", str(tmp_path),
                 "--no-figures"])
    assert code == 2
    assert "unknown criteria" in capsys.readouterr().err


def test_tol_file_paths(tmp_path, capsys):
    tight = tmp_path / "tight.json"
    tight.write_text('{"gauss_modulus": 1e-30}')
    code = main(["coeffs", "--p", "1", "--q", "3", "--tol-file", str(tight),
                 "--out", str(tmp_path / "t"), "--no-figures"])
    assert code == 1    # machine noise exceeds an impossible gate
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text('{"frobnicate": 1}')
    code = main(["coeffs", "--p", "1", "--q", "3", "--tol-file", str(bad),
                 "--out", str(tmp_path / "b"), "--no-figures"])
    assert code == 2
    code = main(["coeffs", "--p", "1", "--q", "3",
                 "--tol-file", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "m"), "--no-figures"])
    assert code == 3


def test_out_dir_collision_is_io_error(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("a file, not a directory")
    code = main(["coeffs", "--p", "1", "--q", "2",
                 "--out", str(blocker / "sub"), "--no-figures"])
    assert code == 3
    assert "i/o error" in capsys.readouterr().err


def test_figures_written_by_default(tmp_path):
    out = tmp_path / "fig"
    code = main(["coeffs", "--p", "1", "--q", "2", "--out", str(out)])
    assert code == 0
    assert (out / "coeffs.png").stat().st_size > 0


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "frftzak.cli", "zak", "--signal",
         "box:-0.25:0.75", "--grid", "8x8", "--out", str(tmp_path),
         "--no-figures"],
        capture_output=True, text=True)
    # box fails the truncated Poisson sum by design; everything else holds
    assert proc.returncode == 1
    assert "FAIL zak poisson" in proc.stdout
    assert "PASS zak unitarity" in proc.stdout
