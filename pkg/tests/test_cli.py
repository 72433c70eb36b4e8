"""Command-line front end: golden values, determinism, exit codes, formats."""

import json

import pytest
from mpmath import mp, mpf, sqrt

from sixvertex.cli import main, parse_grid, parse_int_range


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_int_range():
    assert parse_int_range("5") == [5]
    assert parse_int_range("1..4") == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        parse_int_range("4..1")


def test_parse_grid_counts():
    assert len(parse_grid("-0.9..0.9..0.1", 128)) == 19
    assert len(parse_grid("0.5", 128)) == 1


def test_exact_ice_point_golden(capsys):
    code, out, _ = run(["exact", "--phase", "d", "--gamma", "1.0471975512",
                        "--t", "0", "--n", "5", "--bits", "256"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,log_tau_scaled,Z,log_Z_over_N2"
    field = lines[1].split(",")[2]
    with mp.workprec(300):
        # gamma is only the 10-digit approximation of pi/3, so compare at the
        # matching accuracy: Z_5 = (sqrt3/2)^25 * 429
        expected = (sqrt(mpf(3)) / 2) ** 25 * 429
        assert abs(mpf(field) - expected) / expected < mpf("1e-9")


def test_exact_row_count(capsys):
    code, out, _ = run(["exact", "--phase", "af", "--gamma", "1.0", "--t",
                        "0.3", "--n", "1..10", "--bits", "128"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 11


def test_invalid_region_exits_2(capsys):
    code, _, err = run(["exact", "--phase", "fe", "--gamma", "2", "--t", "1"],
                       capsys)
    assert code == 2
    assert "|gamma| < t" in err


def test_determinism_and_out_file(tmp_path, capsys):
    args = ["exact", "--phase", "af", "--gamma", "1.0", "--t", "0.25",
            "--n", "1..6", "--bits", "192"]
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_jobs_match_serial(tmp_path):
    args = ["exact", "--phase", "d", "--gamma", "0.9", "--t", "0.2",
            "--n", "1..5", "--bits", "128"]
    f1, f2 = tmp_path / "serial.csv", tmp_path / "par.csv"
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--jobs", "2", "--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_check_toda_passes(capsys):
    code, out, _ = run(["check", "toda", "--phase", "af", "--gamma", "1",
                        "--t", "0.2", "--n", "1..4", "--bits", "128"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert all(line.endswith("pass") for line in lines[1:])


def test_check_oracle_passes(capsys):
    code, out, _ = run(["check", "oracle", "--n", "1..3", "--bits", "192"],
                       capsys)
    assert code == 0
    assert all(line.endswith("pass") for line in out.strip().splitlines()[1:])


def test_check_identities_passes(capsys):
    code, out, _ = run(["check", "identities", "--bits", "128"], capsys)
    assert code == 0
    assert all(line.endswith("pass") for line in out.strip().splitlines()[1:])


def test_check_laplace(capsys):
    code, out, _ = run(["check", "laplace", "--gamma", "1", "--t", "0.3",
                        "--imax", "3", "--bits", "96"], capsys)
    assert code == 0
    assert "laplace_moments_max_err" in out


def test_check_ode_both_branches(capsys):
    code, out, _ = run(["check", "ode", "--phase", "d", "--gamma", "1",
                        "--t", "0.3", "--bits", "96"], capsys)
    assert code == 0
    assert "f_second_derivative_vs_exp2f" in out
    code, out, _ = run(["check", "ode", "--phase", "af", "--gamma", "1",
                        "--zeta", "0.2", "--ansatz-n", "4", "--bits", "96"],
                       capsys)
    assert code == 0
    assert "toda_of_theta_ansatz" in out


def test_check_derivative_af(capsys):
    code, out, _ = run(["check", "derivative", "--phase", "af", "--gamma",
                        "1", "--zeta", "0.4", "--bits", "96"], capsys)
    assert code == 0
    assert "chemical_potential_residual" in out


def test_bulk_grid_rows(capsys):
    code, out, _ = run(["bulk", "--phase", "af", "--gamma", "1", "--zeta",
                        "-0.9..0.9..0.1", "--bits", "96"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 20


def test_density_symmetric_profile(capsys):
    code, out, _ = run(["density", "--phase", "d", "--gamma", "1.0",
                        "--zeta", "0", "--grid", "8", "--bits", "96"], capsys)
    assert code == 0
    lines = out.strip().splitlines()[1:]
    assert len(lines) == 8
    rhos = [mpf(l.split(",")[1]) for l in lines]
    with mp.workprec(128):
        # zeta = 0 makes the potential even: profile symmetric under mu -> -mu
        for a, b in zip(rhos, reversed(rhos)):
            assert abs(a - b) < mpf("1e-12")


def test_fit_af_json(capsys):
    code, out, _ = run(["fit", "--phase", "af", "--gamma", "1", "--zeta", "0",
                        "--n", "2..9", "--bits", "256", "--format", "json"],
                       capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["meta"]["spread_top_half"]
    assert len(payload["rows"]) == 8


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"phase": "af", "gamma": "1.0", "t": "0.3",
                               "n": "2", "bits": 128}))
    code, out, _ = run(["exact", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_unwritable_out_exits_1(tmp_path, capsys):
    code, _, err = run(["exact", "--phase", "af", "--gamma", "1.0", "--t",
                        "0.3", "--n", "1", "--bits", "128",
                        "--out", str(tmp_path / "missing" / "x.csv")], capsys)
    assert code == 1
    assert "i/o error" in err


def test_env_var_bits(monkeypatch, capsys):
    monkeypatch.setenv("SIXVERTEX_BITS", "128")
    code, out, _ = run(["exact", "--phase", "af", "--gamma", "1.0",
                        "--t", "0.3", "--n", "1", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["meta"]["bits"] == 128
