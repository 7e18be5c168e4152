import json
import math

import pytest

from interpnorms.cli import main


def run_to_file(tmp_path, args, name="out.csv"):
    path = tmp_path / name
    code = main(args + ["--out", str(path)])
    return code, path.read_text()


def test_constants_command(tmp_path):
    code, text = run_to_file(tmp_path, ["constants", "--theta", "0.5",
                                        "--q", "2", "inf"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "theta,q,N,N_prime,ratio"
    first = lines[1].split(",")
    assert float(first[2]) == pytest.approx(0.797885, abs=1e-6)
    second = lines[2].split(",")
    assert second[1] == "inf"
    assert float(second[2]) == pytest.approx(1.414214, abs=1e-6)
    for line in lines[1:]:
        ratio = float(line.split(",")[4])
        assert 1.0 - 1e-12 <= ratio <= math.sqrt(2.0) + 1e-12


def test_constants_json(tmp_path):
    code, text = run_to_file(tmp_path,
                             ["constants", "--theta", "0.25", "--q", "2",
                              "--format", "json"], "out.json")
    assert code == 0
    rows = json.loads(text)
    assert list(rows[0].keys()) == ["theta", "q", "N", "N_prime", "ratio"]
    assert rows[0]["theta"] == 0.25


def test_figure1_header_and_midrow(tmp_path):
    code, text = run_to_file(tmp_path, ["figure1", "--grid", "3"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == ("theta,star_norm_phi1,sobolev_norm_phi1,ratio_phi1,"
                        "star_norm_phi2,sobolev_norm_phi2,ratio_phi2")
    mid = lines[2].split(",")
    assert float(mid[0]) == 0.5
    assert float(mid[1]) == pytest.approx(1.816, abs=1e-3)
    assert float(mid[2]) == pytest.approx(1.656, abs=1e-3)
    assert float(mid[3]) == pytest.approx(1.096, abs=2e-3)
    assert float(mid[4]) == pytest.approx(2.522, abs=1e-3)
    assert float(mid[5]) == pytest.approx(2.404, abs=1e-3)
    assert float(mid[6]) == pytest.approx(1.049, abs=2e-3)


def test_figure1_bit_identical(tmp_path):
    _, first = run_to_file(tmp_path, ["figure1", "--grid", "3"], "a.csv")
    _, second = run_to_file(tmp_path, ["figure1", "--grid", "3"], "b.csv")
    assert first == second


def test_figure1_lf_line_endings(tmp_path):
    path = tmp_path / "fig.csv"
    main(["figure1", "--grid", "2", "--out", str(path)])
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")


def test_figure1_plot(tmp_path):
    fig_dir = tmp_path / "figs"
    code, _ = run_to_file(tmp_path, ["figure1", "--grid", "2", "--plot",
                                     "--fig-dir", str(fig_dir)])
    assert code == 0
    assert (fig_dir / "figure1_norms.png").exists()
    assert (fig_dir / "figure1_ratios.png").exists()


def test_interval_ratio_command(tmp_path):
    code, text = run_to_file(tmp_path, ["interval-ratio", "--a", "1"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "a,l2,h1,h2,upper_bound,ratio_bound,below_min_ok"
    row = lines[1].split(",")
    assert float(row[5]) == pytest.approx(0.8633, abs=1e-4)
    assert row[6] == "true"


def test_cusp_command(tmp_path):
    code, text = run_to_file(tmp_path, ["cusp", "--p", "2", "--theta", "0.5",
                                        "--h-points", "5"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("h,l2_norm,h2_plus_norm,interp_bound,slope_l2")
    row = lines[1].split(",")
    assert float(row[5]) == pytest.approx(-1.0, abs=0.05)
    assert row[7] == "true" and row[8] == "true" and row[9] == "true"


def test_cusp_plot(tmp_path):
    fig_dir = tmp_path / "cfigs"
    code, _ = run_to_file(tmp_path, ["cusp", "--h-points", "4", "--plot",
                                     "--fig-dir", str(fig_dir)])
    assert code == 0
    assert (fig_dir / "cusp_scalings.png").exists()


def test_fractal_command(tmp_path):
    code, text = run_to_file(tmp_path, ["fractal", "--nmax", "20"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("n,log10_a,a,a_le_4_pow_minus_n")
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 19  # n = 2..20
    assert all(r[3] == "true" for r in rows)
    assert all(r[9] == "true" for r in rows)
    # witness column equals n
    assert all(int(r[8]) == int(r[0]) for r in rows)


def test_fractal_alpha_mode(tmp_path):
    code_sq, text_sq = run_to_file(tmp_path, ["fractal", "--nmax", "4"],
                                   "sq.csv")
    code_n, text_n = run_to_file(tmp_path,
                                 ["fractal", "--nmax", "4", "--alpha-mode",
                                  "norm"], "n.csv")
    assert code_sq == 0 and code_n == 0
    assert text_sq != text_n


def test_selfcheck_command(tmp_path):
    code, text = run_to_file(tmp_path,
                             ["selfcheck", "--cases", "3", "--format", "json"],
                             "sc.json")
    assert code == 0
    rows = json.loads(text)
    assert {r["suite"] for r in rows} == {
        "k_equals_j", "k_two_routes", "exponent_theta_bound", "reiteration",
        "duality", "symmetry"}
    assert all(r["failures"] == 0 for r in rows)


def test_selfcheck_alias_and_determinism(tmp_path):
    _, a = run_to_file(tmp_path, ["weighted-selfcheck", "--cases", "2"],
                       "a.csv")
    _, b = run_to_file(tmp_path, ["selfcheck", "--cases", "2"], "b.csv")
    assert a == b


def test_selfcheck_negative_control(tmp_path):
    code, text = run_to_file(tmp_path,
                             ["selfcheck", "--cases", "2", "--perturb-n",
                              "1.01"], "bad.csv")
    assert code == 1
    failures = [int(line.split(",")[2]) for line in text.splitlines()[1:]]
    assert sum(failures) > 0


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["constants", "--nonsense"])
    assert exc.value.code == 2


def test_numeric_failure_exit_code(monkeypatch, capsys):
    from interpnorms import cli
    from interpnorms.quadrature import QuadratureError

    def boom(*args, **kwargs):
        raise QuadratureError("synthetic non-convergence")

    monkeypatch.setattr(cli, "figure1_rows", boom)
    assert cli.main(["figure1", "--grid", "2"]) == 3
    assert "numeric failure" in capsys.readouterr().err


def test_bad_value_exit_code(capsys):
    # theta outside (0,1) is a usage error, reported as exit 2.
    assert main(["constants", "--theta", "1.5"]) == 2


def test_stdout_output(capsys):
    assert main(["constants", "--theta", "0.5", "--q", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("theta,q,N,N_prime,ratio\n")
