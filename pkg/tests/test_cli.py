import json
import subprocess
import sys

import pytest

from diracpoint.cli import main
from diracpoint.reports import (
    GridSpec,
    compute_diagram,
    diagram_csv,
    dumps_canonical,
    fmt_float,
)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run_cli(["classify", "--m", "1", "--omega", "0.8", "--kappa", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["region_code"] == "4f-real"
    assert data["spectrally_stable"] is False
    ims = sorted(round(ev["im"], 6) for ev in data["eigenvalues"])
    assert -1.6 in ims and 1.6 in ims
    reals = sorted(ev["re"] for ev in data["eigenvalues"])
    assert reals[-1] == pytest.approx(0.21604, abs=1e-4)


def test_classify_whole_plane(capsys):
    code, out, _ = run_cli(["classify", "--omega", "0", "--kappa", "-1"], capsys)
    data = json.loads(out)
    assert data["region_code"] == "4b-plane"
    assert data["essential"]["whole_plane"] is True
    assert data["alg_mult_zero"] == 6


def test_classify_domain_error_exit_2(capsys):
    code, out, err = run_cli(["classify", "--m", "1", "--omega", "1.0", "--kappa", "1"], capsys)
    assert code == 2
    assert "omega" in err and err.count("\n") == 1


def test_json_round_trip_byte_identical(capsys):
    code, out, _ = run_cli(["classify", "--omega", "0.8", "--kappa", "2"], capsys)
    parsed = json.loads(out)
    re_emitted = dumps_canonical(parsed)
    assert re_emitted == out


def test_roots_report(capsys):
    code, out, _ = run_cli(
        ["roots", "--m", "1", "--kappa", "2", "--omega", "0.7", "--rect", "-1", "1", "-1", "1"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    tags = [r["tag"] for r in data["roots"]]
    assert tags.count("structural") == 2
    nontrivial = [r for r in data["roots"] if r["tag"] == "root" and r["admissible"]]
    found = sorted(r["Lambda"]["re"] for r in nontrivial)
    assert found == pytest.approx([-0.230238, 0.230238], abs=1e-5)


def test_perturb_broken(capsys):
    code, out, _ = run_cli(
        ["perturb", "--model", "broken", "--omega", "0.95", "--kappa", "1", "--epsilon", "0.05"],
        capsys,
    )
    data = json.loads(out)
    assert data["unstable"] is True
    assert data["zeta"]["im"] < 0


def test_perturb_parity(capsys):
    code, out, _ = run_cli(
        ["perturb", "--model", "parity", "--omega", "0.9", "--kappa", "1", "--epsilon", "0.01"],
        capsys,
    )
    data = json.loads(out)
    assert data["unstable"] is False
    assert data["zeta"]["re"] == pytest.approx(0.0038, rel=0.05)
    assert data["zeta"]["im"] == 0.0


def test_perturb_scaling_table(capsys):
    code, out, _ = run_cli(
        [
            "perturb",
            "--model",
            "broken",
            "--kappa",
            "1",
            "--omega-list",
            "0.95,0.97,0.99",
            "--epsilon-list",
            "0.01,0.02,0.05",
        ],
        capsys,
    )
    data = json.loads(out)
    assert len(data["rows"]) == 9
    for slope in data["slope_vs_epsilon"].values():
        assert slope == pytest.approx(2.0, abs=0.05)


def test_perturb_requires_model(capsys):
    code, out, err = run_cli(["perturb", "--omega", "0.9", "--epsilon", "0.01"], capsys)
    assert code == 2


def test_diagram_csv_deterministic(tmp_path, capsys):
    args = ["diagram", "--grid=-2:2:12,-0.9:0.9:10", "--format", "csv"]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(args + ["--out", str(out1), "--jobs", "1"]) == 0
    assert main(args + ["--out", str(out2), "--jobs", "2"]) == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    text = b1.decode()
    assert text.splitlines()[0] == "kappa,omega,region_code,lambda_re,lambda_im,stable"
    assert "\r" not in text
    assert len(text.splitlines()) == 1 + 12 * 10


def test_diagram_bad_grid_exit_2(capsys):
    code, out, err = run_cli(["diagram", "--grid=bogus"], capsys)
    assert code == 2


def test_diagram_svg(tmp_path):
    out = tmp_path / "diagram.svg"
    code = main(
        ["diagram", "--grid=-2:2:40,-0.95:0.95:40", "--format", "svg", "--out", str(out)]
    )
    assert code == 0
    head = out.read_text()[:500]
    assert "<svg" in head


def test_diagram_cells_match_classify():
    grid = GridSpec(-2, 2, 9, -0.9, 0.9, 7)
    cells = compute_diagram(1.0, grid)
    from diracpoint import classify

    for c in cells[:: 7]:
        sc = classify(1.0, c.omega, c.kappa)
        assert sc.region_code == c.region_code
        assert sc.spectrally_stable == c.stable


def test_float_format():
    assert fmt_float(0.75) == "7.500000000000e-01"
    assert fmt_float(-0.0) == "0.000000000000e+00"


def test_console_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "diracpoint.cli", "classify", "--omega", "0.5", "--kappa", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert '"schema": 1' in proc.stdout


def test_jobs_env_var(monkeypatch):
    from diracpoint.reports import default_jobs

    monkeypatch.setenv("DIRACPOINT_JOBS", "4")
    assert default_jobs() == 4
    monkeypatch.setenv("DIRACPOINT_JOBS", "junk")
    assert default_jobs() == 1
    monkeypatch.delenv("DIRACPOINT_JOBS")
    assert default_jobs() == 1
