import json
import math
import subprocess
import sys

import numpy as np
import pytest
import scipy.special

from bezquad.cli import main
from bezquad.io import bundled

CIRCLE = str(bundled("circle.region.json"))
CUBE = str(bundled("cube.solid.json"))
CYLINDER = str(bundled("cylinder.solid.json"))

EXP_DISK = 2 * math.pi * scipy.special.iv(1, math.sqrt(2)) / math.sqrt(2)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rule2d_pe_counts(capsys):
    code, out, err = run(
        capsys, "rule2d", "--region", CIRCLE, "--mode", "pe", "--degree", "3"
    )
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "x,y,weight,curve,q,zeta"
    assert len(lines) == 1 + 104


def test_rule2d_spectral_counts(capsys):
    code, out, _ = run(
        capsys, "rule2d", "--region", CIRCLE, "--mode", "spectral", "--order", "6"
    )
    assert code == 0
    assert len(out.splitlines()) == 1 + 4 * 6 * 6


def test_rule2d_flag_mismatch(capsys):
    code, _, err = run(capsys, "rule2d", "--region", CIRCLE, "--mode", "spectral")
    assert code == 1 and "--order" in err
    code, _, err = run(
        capsys, "rule2d", "--region", CIRCLE, "--mode", "pe", "--order", "4",
        "--degree", "2",
    )
    assert code == 1 and "--mode spectral" in err


def test_rule_surface_counts(capsys):
    code, out, _ = run(capsys, "rule-surface", "--solid", CUBE, "--orders", "4,4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,z,weight,patch,loop,segment,mu,eta"
    assert len(lines) == 1 + 6 * 16


def test_rule_volume_counts(capsys):
    code, out, _ = run(capsys, "rule-volume", "--solid", CUBE, "--orders", "4,4,4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,z,weight,patch,sigma,psi"
    assert len(lines) == 1 + 6 * 16 * 4


def test_orders_validation(capsys):
    code, _, err = run(capsys, "rule-volume", "--solid", CUBE, "--orders", "4,4")
    assert code == 1 and "3" in err
    code, _, err = run(capsys, "rule-surface", "--solid", CUBE, "--orders", "4,a")
    assert code == 1 and "integers" in err
    code, _, err = run(capsys, "rule-surface", "--solid", CUBE, "--orders", "0,4")
    assert code == 1 and "at least 1" in err


def test_integrate_pe_circle_area(capsys):
    code, out, _ = run(capsys, "integrate", "--model", CIRCLE, "--expr", "1", "--pe")
    assert code == 0
    assert float(out) == pytest.approx(math.pi, abs=1e-10)


def test_integrate_spectral_default_orders(capsys):
    code, out, _ = run(capsys, "integrate", "--model", CIRCLE, "--expr", "exp(x+y)")
    assert code == 0
    assert float(out) == pytest.approx(EXP_DISK, abs=1e-11)


def test_integrate_solid(capsys):
    code, out, _ = run(capsys, "integrate", "--model", CUBE, "--expr", "1")
    assert code == 0
    assert float(out) == pytest.approx(1.0, abs=1e-12)
    code, out, _ = run(
        capsys, "integrate", "--model", CYLINDER, "--expr", "1", "--orders", "12,12,12"
    )
    assert float(out) == pytest.approx(math.pi, abs=1e-10)


def test_integrate_saved_rule_matches_direct(capsys, tmp_path):
    path = tmp_path / "rule.csv"
    code, _, _ = run(
        capsys,
        "rule2d",
        "--region",
        CIRCLE,
        "--mode",
        "spectral",
        "--order",
        "14",
        "--out",
        str(path),
    )
    assert code == 0
    code, out, _ = run(
        capsys, "integrate", "--rule", str(path), "--expr", "x^2 + y^2"
    )
    assert code == 0
    assert float(out) == pytest.approx(math.pi / 2, abs=1e-12)


def test_integrate_pe_rejects_non_polynomial(capsys):
    code, _, err = run(
        capsys, "integrate", "--model", CIRCLE, "--expr", "exp(x)", "--pe"
    )
    assert code == 1
    assert "polynomial" in err and "drop --pe" in err


def test_integrate_pe_rejects_solid(capsys):
    code, _, err = run(capsys, "integrate", "--model", CUBE, "--expr", "x", "--pe")
    assert code == 1 and "planar" in err


def test_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "integrate", "--model", CIRCLE, "--expr", "x +")
    assert code == 1 and "offset 3" in err


def test_domain_error_exit_2(capsys):
    code, _, err = run(capsys, "integrate", "--model", CIRCLE, "--expr", "log(x - 5)")
    assert code == 2 and "domain error" in err


def test_missing_file_exit_1(capsys):
    code, _, err = run(capsys, "integrate", "--model", "/nope.json", "--expr", "1")
    assert code == 1 and "no such file" in err


def test_usage_errors_exit_1(capsys):
    assert main(["badcmd"]) == 1
    assert main([]) == 1
    assert main(["integrate", "--expr", "1"]) == 1  # neither --rule nor --model
    capsys.readouterr()


def test_moments_output(capsys):
    code, out, _ = run(capsys, "moments", "--model", CIRCLE, "--max-degree", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "a,b,value"
    vals = {tuple(map(int, l.split(",")[:2])): float(l.split(",")[2]) for l in lines[1:]}
    assert vals[(0, 0)] == pytest.approx(math.pi, abs=1e-10)
    assert vals[(2, 0)] == pytest.approx(math.pi / 4, abs=1e-10)


def test_fit_trim_json_shape(capsys, tmp_path):
    t = np.linspace(0, 2 * math.pi, 25)
    path = tmp_path / "pts.csv"
    path.write_text(
        "".join(
            f"{0.5 + 0.4 * math.cos(a):.17g},{0.5 + 0.4 * math.sin(a):.17g}\n"
            for a in t
        )
    )
    code, out, _ = run(capsys, "fit-trim", "--points", str(path), "--segments", "4")
    assert code == 0
    loops = json.loads(out)
    assert len(loops) == 1 and len(loops[0]) == 4
    assert all(c["degree"] == 3 for c in loops[0])
    assert all(len(c["points"]) == 4 for c in loops[0])
    # fitted loops are directly pasteable into a solid file's trim_loops
    assert set(loops[0][0]) == {"degree", "points", "weights"}


def test_convergence_circle(capsys):
    code, out, _ = run(
        capsys,
        "convergence",
        "--model",
        CIRCLE,
        "--expr",
        "exp(x+y)",
        "--orders",
        "4:20:2",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order,n_points,value,error"
    assert len(lines) == 1 + 9
    errors = [float(l.split(",")[3]) for l in lines[1:]]
    assert errors[-1] <= 1e-12
    assert errors[0] > errors[4] > errors[-1]  # decreasing toward the reference


def test_convergence_cube_exact_everywhere(capsys):
    code, out, _ = run(
        capsys, "convergence", "--model", CUBE, "--expr", "1", "--orders", "2:6:2"
    )
    assert code == 0
    for line in out.splitlines()[1:]:
        assert float(line.split(",")[3]) <= 1e-13


def test_convergence_bad_range(capsys):
    code, _, err = run(
        capsys, "convergence", "--model", CIRCLE, "--expr", "1", "--orders", "20:4:2"
    )
    assert code == 1 and "LO" in err


def test_out_flag_writes_file_quietly(capsys, tmp_path):
    path = tmp_path / "m.csv"
    code, out, _ = run(
        capsys, "moments", "--model", CIRCLE, "--max-degree", "1", "--out", str(path)
    )
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[0] == "a,b,value"


def test_byte_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(
            capsys,
            "rule-volume",
            "--solid",
            CYLINDER,
            "--orders",
            "8,8,6",
            "--out",
            str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bezquad.cli", "integrate", "--model", CIRCLE,
         "--expr", "x^2", "--pe"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert float(proc.stdout) == pytest.approx(math.pi / 4, abs=1e-10)
