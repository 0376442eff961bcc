import os
import subprocess
import sys

import pytest

from hyperdual.cli import main
from hyperdual.hypergraph import parse_hypergraph

FIG_TEXT = "K 5\nE 4\ne 1\ne 1 2 4 5\ne 2 3\ne 3 5\n"


@pytest.fixture
def fig_file(tmp_path):
    p = tmp_path / "fig.hg"
    p.write_text(FIG_TEXT)
    return str(p)


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ortho_stdout(fig_file, capsys):
    code, out, _ = run(["ortho", fig_file], capsys)
    assert code == 0
    assert out == "K 5\nE 1\ne 2 3 5\n"


def test_dual_output_file(fig_file, tmp_path, capsys):
    dest = tmp_path / "dual.hg"
    code, out, _ = run(["dual", fig_file, "-o", str(dest)], capsys)
    assert code == 0 and out == ""
    d = parse_hypergraph(dest.read_text(), allow_duplicates=True)
    assert d.num_vertices == 4 and d.num_edges == 5


def test_generate_and_roundtrip(capsys):
    code, out, _ = run(["generate", "chain:4:periodic"], capsys)
    assert code == 0
    h = parse_hypergraph(out)
    assert h.num_vertices == 4 and h.num_edges == 4
    # spec strings also work directly as scan/dual inputs
    code, out2, _ = run(["dual", "plaquette:2x2"], capsys)
    assert code == 0 and out2.startswith("K 4\n")


def test_check_selfdual(capsys, tmp_path):
    code, out, _ = run(["check-selfdual", "chain:8:periodic"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "SELF-DUAL"
    assert lines[1].startswith("vertex_map ")
    assert lines[2].startswith("edge_map ")

    # edge sizes {3,1,1} vs vertex degrees {2,2,1}: no relabeling can work
    p = tmp_path / "not_sd.hg"
    p.write_text("K 3\nE 3\ne 1 2 3\ne 1\ne 2\n")
    code, out, _ = run(["check-selfdual", str(p)], capsys)
    assert code == 0 and out.strip() == "NOT-SELF-DUAL"

    # exhausted search budget is a computation error, not an answer
    code, _, err = run(["check-selfdual", "chain:8:periodic", "--budget", "0"],
                       capsys)
    assert code == 3 and "budget" in err


def test_verify_duality_exit_codes(fig_file, capsys):
    code, out, _ = run(
        ["verify-duality", fig_file, "--j", "1", "--h", "0.5"], capsys)
    assert code == 0
    assert "passed true" in out
    # absurd tolerance: report still written, exit 1
    code, out, _ = run(
        ["verify-duality", fig_file, "--j", "1", "--h", "0.5",
         "--tol", "1e-18"], capsys)
    assert code == 1
    assert "passed false" in out


def test_input_errors_exit_2(tmp_path, capsys):
    code, _, err = run(["dual", "no/such/file.hg"], capsys)
    assert code == 2 and "error:" in err

    bad = tmp_path / "bad.hg"
    bad.write_text("K 2\nE 9\ne 1\n")
    code, _, err = run(["dual", str(bad)], capsys)
    assert code == 2

    code, _, err = run(["scan", "hypercubic:6", "--grid", "oops"], capsys)
    assert code == 2
    code, _, err = run(["scan", "hypercubic:6", "--grid", "1:0.5:0.1"], capsys)
    assert code == 2
    # too-few-points grid
    code, _, err = run(["scan", "hypercubic:6", "--grid", "0.5:0.7:0.1"],
                       capsys)
    assert code == 2

    code, _, err = run(
        ["verify-duality", "hypercubic:4", "--j", "-1", "--h", "0.5"], capsys)
    assert code == 2


def test_computation_error_exit_3(capsys):
    # 14-qubit input: sector dimension 2^13 exceeds the dense path
    code, _, err = run(
        ["verify-duality", "hypercubic:14", "--j", "1", "--h", "0.5"], capsys)
    assert code == 3 and "error:" in err


def test_scan_csv_output(tmp_path, capsys):
    dest = tmp_path / "scan.csv"
    code, _, _ = run(["scan", "hypercubic:6", "--grid", "0.6:1.4:0.2",
                      "-o", str(dest)], capsys)
    assert code == 0
    lines = dest.read_text().strip().splitlines()
    assert lines[0] == "ratio,e0,gap,chi_f"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.6


def test_scan_deterministic_bytes(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for dest in (a, b):
        code, _, _ = run(["scan", "hypercubic:6", "--grid", "0.6:1.4:0.2",
                          "-o", str(dest)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_tc_robustness_csv(tmp_path, capsys):
    dest = tmp_path / "tc.csv"
    code, _, _ = run(["tc-robustness", "chain:6:periodic",
                      "--grid", "0.4:1.2:0.1", "-o", str(dest)], capsys)
    assert code == 0
    assert dest.read_text().startswith("ratio,e0,gap,chi_f\n")
    assert len(dest.read_text().strip().splitlines()) == 10


def test_plot_flags_write_files(fig_file, tmp_path, capsys):
    png1 = tmp_path / "rep.png"
    code, _, _ = run(["verify-duality", fig_file, "--j", "1", "--h", "0.5",
                      "-o", str(tmp_path / "r.txt"), "--plot", str(png1)],
                     capsys)
    assert code == 0
    assert png1.stat().st_size > 0

    png2 = tmp_path / "scan.png"
    code, _, _ = run(["scan", "hypercubic:6", "--grid", "0.6:1.4:0.2",
                      "-o", str(tmp_path / "s.csv"), "--plot", str(png2)],
                     capsys)
    assert code == 0
    assert png2.stat().st_size > 0


def test_console_script_and_thread_cap(fig_file, tmp_path):
    env = dict(os.environ, HYPERDUAL_THREADS="1")
    out = subprocess.run(
        [sys.executable, "-m", "hyperdual.cli", "ortho", fig_file],
        capture_output=True, text=True, env=env)
    assert out.returncode == 0
    assert out.stdout == "K 5\nE 1\ne 2 3 5\n"
    # bad verb: argparse usage error surfaces as exit 2
    out = subprocess.run(
        [sys.executable, "-m", "hyperdual.cli", "frobnicate", "x"],
        capture_output=True, text=True, env=env)
    assert out.returncode == 2
