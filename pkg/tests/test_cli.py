import io
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from regmatch.cli import main
from regmatch.graph import read_graph, regular_degree


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_generate_regular(tmp_path):
    path = tmp_path / "g.txt"
    code, _, _ = run_cli("generate", "--family", "regular", "--n", "8",
                         "--d", "3", "--seed", "1", "--out", str(path))
    assert code == 0
    g = read_graph(path)
    assert g.n_left == 8 and regular_degree(g) == 3


def test_generate_lowerbound_writes_meta(tmp_path):
    path = tmp_path / "lb.txt"
    code, _, _ = run_cli("generate", "--family", "lowerbound", "--n", "16",
                         "--d", "8", "--out", str(path))
    assert code == 0
    assert read_graph(path).n_left == 25
    assert "gamma 12" in (tmp_path / "lb.txt.meta").read_text()


def test_generate_h_block_and_two_components(tmp_path):
    hb = tmp_path / "hb.txt"
    assert run_cli("generate", "--family", "h-block", "--d", "4", "--k", "2",
                   "--out", str(hb))[0] == 0
    assert read_graph(hb).m == 14
    tc = tmp_path / "tc.txt"
    assert run_cli("generate", "--family", "two-components", "--n", "3",
                   "--d", "2", "--seed", "0", "--out", str(tc))[0] == 0
    assert read_graph(tc).n_left == 6


def test_sample_deterministic(tmp_path):
    g = tmp_path / "g.txt"
    run_cli("generate", "--family", "regular", "--n", "10", "--d", "4",
            "--seed", "2", "--out", str(g))
    s1, s2 = tmp_path / "s1.txt", tmp_path / "s2.txt"
    for out in (s1, s2):
        code, _, _ = run_cli("sample", "--input", str(g), "--p", "0.5",
                             "--seed", "7", "--out", str(out))
        assert code == 0
    assert s1.read_bytes() == s2.read_bytes()


def test_match_hk_exit_codes(tmp_path):
    g = tmp_path / "g.txt"
    run_cli("generate", "--family", "regular", "--n", "6", "--d", "3",
            "--seed", "3", "--out", str(g))
    code, out, _ = run_cli("match", "--input", str(g), "--algo", "hk")
    assert code == 0
    assert "perfect=true size=6" in out
    # a graph without a perfect matching exits 1
    bad = tmp_path / "bad.txt"
    bad.write_text("bipartite 2 2 2\n0 0\n1 0\n")
    code, out, _ = run_cli("match", "--input", str(bad), "--algo", "hk")
    assert code == 1
    assert "perfect=false" in out


def test_match_all_algorithms(tmp_path):
    g = tmp_path / "g.txt"
    run_cli("generate", "--family", "regular", "--n", "8", "--d", "4",
            "--seed", "4", "--out", str(g))
    for algo in ("hk", "euler", "sampled", "brute"):
        code, out, _ = run_cli("match", "--input", str(g), "--algo", algo)
        assert code == 0, algo
        assert "perfect=true size=8" in out


def test_decompose_verify(tmp_path):
    g = tmp_path / "g.txt"
    run_cli("generate", "--family", "two-components", "--n", "3", "--d", "3",
            "--seed", "1", "--out", str(g))
    code, out, _ = run_cli("decompose", "--input", str(g), "--verify")
    assert code == 0
    assert "alpha=3/8" in out and "verify=ok" in out
    assert out.count("piece") == 2


def test_verify_witness(tmp_path):
    g = tmp_path / "k33.txt"
    edges = "\n".join(f"{u} {v}" for u in range(3) for v in range(3))
    g.write_text(f"bipartite 3 3 9\n{edges}\n")
    code, out, _ = run_cli("verify-witness", "--input", str(g))
    assert code == 0 and "injection=ok" in out


def test_experiment_survival_rows(tmp_path):
    out = tmp_path / "s.csv"
    code, stdout, _ = run_cli("experiment", "survival", "--n", "8", "--d", "4",
                              "--p", "0.2,0.4,0.8", "--trials", "50",
                              "--seed", "7", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 4  # header + one row per p
    assert lines[0].startswith("family,n,d,p")


def test_experiment_lowerbound_bound_column():
    code, out, _ = run_cli("experiment", "lowerbound", "--n", "16", "--d", "8",
                           "--p", "0.05", "--trials", "200", "--seed", "1")
    assert code == 0
    assert ",0.0256," in out


def test_experiment_cuts(tmp_path):
    g = tmp_path / "g.txt"
    edges = "\n".join(f"{u} {v}" for u in range(3) for v in range(3))
    g.write_text(f"bipartite 3 3 9\n{edges}\n")
    code, out, _ = run_cli("experiment", "cuts", "--input", str(g),
                           "--trials", "20", "--seed", "2")
    assert code == 0
    assert "cuts_preserved_fraction=1" in out


def test_domain_error_exit_1(tmp_path):
    code, _, err = run_cli("match", "--input", str(tmp_path / "missing.txt"),
                           "--algo", "hk")
    assert code == 1
    assert err.startswith("error:")


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        run_cli("bogus")
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "regmatch.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "generate" in proc.stdout
