import io
from fractions import Fraction

import pytest

from tourglue.cli import main
from tourglue.io import format_vector


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


def _gen(run, tmp_path, kind, *extra):
    f = tmp_path / f"{kind}.txt"
    assert run("gen", kind, *extra, "-o", f)[0] == 0
    return f


def test_cyclic_solve_and_verify(run, tmp_path):
    inst = _gen(run, tmp_path, "k4half")
    code, out, _ = run("validate", inst)
    assert code == 0 and out.startswith("PASS theta-cyclic point, theta=1/2")
    comb = tmp_path / "c.txt"
    code, out, _ = run("solve", "cyclic", inst, "-o", comb)
    assert code == 0 and "FAIL" not in out
    assert "phi({2e_v}) = 0/1 requested at root v=0" in out
    code, out, _ = run("verify", inst, comb, "--target", "cyclic")
    assert code == 0
    assert out.count("PASS") == 5 and "zeta*" in out


def test_verify_refutes_tampered_file(run, tmp_path):
    inst = _gen(run, tmp_path, "k4half")
    comb = tmp_path / "c.txt"
    run("solve", "cyclic", inst, "-o", comb)
    lines = comb.read_text().splitlines()
    # bump the first multiplier's numerator: weights no longer sum to 1
    a, b, k = lines[1].split()
    lines[1] = f"{int(a) + 1} {b} {k}"
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = run("verify", inst, bad, "--target", "cyclic")
    assert code == 1 and "FAIL value equals y" in out


def test_solve_writes_to_stdout_and_reports_to_stderr(run, tmp_path):
    inst = _gen(run, tmp_path, "prism")
    code, out, err = run("solve", "cyclic", inst)
    assert code == 0
    assert out.split()[0] == "6"
    assert "cut U=" in err and "PASS" in err


def test_stdin_instance(run, tmp_path, monkeypatch):
    inst = _gen(run, tmp_path, "k4half")
    monkeypatch.setattr("sys.stdin", io.StringIO(inst.read_text()))
    code, out, _ = run("validate")
    assert code == 0


def test_zeta_out_of_range_exit(run, tmp_path):
    inst = _gen(run, tmp_path, "k4half")
    code, _, err = run("solve", "cyclic", inst, "--zeta", "1/4")
    assert code == 1 and "FAIL construction: ZetaOutOfRange" in err


def test_input_errors(run, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("4 6 1 2\n0 1 1 2\n")
    assert run("validate", bad)[0] == 2
    assert run("validate", tmp_path / "missing.txt")[0] == 2
    plain = _gen(run, tmp_path, "k4graph")
    assert run("solve", "cyclic", plain)[0] == 2
    assert run("gen", "lowerbound")[0] == 2
    assert run("gen", "random-cyclic", "--n", 8)[0] == 2
    assert run("solve", "nonsense", plain)[0] == 2
    assert run()[0] == 2


def test_validate_rejects_non_cyclic(run, tmp_path):
    f = tmp_path / "c4.txt"
    f.write_text("4 4 1 2\n0 1 1 2\n1 2 1 2\n2 3 1 2\n0 3 1 2\n")
    code, out, _ = run("validate", f)
    assert code == 1 and "one-edge" in out


def test_cuts_and_matchings(run, tmp_path):
    prism = _gen(run, tmp_path, "prism")
    code, out, _ = run("cuts", prism)
    assert code == 0 and "critical size=3 value=2/1 U=0 1 2" in out
    lb = _gen(run, tmp_path, "lowerbound", "--eps", "1/4")
    code, out, _ = run("cuts", lb)
    assert code == 0 and "critical" not in out.replace("INFO", "")
    rc = _gen(run, tmp_path, "random-cyclic", "--n", 10, "--theta", "1/3", "--seed", 0)
    code, out, _ = run("matchings", rc, "--vertex", 3)
    assert code == 0 and "PASS partition" in out and out.count("\nM") == 4
    assert run("matchings", rc, "--vertex", 99)[0] == 2


def test_christofides_and_uniform(run, tmp_path):
    k4h = _gen(run, tmp_path, "k4half")
    assert run("solve", "christofides", k4h, "-o", tmp_path / "ch.txt")[0] == 0
    assert run("verify", k4h, tmp_path / "ch.txt", "--target", "christofides")[0] == 0
    k4 = _gen(run, tmp_path, "k4graph")
    code, out, _ = run("solve", "uniform23", k4, "-o", tmp_path / "u.txt")
    assert code == 0 and "PASS value is 17/18 on every edge" in out
    hint = tmp_path / "hint.txt"
    hint.write_text("0 1 2 3\n")
    code, out, _ = run("solve", "uniform23", k4, "--hamiltonian-hint", hint, "-o", tmp_path / "h.txt")
    assert code == 0 and "PASS value is 29/34 on every edge" in out
    assert run("verify", k4, tmp_path / "h.txt", "--target", "uniform23")[0] == 0
    # the christofides output is not a uniform combination
    assert run("verify", k4h, tmp_path / "ch.txt", "--target", "uniform24")[0] == 1
    octa = _gen(run, tmp_path, "octahedron")
    code, out, _ = run("solve", "uniform24", octa, "-o", tmp_path / "o.txt")
    assert code == 0 and "PASS audit Pr[e in J | e in M] = 19/42" in out
    assert "PASS value is 31/42 on every edge" in out


def test_oracle_command(run, tmp_path):
    k4h = _gen(run, tmp_path, "k4half")
    y = [Fraction(3, 4)] * 4 + [Fraction(29, 20)] * 2
    vec = tmp_path / "y.txt"
    vec.write_text(format_vector(y))
    code, out, _ = run("oracle", k4h, vec)
    assert code == 0 and out.startswith("feasible")
    vec.write_text(format_vector([q / 2 for q in y]))
    code, out, _ = run("oracle", k4h, vec)
    assert code == 1 and out.startswith("infeasible")
    vec.write_text(format_vector(y[:3]))
    assert run("oracle", k4h, vec)[0] == 2
