import random
import subprocess
import sys
from fractions import Fraction

import pytest

from idempotent import (
    BOTTOM, MAXMIN, MAXPLUS, MINPLUS, Matrix, SampledFunction, WeightedGraph, dihedral_group,
    quaternion_group, random_representation,
)
from idempotent import io as fio
from idempotent.cli import main

B = BOTTOM


# -- readers and writers ----------------------------------------------------

def test_matrix_round_trip(tmp_path):
    A = Matrix(MINPLUS, [[0, B, 1.25], [-3, 7, B]])
    fio.write_matrix(A, tmp_path / "a.txt")
    assert fio.read_matrix(tmp_path / "a.txt", MINPLUS) == A
    assert "inf" in (tmp_path / "a.txt").read_text()


def test_maxmin_infinity_tokens():
    A = fio.parse_matrix("1 2\n-inf inf\n", MAXMIN)
    assert A.entries()[0][0] is B and A.entries()[0][1] == float("inf")


def test_graph_round_trip(tmp_path):
    g = WeightedGraph(3, [(0, 1, 2), (1, 2, -3), (2, 0, 4)])
    fio.write_graph(g, tmp_path / "g.txt")
    back = fio.read_graph(tmp_path / "g.txt")
    assert back.node_count == 3 and back.edges == g.edges


def test_function_round_trip(tmp_path):
    f = SampledFunction(MAXPLUS, -1.5, 0.25, [0, B, 2.5, -1])
    fio.write_function(f, tmp_path / "f.csv")
    assert fio.read_function(tmp_path / "f.csv", MAXPLUS) == f


def test_function_rejects_nonuniform_grid():
    with pytest.raises(fio.ParseError):
        fio.parse_function("x,value\n0,1\n1,2\n3,3\n", MAXPLUS)
    with pytest.raises(fio.ParseError):
        fio.parse_function("t,value\n0,1\n", MAXPLUS)


def test_rational_tokens():
    f = fio.parse_function("x,value\n0,1/2\n1,3\n", MAXPLUS)
    assert f.entries() == [Fraction(1, 2), 3]


def test_group_and_representation_round_trip(tmp_path):
    G = dihedral_group(4)
    fio.write_group(G, tmp_path / "d4.txt")
    back = fio.read_group(tmp_path / "d4.txt")
    assert (back.table == G.table).all() and back.identity == G.identity
    pi = random_representation(G, random.Random(1))
    fio.write_representation(pi, tmp_path / "rep.txt", "d4.txt")
    again = fio.read_representation(tmp_path / "rep.txt")
    assert again.images == pi.images


def test_parse_errors():
    with pytest.raises(fio.ParseError):
        fio.parse_matrix("2 2\n1 2\n", MAXPLUS)
    with pytest.raises(fio.ParseError):
        fio.parse_matrix("1 2\n1 x\n", MAXPLUS)
    with pytest.raises(fio.ParseError):
        fio.parse_graph("2 1\n0 1\n")
    with pytest.raises(fio.ParseError):
        fio.parse_group("2 0\n0 1\n")


# -- command line -----------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    (tmp_path / "g.txt").write_text("# triangle\n3 3\n0 1 2\n1 2 3\n0 2 10\n")
    (tmp_path / "neg.txt").write_text("2 2\ninf 1\n-2 inf\n")
    (tmp_path / "swap.txt").write_text("2 2\n-inf 4\n-2 -inf\n")
    (tmp_path / "f.csv").write_text("x,value\n-2,-4\n-1,-1\n0,0\n1,-1\n2,-4\n")
    (tmp_path / "c2.txt").write_text("2 0\n0 1\n1 0\n")
    (tmp_path / "rep.txt").write_text("group c2.txt\nperm: 0 1; weights: 0 0\nperm: 1 0; weights: 0 0\n")
    (tmp_path / "h.txt").write_text("3 3\ninf 2 inf\ninf inf 3\ninf inf inf\n")
    (tmp_path / "rhs.txt").write_text("3 1\ninf\ninf\n0\n")
    return tmp_path


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_paths(files, capsys):
    code, out, _ = run(capsys, "paths", "--graph", files / "g.txt", "--semiring", "minplus",
                       "--source", 0, "--method", "jacobi")
    assert code == 0
    assert out == "node,dist\n0,0\n1,2\n2,5\n"
    for method in ("gauss_seidel", "iterate", "gauss_jordan"):
        assert run(capsys, "paths", "--graph", files / "g.txt", "--method", method)[1] == out


def test_star_negative_cycle_exit_3(files, capsys):
    code, out, err = run(capsys, "star", "--matrix", files / "neg.txt", "--semiring", "minplus")
    assert code == 3
    assert out.splitlines()[0] == "NonStable"
    assert "NonStable" in err


def test_solve(files, capsys):
    code, out, _ = run(capsys, "solve", "--matrix", files / "h.txt", "--rhs", files / "rhs.txt",
                       "--semiring", "minplus")
    assert code == 0
    assert out.splitlines()[1:] == ["3 1", "5", "3", "0"]


def test_legendre_row_count(files, capsys):
    code, out, _ = run(capsys, "legendre", "--function", files / "f.csv", "--xi-min", -3,
                       "--xi-max", 3, "--xi-steps", 61)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "xi,value" and len(lines) == 62


def test_eigen_and_joint(files, capsys):
    code, out, _ = run(capsys, "eigen", "--matrix", files / "swap.txt")
    assert code == 0 and out == "lambda,v0,v1\n1,0,-3\n"
    code, out, _ = run(capsys, "joint-eigen", "--matrix", files / "swap.txt", "--matrix", files / "swap.txt")
    assert code == 0 and "lambda,0,1" in out and "v,1,-3" in out


def test_representation_commands(files, capsys):
    assert run(capsys, "rep-check", "--rep", files / "rep.txt")[1] == "valid,detail\ntrue,\n"
    code, out, _ = run(capsys, "orbit-sum", "--rep", files / "rep.txt", "--vector", "0 5")
    assert out == "index,value\n0,5\n1,5\n"
    code, out, _ = run(capsys, "nilpotent-eigen", "--rep", files / "rep.txt", "--group", files / "c2.txt")
    assert code == 0 and out.startswith("field,index,value\nlambda,0,0\n")


def test_integral_and_convolve(files, capsys):
    assert run(capsys, "integral", "--function", files / "f.csv")[1] == "value\n0\n"
    code, out, _ = run(capsys, "convolve", "--function", files / "f.csv", "--function", files / "f.csv")
    assert code == 0 and out.splitlines()[1] == "-4,-8" and len(out.splitlines()) == 10
    code, _, err = run(capsys, "convolve", "--function", files / "f.csv")
    assert code == 2 and "two" in err


def test_dequantize_and_superpose(files, capsys):
    code, out, _ = run(capsys, "dequantize", "--h", "0.4,0.2", "--points", files / "pts.csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "h,sup_error" and len(lines) == 3
    assert (files / "pts.csv").read_text().startswith("x,S_h,S_hopf_lax\n")
    code, out, _ = run(capsys, "superpose", "--seed", 4)
    assert code == 0 and float(out.splitlines()[1].split(",")[1]) <= 1e-9


def test_usage_errors(files, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["paths", "--graph", str(files / "g.txt"), "--bogus"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "paths", "--graph", files / "missing.txt")
    assert code == 2 and "missing" in err
    code, _, _ = run(capsys, "paths", "--graph", files / "g.txt", "--source", 9)
    assert code == 2
    code, _, _ = run(capsys, "dequantize", "--h", "0.4,-1")
    assert code == 2


def test_math_errors_exit_3(files, capsys):
    (files / "bottom.csv").write_text("x,value\n0,-inf\n1,-inf\n")
    code, out, err = run(capsys, "legendre", "--function", files / "bottom.csv")
    assert code == 3 and out.splitlines()[0] == "AllBottom" and err
    code, out, _ = run(capsys, "eigen", "--matrix", files / "h.txt", "--semiring", "maxplus")
    assert code == 3 and out.splitlines()[0] in ("NotIrreducible", "NoCycle")
    code, _, _ = run(capsys, "dequantize", "--h", "0.1", "--t", "0")
    assert code == 2


def test_output_flag_and_determinism(files):
    outs = []
    for i in range(2):
        target = files / f"out{i}.csv"
        proc = subprocess.run([sys.executable, "-m", "idempotent", "paths", "--graph", str(files / "g.txt"),
                               "--output", str(target)], capture_output=True)
        assert proc.returncode == 0 and proc.stdout == b""
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] == b"node,dist\n0,0\n1,2\n2,5\n"


def test_cli_output_round_trips(files, capsys):
    code, out, _ = run(capsys, "star", "--matrix", files / "h.txt",
                       "--semiring", "minplus")
    assert code == 0
    (files / "star.txt").write_text(out)
    S = fio.read_matrix(files / "star.txt", MINPLUS)
    assert S.entries()[0] == [0, 2, 5]
    code, out, _ = run(capsys, "legendre", "--function", files / "f.csv", "--envelope")
    (files / "env.csv").write_text(out)
    assert fio.read_function(files / "env.csv", MAXPLUS).entries() == [-4, -1, 0, -1, -4]


def test_quaternion_rep_file(tmp_path, capsys):
    Q = quaternion_group()
    fio.write_group(Q, tmp_path / "q8.txt")
    fio.write_representation(random_representation(Q, random.Random(3)), tmp_path / "rep.txt", "q8.txt")
    code, out, _ = run(capsys, "nilpotent-eigen", "--rep", tmp_path / "rep.txt")
    assert code == 0 and out.count("lambda,") == 8
