import json

import numpy as np
import pytest

from dualframes.cli import main
from dualframes.matrixio import read_matrix

SPARSE_CSV = "1,-1,0\n1,2,-1\n"
SPECTRAL_CSV = "# field=real\n1.8,-0.24,-0.32\n2.4,0.18,0.24\n"


@pytest.fixture
def sparse_file(tmp_path):
    path = tmp_path / "sparse.csv"
    path.write_text(SPARSE_CSV)
    return str(path)


@pytest.fixture
def spectral_file(tmp_path):
    path = tmp_path / "spectral.csv"
    path.write_text(SPECTRAL_CSV)
    return str(path)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestAnalyze:
    def test_report(self, capsys, sparse_file):
        code, rep = run_json(capsys, ["analyze", sparse_file])
        assert code == 0
        assert rep["schema_version"] == 1
        assert rep["command"] == "analyze"
        r = rep["results"]
        assert (r["n"], r["m"]) == (2, 3)
        assert r["field"] == "rational"
        assert r["dual_set_dimension"] == 2
        assert r["canonical_dual"][0] == ["7/11", "-4/11", "-1/11"]
        assert rep["inputs_digest"]
        assert rep["timing_s"] >= 0

    def test_output_file(self, capsys, sparse_file, tmp_path):
        out = str(tmp_path / "dual.csv")
        code = main(["analyze", sparse_file, "-o", out])
        assert code == 0
        dual = read_matrix(out)
        assert str(dual[0, 0]) == "7/11"

    def test_missing_file(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path / "nope.csv")]) == 2

    def test_rank_deficient(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n2,4\n")
        assert main(["analyze", str(path)]) == 2
        assert "not a frame" in capsys.readouterr().err


class TestSparsest:
    def test_exact_enumeration(self, capsys, sparse_file):
        code, rep = run_json(
            capsys, ["sparsest", sparse_file, "--all", "--exact"]
        )
        assert code == 0
        r = rep["results"]
        assert r["sparsity"] == 3
        assert r["count"] == 3
        assert not rep["tolerance_dependent"]
        assert [c["spark_j"] for c in r["certificate"]] == [2, 1]

    def test_degenerate_flag(self, capsys, sparse_file, tmp_path):
        code, rep = run_json(capsys, ["sparsest", sparse_file])
        # the reported dual touches every column here
        assert rep["results"]["degenerate"] is False
        assert rep["results"]["zero_columns"] == []
        # a frame with a repeated column: the sparsest dual must drop one
        path = tmp_path / "repeated.csv"
        path.write_text("1,1,0\n0,0,1\n")
        code, rep = run_json(capsys, ["sparsest", str(path)])
        assert rep["results"]["degenerate"] is True

    def test_budget_exit(self, capsys, sparse_file):
        assert main(["sparsest", sparse_file, "--budget", "1"]) == 3

    def test_exact_on_float_input(self, capsys, spectral_file):
        assert main(["sparsest", spectral_file, "--exact"]) == 2


class TestSpectralCommands:
    def test_tight(self, capsys, spectral_file):
        code, rep = run_json(capsys, ["tight", spectral_file])
        assert code == 0
        r = rep["results"]
        assert r["sigma_psi"] == pytest.approx(2.0, abs=1e-10)
        assert r["frame_bound"] == pytest.approx(4.0, abs=1e-9)
        assert r["duality_residual"] <= 1e-9
        np.testing.assert_allclose(
            r["measured_spectrum"], [2.0, 2.0], atol=1e-9
        )

    def test_tight_infeasible_sigma(self, capsys, spectral_file):
        assert main(["tight", spectral_file, "--sigma", "3.0"]) == 5

    def test_prescribe(self, capsys, spectral_file):
        code, rep = run_json(
            capsys, ["prescribe", spectral_file, "--picks", "1=1"]
        )
        assert code == 0
        np.testing.assert_allclose(
            rep["results"]["measured_spectrum"], [2.0, 1.0], atol=1e-8
        )

    def test_prescribe_below_floor(self, capsys, spectral_file):
        assert main(["prescribe", spectral_file, "--picks", "2=1"]) == 5

    def test_prescribe_bad_pick(self, capsys, spectral_file):
        assert main(["prescribe", spectral_file, "--picks", "1=x"]) == 6

    def test_feasible(self, capsys, spectral_file):
        code, rep = run_json(
            capsys, ["feasible", spectral_file, "--spectrum", "2,0.1"]
        )
        assert code == 0
        assert rep["results"]["feasible"] is False
        assert rep["results"]["violated"][0]["side"] == "lower"


class TestTetris:
    def test_plan_and_dual(self, capsys, tmp_path):
        out = str(tmp_path / "stf.csv")
        dual_out = str(tmp_path / "stf_dual.csv")
        code, rep = run_json(capsys, [
            "tetris", "--eigs", "2.5,2.5,2", "--dual",
            "-o", out, "--dual-output", dual_out,
        ])
        assert code == 0
        r = rep["results"]
        assert r["k_hat"] == 3
        assert r["sparsity"] == 3
        frame = read_matrix(out)
        dual = read_matrix(dual_out)
        np.testing.assert_allclose(
            dual @ frame.T, np.eye(3), atol=1e-12
        )

    def test_invalid_spectrum_exit(self, capsys):
        assert main(["tetris", "--eigs", "1.5,2"]) == 7
        assert main(["tetris", "--eigs", "2.5,2.25"]) == 7


def test_random_command(capsys):
    code, rep = run_json(
        capsys, ["random", "-n", "2", "-m", "3", "--trials", "5", "--seed", "1"]
    )
    assert code == 0
    assert rep["results"]["count_sparsity_n2"] == 5
    assert rep["tolerance_dependent"] is True


def test_surface_command(capsys, spectral_file, tmp_path):
    out = str(tmp_path / "surface.csv")
    code, rep = run_json(capsys, [
        "surface", spectral_file, "--range=-1,1", "--step", "0.5",
        "-o", out,
    ])
    assert code == 0
    lines = open(out).read().splitlines()
    assert lines[0] == "s1,s2,lambda1,lambda2"
    assert len(lines) == 1 + 25
    assert rep["results"]["rows"] == 25


class TestGenerate:
    def test_vandermonde(self, capsys, tmp_path):
        out = str(tmp_path / "v.csv")
        code = main([
            "generate", "vandermonde", "--xs", "1,2,3,4", "--ys", "1,2",
            "-o", out,
        ])
        assert code == 0
        assert read_matrix(out).shape == (2, 4)

    def test_dft(self, capsys, tmp_path):
        out = str(tmp_path / "d.csv")
        assert main(["generate", "dft", "-n", "2", "-m", "5", "-o", out]) == 0
        mat = read_matrix(out)
        assert mat.dtype == complex
        np.testing.assert_allclose(mat @ mat.conj().T, np.eye(2), atol=1e-12)

    def test_gaussian_seeded(self, capsys, tmp_path):
        a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        main(["generate", "gaussian", "-n", "2", "-m", "4", "--seed", "9",
              "-o", a])
        main(["generate", "gaussian", "-n", "2", "-m", "4", "--seed", "9",
              "-o", b])
        np.testing.assert_array_equal(read_matrix(a), read_matrix(b))


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
