from fractions import Fraction

import numpy as np
import pytest

from dualframes.errors import SingularSubset, SizeLimit, Truncated
from dualframes.frames import Frame, is_dual, row_delete
from dualframes.sparsity import (
    biorthogonal_dual,
    enumerate_sparsest_duals,
    generalized_spark,
    in_P,
    is_general_position,
    nnz,
    spark,
    sparsest_dual,
    sparsity_bounds,
)

from conftest import frac_matrix, random_integer_frame

# the three sparsest duals of [[1,-1,0],[1,2,-1]], in enumeration order
PSI_1 = [[0, -1, -2], [0, 0, -1]]
PSI_2 = [[Fraction(2, 3), Fraction(-1, 3), 0], [0, 0, -1]]
PSI_3 = [[1, 0, 1], [0, 0, -1]]


class TestSpark:
    def test_worked_example(self, ex_sparse):
        rep = spark(ex_sparse.matrix)
        assert rep.spark == 3
        assert rep.witness == (0, 1, 2)
        assert not rep.tolerance_dependent

    def test_full_spark_square(self):
        assert spark(frac_matrix([[1, 0], [0, 1]])).spark == 3

    def test_zero_column(self):
        rep = spark(frac_matrix([[0, 1, 0], [0, 0, 1]]))
        assert rep.spark == 1
        assert rep.witness == (0,)

    def test_repeated_column(self):
        rep = spark(frac_matrix([[1, 1, 0], [2, 2, 1]]))
        assert rep.spark == 2
        assert rep.witness == (0, 1)

    def test_float_flagged(self):
        assert spark(np.array([[1.0, 2.0, 3.0]])).tolerance_dependent

    def test_budget(self):
        with pytest.raises(SizeLimit):
            spark(frac_matrix([[1, 2, 3, 4, 5, 6, 7, 8]]), budget=3)


class TestGeneralizedSpark:
    def test_worked_example(self, ex_sparse):
        # deleting row 0 leaves [1,2,-1] with no zero entry, so spark_0 = 2;
        # deleting row 1 leaves [1,-1,0] whose last column vanishes, spark_1 = 1
        assert generalized_spark(ex_sparse, 0) == 2
        assert generalized_spark(ex_sparse, 1) == 1

    def test_at_least_plain_spark(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            f = random_integer_frame(rng, 3, 5)
            for j in range(3):
                assert (
                    generalized_spark(f, j)
                    >= spark(row_delete(f, j)).spark
                    or spark(row_delete(f, j)).spark == f.m + 1
                )

    def test_bounded_by_n(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            f = random_integer_frame(rng, 3, 4)
            for j in range(3):
                assert 1 <= generalized_spark(f, j) <= 3


class TestSparsestDual:
    def test_certificate(self, ex_sparse):
        psi, cert = sparsest_dual(ex_sparse)
        assert cert.total_sparsity == 3
        assert not cert.tolerance_dependent
        assert [rc.spark_j for rc in cert.rows] == [2, 1]
        assert is_dual(ex_sparse, psi)[1] == 0
        assert nnz(psi) == 3

    def test_certificate_row_recipe(self, ex_sparse):
        # each certified row, rebuilt from (support, coeffs, scale),
        # matches the returned dual row
        psi, cert = sparsest_dual(ex_sparse)
        for rc in cert.rows:
            row = np.array([Fraction(0)] * ex_sparse.m, dtype=object)
            for k, c in enumerate(rc.support):
                row[c] = rc.coeffs[k] / rc.scale
            assert list(row) == list(psi.matrix[rc.row])

    def test_random_exact_frames(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            f = random_integer_frame(rng, 2, 4)
            psi, cert = sparsest_dual(f)
            assert is_dual(f, psi)[1] == 0
            assert nnz(psi) == cert.total_sparsity
            assert cert.total_sparsity <= f.n ** 2

    def test_never_sparser_than_certificate(self):
        # brute-force oracle on a tiny frame: no dual has fewer nonzeros
        f = Frame.exact([[1, -1, 0], [1, 2, -1]])
        _, cert = sparsest_dual(f)
        best = cert.total_sparsity
        duals = enumerate_sparsest_duals(f)
        assert all(nnz(d) == best for d in duals)


class TestEnumerate:
    def test_worked_example_all_three(self, ex_sparse):
        duals = enumerate_sparsest_duals(ex_sparse)
        assert len(duals) == 3
        mats = [d.matrix.tolist() for d in duals]
        for expected in (PSI_1, PSI_2, PSI_3):
            target = [[Fraction(x) for x in row] for row in expected]
            assert target in mats
        for d in duals:
            assert is_dual(ex_sparse, d)[1] == 0

    def test_deterministic_order(self, ex_sparse):
        a = enumerate_sparsest_duals(ex_sparse)
        b = enumerate_sparsest_duals(ex_sparse)
        assert [x.matrix.tolist() for x in a] == [x.matrix.tolist() for x in b]

    def test_limit(self, ex_sparse):
        with pytest.raises(Truncated) as exc:
            enumerate_sparsest_duals(ex_sparse, limit=2)
        assert len(exc.value.partial) == 2


def test_sparsity_bounds(ex_sparse):
    assert sparsity_bounds(ex_sparse) == (3, 3, 4)


def test_sparsity_bounds_sandwich_random():
    rng = np.random.default_rng(21)
    for _ in range(20):
        f = random_integer_frame(rng, 3, 5)
        lower, exact, upper = sparsity_bounds(f)
        assert lower <= exact <= upper == 9


class TestBiorthogonal:
    def test_auto_columns(self, ex_sparse):
        psi = biorthogonal_dual(ex_sparse)
        expected = [
            [Fraction(2, 3), Fraction(-1, 3), 0],
            [Fraction(1, 3), Fraction(1, 3), 0],
        ]
        assert psi.matrix.tolist() == [
            [Fraction(x) for x in row] for row in expected
        ]
        assert is_dual(ex_sparse, psi)[1] == 0

    def test_explicit_columns(self, ex_sparse):
        psi = biorthogonal_dual(ex_sparse, cols=[1, 2])
        assert is_dual(ex_sparse, psi)[1] == 0
        assert not np.any(psi.matrix[:, 0] != 0)

    def test_singular_subset(self):
        f = Frame.exact([[1, 2, 0], [2, 4, 1]])
        with pytest.raises(SingularSubset):
            biorthogonal_dual(f, cols=[0, 1])

    def test_nnz_at_most_n_squared(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            f = random_integer_frame(rng, 3, 6)
            psi = biorthogonal_dual(f)
            assert nnz(psi) <= 9
            assert is_dual(f, psi)[1] == 0


class TestGeneralPosition:
    def test_examples(self):
        assert is_general_position(frac_matrix([[1, 2, 3]]))
        assert not is_general_position(frac_matrix([[1, 0, 3]]))
        assert is_general_position(frac_matrix([[1, 1, 0], [0, 1, 1]]))
        assert not is_general_position(frac_matrix([[1, 2, 0], [2, 4, 1]]))

    def test_in_P_implies_n_squared(self):
        rng = np.random.default_rng(17)
        hits = 0
        for _ in range(15):
            f = random_integer_frame(rng, 2, 4)
            if in_P(f):
                hits += 1
                assert sparsity_bounds(f)[1] == 4
        assert hits > 0  # the sample should contain generic frames


def test_nnz():
    assert nnz(frac_matrix([[0, 1], [2, 0]])) == 2
    assert nnz(np.array([[1e-14, 1.0]]), tol=1e-12) == 1
    assert nnz(np.array([[1e-14, 1.0]])) == 2
