import random

import pytest

from fsz_lab.fields import field
from fsz_lab.matrices import (
    MatFq,
    UniTriMat,
    block_matrix,
    is_symplectic,
    unitri_power_entry,
    ut_exponent,
)


class TestMatFq:
    def test_identity_is_neutral(self):
        spec = field(5)
        M = MatFq.from_ints(spec, [[1, 2], [3, 4]])
        I = MatFq.identity(spec, 2)
        assert I @ M == M
        assert M @ I == M

    def test_double_transpose(self):
        spec = field(7)
        M = MatFq.from_ints(spec, [[1, 2, 3], [0, 4, 5]])
        assert M.transpose().transpose() == M

    def test_inverse(self):
        spec = field(5)
        M = MatFq.from_ints(spec, [[1, 2], [3, 4]])
        assert M @ M.inv() == MatFq.identity(spec, 2)

    def test_singular_inverse_rejected(self):
        spec = field(5)
        with pytest.raises(ValueError):
            MatFq.from_ints(spec, [[1, 2], [2, 4]]).inv()

    def test_dimension_mismatch_rejected(self):
        spec = field(5)
        A = MatFq.from_ints(spec, [[1, 2]])
        with pytest.raises(ValueError):
            A @ A

    def test_pow_matches_repeated_product(self):
        spec = field(3)
        M = MatFq.from_ints(spec, [[1, 1, 0], [0, 1, 2], [0, 0, 1]])
        acc = MatFq.identity(spec, 3)
        for e in range(7):
            assert M.pow(e) == acc
            acc = acc @ M

    def test_block_matrix_assembly(self):
        spec = field(5)
        I = MatFq.identity(spec, 2)
        Z = MatFq.zeros(spec, 2)
        M = block_matrix([[I, Z], [Z, I]])
        assert M == MatFq.identity(spec, 4)


class TestSymplectic:
    def test_identity_and_minus_identity(self):
        spec = field(5)
        I = MatFq.identity(spec, 6)
        assert is_symplectic(I)
        assert is_symplectic(-I)

    def test_odd_dimension_rejected(self):
        spec = field(5)
        with pytest.raises(ValueError):
            is_symplectic(MatFq.identity(spec, 3))

    def test_non_symplectic_detected(self):
        spec = field(5)
        M = MatFq.from_ints(spec, [[2, 0], [0, 1]])  # det 2, outside Sp_2 = SL_2
        assert not is_symplectic(M)


class TestUniTri:
    def test_order_five_over_f5(self):
        spec = field(5)
        rng = random.Random(11)
        for _ in range(10):
            L = UniTriMat.random(spec, 3, rng)
            assert L.pow(5) == UniTriMat.identity(spec, 3)

    def test_inverse(self):
        spec = field(5)
        L = UniTriMat.from_ints(spec, 4, [1, 2, 3, 4, 0, 1])
        assert L @ L.inv() == UniTriMat.identity(spec, 4)

    def test_from_mat_rejects_non_unitriangular(self):
        spec = field(5)
        with pytest.raises(ValueError):
            UniTriMat.from_mat(MatFq.from_ints(spec, [[2, 0], [0, 1]]))

    @pytest.mark.parametrize(
        "n,q,expected", [(3, 5, 5), (6, 5, 25), (1, 7, 1), (3, 3, 3), (9, 3, 9), (10, 3, 27)]
    )
    def test_ut_exponent(self, n, q, expected):
        assert ut_exponent(n, q) == expected

    @pytest.mark.parametrize("n,q", [(3, 5), (5, 3), (4, 3)])
    def test_orders_divide_exponent_and_jordan_attains(self, n, q):
        spec = field(q)
        exp = ut_exponent(n, q)
        assert UniTriMat.jordan(spec, n).order() == exp
        rng = random.Random(n * 100 + q)
        for _ in range(25):
            order = UniTriMat.random(spec, n, rng).order()
            assert exp % order == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_power_entries_match_path_sums(self, n):
        spec = field(5)
        rng = random.Random(n)
        for _ in range(5):
            L = UniTriMat.random(spec, n, rng)
            for m in range(6):
                P = L.pow(m).to_mat()
                for i in range(n):
                    for j in range(i, n):
                        assert P.rows[i][j] == unitri_power_entry(L, m, i, j)
