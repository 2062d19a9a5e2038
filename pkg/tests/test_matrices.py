import random

import pytest
from hypothesis import given, settings, strategies as st

from tauthom.matrices import (IntMatrix, column_basis, determinant, hstack,
                              kernel_basis, lattice_contains, lattice_equal,
                              matrix_power, smith_normal_form, solve_columns,
                              vstack)

from oracles import minors_gcd_divisors, rank_oracle, snf_divisors_oracle


def rand_matrix(rng, rows, cols, bound=6):
    return IntMatrix(rows, cols,
                     [[rng.randint(-bound, bound) for _ in range(cols)]
                      for _ in range(rows)])


small = st.integers(min_value=-8, max_value=8)


def matrices(max_dim=5, bound=8):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound),
                                        min_size=c, max_size=c),
                               min_size=r, max_size=r))).map(IntMatrix.from_rows)


class TestArithmetic:
    def test_mul_shapes(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4], [5, 6]])
        b = IntMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
        c = a * b
        assert (c.rows, c.cols) == (3, 3)
        assert c.data[2] == (5, 6, 11)

    def test_degenerate_shapes(self):
        a = IntMatrix.zeros(0, 3)
        b = IntMatrix.zeros(3, 2)
        assert (a * b).rows == 0 and (a * b).cols == 2
        c = IntMatrix.zeros(2, 0) * IntMatrix.zeros(0, 4)
        assert c == IntMatrix.zeros(2, 4)
        assert IntMatrix.zeros(0, 0).is_identity

    def test_apply_and_column(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert a.apply((1, 1)) == (3, 7)
        assert a.column(1) == (2, 4)

    def test_transpose_product(self):
        rng = random.Random(900)
        for _ in range(50):
            r, k, c = (rng.randrange(0, 5) for _ in range(3))
            a, b = rand_matrix(rng, r, k), rand_matrix(rng, k, c)
            assert (a * b).transpose() == b.transpose() * a.transpose()

    def test_json_round_trip(self):
        a = IntMatrix.from_rows([[1, -2, 3]])
        assert IntMatrix.from_json(a.to_json()) == a
        assert IntMatrix.from_json([[1, -2, 3]]) == a
        assert IntMatrix.from_json([]) == IntMatrix.zeros(0, 0)


class TestSmith:
    def test_known_form(self):
        m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        s = smith_normal_form(m)
        assert [x for x in s.diagonal if x] == [2, 2, 156]
        assert s.u * m * s.v == s.d
        assert s.u * s.uinv == IntMatrix.identity(3)
        assert s.vinv * s.v == IntMatrix.identity(3)

    def test_oracle_cross_check(self):
        rng = random.Random(901)
        for _ in range(300):
            r, c = rng.randrange(0, 6), rng.randrange(0, 6)
            m = rand_matrix(rng, r, c)
            got = tuple(x for x in smith_normal_form(m).diagonal if x)
            assert got == snf_divisors_oracle(m.data)

    def test_minors_gcd_cross_check(self):
        rng = random.Random(902)
        for _ in range(120):
            m = rand_matrix(rng, rng.randrange(0, 5), rng.randrange(0, 5), 5)
            got = tuple(x for x in smith_normal_form(m).diagonal if x)
            assert got == minors_gcd_divisors(m.data)

    @given(matrices())
    @settings(max_examples=120, deadline=None)
    def test_divisor_chain_and_unimodularity(self, m):
        s = smith_normal_form(m)
        diag = [x for x in s.diagonal if x]
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        assert abs(determinant(s.u)) == 1
        assert abs(determinant(s.v)) == 1
        assert s.d.is_diagonal()

    def test_rank_matches_rational_rank(self):
        rng = random.Random(903)
        for _ in range(60):
            m = rand_matrix(rng, rng.randrange(0, 6), rng.randrange(0, 6))
            assert smith_normal_form(m).rank == rank_oracle(m.data)


class TestDeterminant:
    @given(matrices(4, 5))
    @settings(max_examples=80, deadline=None)
    def test_square_against_laplace(self, m):
        if m.rows != m.cols:
            return
        from oracles import _det
        assert determinant(m) == _det([list(r) for r in m.data])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            determinant(IntMatrix.zeros(2, 3))


class TestLattices:
    def test_kernel_basis_annihilates(self):
        rng = random.Random(904)
        for _ in range(60):
            m = rand_matrix(rng, rng.randrange(0, 5), rng.randrange(0, 5))
            k = kernel_basis(m)
            assert (m * k).is_zero()
            assert rank_oracle(k.data) == k.cols
            assert m.cols - smith_normal_form(m).rank == k.cols

    def test_column_basis_spans_same_lattice(self):
        rng = random.Random(905)
        for _ in range(60):
            m = rand_matrix(rng, rng.randrange(1, 5), rng.randrange(1, 6))
            b = column_basis(m)
            assert lattice_equal(b, m) or m.is_zero()
            if m.is_zero():
                assert b.cols == 0

    def test_lattice_contains_scaling(self):
        m = IntMatrix.from_rows([[2, 0], [0, 3]])
        assert lattice_contains(m, IntMatrix.from_rows([[4, 0], [0, 0]]))
        assert not lattice_contains(m, IntMatrix.from_rows([[1], [0]]))

    def test_solve_columns(self):
        a = IntMatrix.from_rows([[2, 0], [0, 3]])
        b = IntMatrix.from_rows([[4], [9]])
        x = solve_columns(a, b)
        assert a * x == b
        assert solve_columns(a, IntMatrix.from_rows([[1], [1]])) is None

    def test_matrix_power(self):
        f = IntMatrix.from_rows([[1, 1], [0, 1]])
        assert matrix_power(f, 5).data[0][1] == 5
        assert matrix_power(f, 0).is_identity

    def test_stacking(self):
        a = IntMatrix.from_rows([[1], [2]])
        b = IntMatrix.from_rows([[3], [4]])
        assert hstack(a, b).data == ((1, 3), (2, 4))
        assert vstack(a, b).cols == 1 and vstack(a, b).rows == 4
