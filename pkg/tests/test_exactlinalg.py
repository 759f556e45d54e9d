from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ltskit.exactlinalg import (
    LinearSubspace,
    RatTensor,
    TrackedSpan,
    UnsupportedRing,
    basis_matrices,
    exact_einsum,
    matrix_from_tensor,
    nullspace,
    rank,
    rref_fraction,
    solve_linear,
    span_closure,
    tensor_from_matrix,
    _nullspace_modular,
    _rational_reconstruct,
)
from ltskit.scalars import Matrix, QuadraticExtension


def frac_rows(data):
    return [[Fraction(x) for x in row] for row in data]


class TestRatTensor:
    def test_from_fractions_normalizes(self):
        t = RatTensor.from_fractions([[Fraction(1, 2), Fraction(3, 2)], [1, 0]])
        assert t.den == 2
        assert t.fraction(0, 1) == Fraction(3, 2)

    def test_equality_independent_of_representation(self):
        a = RatTensor(np.array([[2, 4]]), 2)
        b = RatTensor(np.array([[1, 2]]), 1)
        assert a == b

    def test_arithmetic(self):
        a = RatTensor.from_fractions([Fraction(1, 3), Fraction(1, 2)])
        b = RatTensor.from_fractions([Fraction(2, 3), Fraction(1, 2)])
        assert (a + b).fractions().tolist() == [Fraction(1), Fraction(1)]
        assert (a - a).is_zero()
        assert (a * Fraction(3)).fraction(0) == 1

    def test_sparse_constructor_and_bounds(self):
        t = RatTensor.from_sparse((2, 2, 2), [(0, 1, 1, "1/2"), (1, 0, 0, 3)])
        assert t.fraction(0, 1, 1) == Fraction(1, 2)
        with pytest.raises(IndexError):
            RatTensor.from_sparse((2, 2), [(2, 0, 1)])

    def test_einsum_matches_object_path(self):
        rng = np.random.default_rng(7)
        a = RatTensor(rng.integers(-5, 5, size=(4, 4)), 3)
        b = RatTensor(rng.integers(-5, 5, size=(4, 4)), 7)
        fast = exact_einsum("ij,jk->ik", a, b)
        slow_num = np.einsum("ij,jk->ik", a.num.astype(object), b.num.astype(object))
        assert fast == RatTensor(slow_num, a.den * b.den)

    def test_einsum_big_values_fall_back_to_objects(self):
        big = 2 ** 40
        a = RatTensor(np.full((3, 3), big, dtype=object), 1)
        out = exact_einsum("ij,jk->ik", a, a)
        assert out.fraction(0, 0) == 3 * big * big  # exceeds int64

    def test_first_nonzero(self):
        t = RatTensor.zeros((2, 2))
        assert t.first_nonzero() is None
        t2 = RatTensor.from_sparse((2, 2), [(1, 0, 1)])
        assert t2.first_nonzero() == (1, 0)


class TestElimination:
    def test_nullspace_zero_matrix(self):
        space = nullspace(frac_rows([[0, 0], [0, 0]]))
        assert space.dim == 2
        assert space == LinearSubspace.full(2)

    def test_nullspace_identity(self):
        space = nullspace(frac_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
        assert space.dim == 0

    def test_nullspace_rank_one(self):
        space = nullspace(frac_rows([[1, 2], [2, 4]]))
        assert space.dim == 1
        # canonical echelon basis of span{(-2, 1)} has leading 1
        assert space.basis == ((Fraction(1), Fraction(-1, 2)),)
        assert space.contains([-2, 1])

    def test_rank_nullity(self):
        rows = frac_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert rank(rows) + nullspace(rows).dim == 3

    def test_solve(self):
        x = solve_linear(frac_rows([[2, 1], [1, -1]]), [Fraction(5), Fraction(1)])
        assert x == [Fraction(2), Fraction(1)]
        assert solve_linear(frac_rows([[1, 1], [1, 1]]), [0, 1]) is None

    def test_unsupported_ring(self):
        R = QuadraticExtension(0)
        M = Matrix.from_rows([[R.gen()]], R)
        with pytest.raises(UnsupportedRing):
            nullspace(M)

    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=4, max_size=4),
            min_size=2,
            max_size=6,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_nullspace_property(self, data):
        rows = frac_rows(data)
        space = nullspace(rows)
        assert space.dim + rank(rows) == 4
        for vec in space.basis:
            assert all(sum(r * v for r, v in zip(row, vec)) == 0 for row in rows)

    def test_rref_idempotent(self):
        rows = frac_rows([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
        R1, p1 = rref_fraction(rows)
        R2, p2 = rref_fraction(R1)
        assert R1 == R2 and p1 == p2


class TestModularPath:
    def test_rational_reconstruction(self):
        m = 67108859 * 67108837
        val = Fraction(-22, 7)
        residue = (val.numerator * pow(val.denominator, -1, m)) % m
        assert _rational_reconstruct(residue, m) == val

    def test_modular_nullspace_agrees_with_fractions(self):
        rng = np.random.default_rng(3)
        rows = rng.integers(-9, 9, size=(30, 12)).tolist()
        got, rk = _nullspace_modular(rows)
        direct = nullspace(frac_rows(rows))
        assert rk == rank(frac_rows(rows))
        assert LinearSubspace.from_vectors(got, 12) == direct

    def test_large_system_dispatch(self):
        # Force the modular path via a large structured integer system.
        rng = np.random.default_rng(11)
        base = rng.integers(-4, 4, size=(40, 150))
        rows = np.vstack([base, base @ np.eye(150, dtype=np.int64)])  # duplicated rows
        space = nullspace(rows.tolist())
        assert space.dim == 150 - rank(frac_rows(base.tolist()))
        v = space.basis[0]
        assert all(sum(Fraction(int(r)) * c for r, c in zip(row, v)) == 0 for row in rows)


class TestSubspaces:
    def test_membership_and_coefficients(self):
        space = LinearSubspace.from_vectors(frac_rows([[1, 0, 1], [0, 1, 1]]))
        assert space.contains([1, 1, 2])
        assert not space.contains([1, 1, 3])
        assert space.coefficients([2, 3, 5]) == [Fraction(2), Fraction(3)]

    def test_sum_and_intersection(self):
        a = LinearSubspace.from_vectors(frac_rows([[1, 0, 0], [0, 1, 0]]))
        b = LinearSubspace.from_vectors(frac_rows([[0, 1, 0], [0, 0, 1]]))
        assert a.sum_(b) == LinearSubspace.full(3)
        inter = a.intersect(b)
        assert inter.dim == 1 and inter.contains([0, 1, 0])

    def test_tracked_span_combos(self):
        span = TrackedSpan(3)
        span.add([1, 1, 0])
        span.add([0, 1, 1])
        # reduced echelon rows are [1, 0, -1] and [0, 1, 1]
        assert span.rows == [[1, 0, -1], [0, 1, 1]]
        residual, coeffs = span.reduce([1, 2, 1])
        assert all(x == 0 for x in residual)
        assert coeffs == [Fraction(1), Fraction(2)]
        # combos express each echelon row through the offered vectors
        assert span.combos[0] == {0: Fraction(1), 1: Fraction(-1)}
        assert span.coefficients([1, 1, 3]) is None


class TestSpanClosure:
    def test_zero_operator(self):
        space = span_closure([Matrix.zeros(2, 2)])
        assert space.dim == 0

    def test_sl2_closure_from_e_and_f(self):
        E12 = Matrix.from_rows([[0, 1], [0, 0]])
        E21 = Matrix.from_rows([[0, 0], [1, 0]])
        space = span_closure([E12, E21])
        assert space.dim == 3
        H = Matrix.from_rows([[1, 0], [0, -1]])
        assert space.contains([Fraction(x) for x in H.entries])

    def test_commuting_diagonals(self):
        d1 = Matrix.diagonal([Fraction(1), Fraction(2)])
        d2 = Matrix.diagonal([Fraction(3), Fraction(5)])
        space = span_closure([d1, d2])
        assert space.dim == 2

    def test_basis_matrices_roundtrip(self):
        E12 = Matrix.from_rows([[0, 1], [0, 0]])
        space = span_closure([E12])
        mats = basis_matrices(space, 2)
        assert len(mats) == 1
        assert matrix_from_tensor(mats[0]) == E12


def test_tensor_matrix_conversions():
    M = Matrix.from_rows([[Fraction(1, 2), 0], [1, 3]])
    t = tensor_from_matrix(M)
    assert matrix_from_tensor(t) == M
