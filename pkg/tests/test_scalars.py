from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ltskit.scalars import (
    QQ,
    ExtElement,
    Matrix,
    NotAUnit,
    QuadraticExtension,
    RingMismatch,
    build_degenerate_quaternions,
    dual_numbers,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def eps():
    return dual_numbers().gen()


def test_dual_number_nilpotence():
    e = eps()
    assert (1 + e) * (1 - e) == ExtElement(1, 0, 0)
    assert e * e == ExtElement(0, 0, 0)


def test_gaussian_like_square():
    x = QuadraticExtension(-1).gen()
    assert x * x == ExtElement(-1, 0, -1)


def test_eps_is_not_a_unit():
    with pytest.raises(NotAUnit):
        eps().inverse()


def test_unit_inverse_roundtrip():
    a = ExtElement(2, 3, 0)  # base 2 is a unit, so 2 + 3*eps is one
    assert a * a.inverse() == ExtElement(1, 0, 0)
    b = ExtElement(1, 2, -1)
    assert b * b.inverse() == ExtElement(1, 0, -1)


def test_mixed_mu_rejected():
    with pytest.raises(RingMismatch):
        ExtElement(1, 1, 0) + ExtElement(1, 1, -1)


@given(a=rationals, b=rationals, c=rationals, d=rationals, e=rationals, f=rationals)
def test_ext_ring_axioms(a, b, c, d, e, f):
    mu = Fraction(-1)
    x = ExtElement(a, b, mu)
    y = ExtElement(c, d, mu)
    z = ExtElement(e, f, mu)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x


@pytest.mark.parametrize("mu,field", [(0, False), (1, False), (-1, True), (2, True), (Fraction(4, 9), False)])
def test_field_detection(mu, field):
    assert QuadraticExtension(mu).is_field is field


def test_two_is_invertible_everywhere():
    for ring in (QQ, dual_numbers(), QuadraticExtension(-1), QuadraticExtension(1)):
        two = ring.coerce(2)
        assert ring.is_unit(two)
        inv = ring.inverse(two)
        assert inv * two == ring.one()


def test_matrix_basics():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.identity(2)
    assert A @ B == A
    assert (A - A).is_zero()
    assert A.transpose()[0, 1] == 3
    assert A.commutator(B).is_zero()
    assert A.trace() == 5


def test_matrix_over_dual_numbers():
    R = dual_numbers()
    e = R.gen()
    X = Matrix.from_rows([[e, R.zero()], [R.zero(), -e]], R)
    Y = Matrix.from_rows([[R.zero(), R.one()], [R.one(), R.zero()]], R)
    XY = X @ Y
    YX = Y @ X
    assert XY != YX
    assert XY[0, 1] == e and XY[1, 0] == -e
    assert YX[0, 1] == -e and YX[1, 0] == e


class TestDegenerateQuaternions:
    def test_construction_mu0(self):
        D = build_degenerate_quaternions(0)
        assert len(D.basis) == 4

    def test_noncommutativity_witness(self):
        D = build_degenerate_quaternions(0)
        X, Y = D.basis[1], D.basis[2]  # diag(eps, -eps) and antidiag(1, 1)
        assert X @ Y != Y @ X
        assert D.contains(X @ Y)

    def test_fixed_ring_is_diagonal(self):
        D = build_degenerate_quaternions(0)
        assert D.is_fixed_by_tau(D.basis[0])
        assert D.is_fixed_by_tau(D.basis[1])
        assert not D.is_fixed_by_tau(D.basis[2])
        assert not D.is_fixed_by_tau(D.basis[3])

    def test_diagonal_subring_commutes(self):
        D = build_degenerate_quaternions(0)
        a = D.diagonal_embedding(ExtElement(2, 5, 0))
        b = D.diagonal_embedding(ExtElement(-1, 3, 0))
        assert a.commutator(b).is_zero()

    @pytest.mark.parametrize("mu", [0, 1, -1, Fraction(2, 3)])
    def test_other_mu_values(self, mu):
        D = build_degenerate_quaternions(mu)
        for i, ei in enumerate(D.basis):
            for j, ej in enumerate(D.basis):
                assert D.from_coords(D.product_table[i][j]) == ei @ ej

    def test_membership_predicate(self):
        D = build_degenerate_quaternions(0)
        R = D.ring
        bad = Matrix.from_rows([[R.one(), R.one()], [R.zero(), R.one()]], R)
        assert not D.contains(bad)
