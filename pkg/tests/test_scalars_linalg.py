"""Exact scalar arithmetic and the linear algebra kernel."""

import random
from fractions import Fraction

import pytest

from helpers import *  # noqa: F401,F403  (path setup)
from hodgepath.scalars import Field, QQ, Scalar, ScalarError
from hodgepath import linalg


def S(re, im=0):
    return Scalar(re, im, -1)


def test_scalar_arithmetic():
    a = S(Fraction(1, 2), 1)
    b = S(3, Fraction(-1, 3))
    assert a + b == S(Fraction(7, 2), Fraction(2, 3))
    assert a * b == S(Fraction(3, 2) + Fraction(1, 3), 3 - Fraction(1, 6))
    assert (a / b) * b == a
    assert a - a == S(0)
    assert not S(0)


def test_conjugation_is_involution_fixing_rationals():
    # (1 + i) -> (1 - i) -> (1 + i)
    z = S(1, 1)
    assert z.conjugate() == S(1, -1)
    assert z.conjugate().conjugate() == z
    r = S(Fraction(5, 7))
    assert r.conjugate() == r


def test_norm_positive_division():
    z = S(2, 3)
    assert z * z.inverse() == S(1)
    with pytest.raises(ZeroDivisionError):
        S(0).inverse()


def test_field_mixing_rejected():
    with pytest.raises(ScalarError):
        Scalar(1, 1, -1) * Scalar(1, 1, -2)
    # rational scalars are field-agnostic
    assert Scalar(2, 0, -1) * Scalar(1, 1, -2) == Scalar(2, 2, -2)


def test_field_objects():
    assert QQ.is_rational
    F = Field(-3)
    assert F.sqrt_d() * F.sqrt_d() == Scalar(-3, 0, -3)
    with pytest.raises(ScalarError):
        QQ.scalar(1, 1)


def test_kernel_of_ones_matrix():
    rows = [[S(1), S(1)], [S(1), S(1)]]
    k = linalg.kernel_basis(rows, 2)
    assert len(k) == 1


def test_solve_scalar_equation():
    # [2] x = [3] over Q -> 3/2
    sol = linalg.solve([[S(2)]], 1, [S(3)])
    assert sol == [S(Fraction(3, 2))]
    assert linalg.solve([[S(0)]], 1, [S(3)]) is None


def test_rank_nullity():
    rng = random.Random(3)
    for _ in range(10):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[S(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)]
        r = linalg.rank(rows, m)
        k = len(linalg.kernel_basis(rows, m))
        assert r + k == m


def test_subquotient_canonical():
    rows_num = [[S(1), S(0), S(1)], [S(0), S(1), S(1)], [S(1), S(1), S(2)]]
    den = [[S(1), S(1), S(2)]]
    sq = linalg.Subquotient(rows_num, den, 3)
    assert sq.dim == 1
    c = sq.coords([S(1), S(0), S(1)])
    assert c is not None and len(c) == 1
    # denominator elements map to zero
    assert sq.coords(den[0]) == [S(0)]


def test_intersect():
    a = [[S(1), S(0)], [S(0), S(1)]]
    b = [[S(1), S(1)]]
    inter = linalg.intersect(a, b, 2)
    assert linalg.span_dim(inter, 2) == 1
    assert linalg.span_dim(linalg.intersect([[S(1), S(0)]], [[S(0), S(1)]], 2), 2) == 0


def test_solve_deterministic_earliest_support():
    # underdetermined: x + y = 1 -> pivot on x, y = 0
    sol = linalg.solve([[S(1), S(1)]], 2, [S(1)])
    assert sol == [S(1), S(0)]
