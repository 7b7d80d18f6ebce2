from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from spgame.linalg import SingularMatrixError, solve


def test_small_system():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve(a, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]


def test_needs_pivoting():
    a = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert solve(a, [Fraction(2), Fraction(3)]) == [Fraction(3), Fraction(2)]


def test_singular():
    with pytest.raises(SingularMatrixError):
        solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(2)])


def test_huge_denominators():
    eps = Fraction(1, 2 ** 300)
    a = [[1 - eps, -eps], [Fraction(0), Fraction(1)]]
    x = solve(a, [Fraction(1), Fraction(1)])
    assert x == [(1 + eps) / (1 - eps), Fraction(1)]


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.tuples(st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(fracs, min_size=n, max_size=n))))
def test_matches_sympy(system):
    a, b = system
    m = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in a])
    if m.det() == 0:
        with pytest.raises(SingularMatrixError):
            solve(a, b)
        return
    expected = m.LUsolve(sp.Matrix([sp.Rational(x.numerator, x.denominator) for x in b]))
    got = solve(a, b)
    assert [sp.Rational(x.numerator, x.denominator) for x in got] == list(expected)
