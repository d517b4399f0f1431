from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from gvh.linalg import AffineSystem
from gvh.scalars import GaussianRational, HScalar, QuadraticNumber, RationalFunction
from strategies import hscalars, small_fractions

H = sp.Symbol("h")

polys = st.lists(small_fractions, min_size=1, max_size=4)


def rf(num, den):
    return RationalFunction(tuple(num), tuple(den))


def to_expr(r: RationalFunction):
    num = sum(sp.Rational(c.numerator, c.denominator) * H**k for k, c in enumerate(r.num))
    den = sum(sp.Rational(c.numerator, c.denominator) * H**k for k, c in enumerate(r.den))
    return num / den


@settings(max_examples=100, deadline=None)
@given(polys, polys.filter(any), polys, polys.filter(any))
def test_rational_function_field_ops_match_sympy(a, b, c, d):
    x, y = rf(a, b), rf(c, d)
    X, Y = to_expr(x), to_expr(y)
    assert sp.simplify(to_expr(x + y) - (X + Y)) == 0
    assert sp.simplify(to_expr(x * y) - X * Y) == 0
    assert sp.simplify(to_expr(x - y) - (X - Y)) == 0
    if y:
        assert sp.simplify(to_expr(x / y) - X / Y) == 0


def test_rational_function_canonical():
    # (h^2 - 1) / (h - 1) == h + 1
    assert rf([-1, 0, 1], [-1, 1]) == rf([1, 1], [1])
    assert rf([0, 0, 3], [0, 6]) == rf([0, Fraction(1, 2)], [1])
    assert rf([0, 0, 3], [0, 6]).is_polynomial()
    assert not rf([1], [0, 1]).is_polynomial()
    with pytest.raises(ArithmeticError):
        rf([1], [0, 1]).polynomial_powers()
    with pytest.raises(ZeroDivisionError):
        rf([1], [0])


def test_gaussian_rational():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert str(GaussianRational(Fraction(1, 2), -3)) == "1/2 - 3*i"
    assert GaussianRational(1, 1) / GaussianRational(1, -1) == i
    assert (GaussianRational(2, 3)).conjugate() == GaussianRational(2, -3)


def test_hscalar_basics():
    h = HScalar.hbar(1)
    assert str(h * GaussianRational(0, -2)) == "-2*i*hbar"
    assert str(HScalar.hbar(2, Fraction(1, 3))) == "1/3*hbar^2"
    assert (h * 3 + 1).evaluate(2) == 7
    assert h.shift(2) == HScalar.hbar(3)
    assert HScalar.hbar(2).divide_hbar() == h
    with pytest.raises(ArithmeticError):
        (h + 1).divide_hbar()
    assert str(HScalar({1: GaussianRational(1, 1)})) == "(1 + i)*hbar"


@settings(max_examples=100, deadline=None)
@given(hscalars(), hscalars(), hscalars())
def test_hscalar_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a - a == HScalar()


def test_quadratic_number():
    r2 = QuadraticNumber.sqrt(2)
    assert r2 * r2 == 2
    assert (1 / r2) * r2 == 1
    assert (r2 + 1) * (r2 - 1) == 1
    assert str(QuadraticNumber(Fraction(1, 2), -1, 2)) == "(1/2 - sqrt(2))"
    assert (r2 * 0 + 3).simplify() == Fraction(3)
    with pytest.raises(ValueError):
        r2 + QuadraticNumber.sqrt(3)


def test_affine_system_solution_and_nullspace():
    s = AffineSystem(Fraction(0), Fraction(1))
    # x0 + x1 - 3 = 0, x1 - x2 - 1 = 0
    s.add({0: Fraction(1), 1: Fraction(1)}, Fraction(-3))
    s.add({1: Fraction(1), 2: Fraction(-1)}, Fraction(-1))
    res = s.solve()
    assert res.feasible and res.rank == 2
    sol = res.solution
    assert sol.free_columns == [2]
    (f, vec), = sol.nullspace
    x = {k: sol.particular.get(k, 0) + 5 * vec.get(k, 0) for k in range(3)}
    assert x[0] + x[1] - 3 == 0 and x[1] - x[2] - 1 == 0


def test_affine_system_witness_recombines_to_contradiction():
    s = AffineSystem(Fraction(0), Fraction(1))
    s.add({0: Fraction(9)}, Fraction(6))
    s.add({1: Fraction(2)}, Fraction(1))
    s.add({0: Fraction(3)}, Fraction(1))
    res = s.solve()
    assert not res.feasible
    mult = res.witness.multipliers
    coeffs = {}
    const = Fraction(0)
    for r, y in mult.items():
        row, c = s.rows[r]
        for j, a in row.items():
            coeffs[j] = coeffs.get(j, 0) + y * a
        const += y * c
    assert all(v == 0 for v in coeffs.values())
    assert const == res.witness.constant != 0


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5),
    st.lists(st.integers(-3, 3), min_size=5, max_size=5),
)
def test_rank_matches_sympy(rows, consts):
    s = AffineSystem(Fraction(0), Fraction(1))
    for r, c in zip(rows, consts):
        s.add({j: Fraction(v) for j, v in enumerate(r)}, Fraction(c))
    res = s.solve(columns=range(4))
    aug = [r + [c] for r, c in zip(rows, consts)]
    coeff_rank = sp.Matrix(rows).rank()
    assert res.feasible == (sp.Matrix(aug).rank() == coeff_rank)
    if res.feasible:
        assert res.rank == coeff_rank
        sol = res.solution
        for r, c in zip(rows, consts):
            assert sum(Fraction(v) * sol.particular.get(j, 0) for j, v in enumerate(r)) + c == 0
