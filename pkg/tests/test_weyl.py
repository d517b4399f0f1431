from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gvh.poly import Polynomial, poisson_bracket
from gvh.scalars import GaussianRational, HScalar
from gvh.weyl import (
    WeylElement,
    centralizer_basis,
    commutator,
    formal_adjoint,
    is_central,
    is_self_adjoint,
    principal_symbol,
    symmetrize,
    weyl_mul,
)
from strategies import operators, polynomials

I_UNIT = HScalar.const(GaussianRational(0, 1))


def W(text, n=1):
    return WeylElement.parse(text, n)


def P(text, n=1):
    return Polynomial.parse(text, n)


q, p = WeylElement.q(1, 1), WeylElement.p(1, 1)


# -- examples -------------------------------------------------------------------


def test_product_examples():
    assert p * q == W("q*p - i*hbar*I")
    assert p * p * q == W("q*p^2 - 2*i*hbar*p")
    assert (p * p) * (q * q) == W("q^2*p^2 - 4*i*hbar*q*p - 2*hbar^2*I")


def test_commutator_examples():
    assert commutator(q, p) == W("i*hbar*I")
    assert commutator(q**3, p) == W("3*i*hbar*q^2")
    assert commutator(q**2, p**2) == W("4*i*hbar*q*p + 2*hbar^2*I")


def test_adjoint_examples():
    assert formal_adjoint(q * p) == W("q*p - i*hbar*I")
    assert formal_adjoint(W("i*hbar*I")) == W("-i*hbar*I")
    sym = (q * p + p * q).scale(HScalar.const(Fraction(1, 2)))
    assert formal_adjoint(sym) == sym


def test_is_central_examples():
    assert is_central(W("(3/2 + i*hbar^2)*I"))
    assert not is_central(q * p)
    assert not is_central(W("q1*p2", 2))


def test_symmetrize_examples():
    assert symmetrize(P("q*p")) == W("q*p - 1/2*i*hbar*I")
    assert symmetrize(P("q^3")) == W("q^3")
    assert symmetrize(P("q^2*p^2")) == W("q^2*p^2 - 2*i*hbar*q*p - 1/2*hbar^2*I")


def test_principal_symbol_examples():
    assert principal_symbol(W("q^2*p^2 - 2*i*hbar*q*p - 1/2*hbar^2")) == P("q^2*p^2")
    assert principal_symbol(W("i*hbar*I")).is_zero()
    assert principal_symbol(q + p) == P("q + p")
    with pytest.raises(ValueError):
        principal_symbol(W("i*q"))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        weyl_mul(q, WeylElement.q(1, 2))


def test_printing_identity_and_multiterm_scalars():
    assert str(W("(1 + hbar)*q")) == "(hbar + 1)*q"
    assert str(W("I")) == "I"
    assert str(W("0")) == "0"


@pytest.mark.parametrize("degree,n", [(2, 1), (4, 1), (3, 2)])
def test_centralizer_is_scalars(degree, n):
    basis = centralizer_basis(n, degree)
    assert basis == [WeylElement.identity(n), WeylElement.scalar(I_UNIT, n)]


def test_centralizer_with_rational_hbar():
    assert centralizer_basis(1, 4, hbar=Fraction(1, 3)) == [WeylElement.identity(1), WeylElement.scalar(I_UNIT, 1)]


# -- properties -----------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(operators(1, 4), operators(1, 4), operators(1, 4))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(operators(n, 3), operators(n, 3))))
def test_product_matches_rewriting_oracle(ab):
    a, b = ab
    assert a * b == oracles.product(a, b)


@pytest.mark.parametrize("a", range(6))
@pytest.mark.parametrize("b", range(6))
def test_normal_ordering_closed_form(a, b):
    from gvh.weyl import reorder

    closed = WeylElement(1, dict(reorder((b,), (a,))))
    assert closed == oracles.reorder_pq(a, b)
    assert closed == p**b * q**a


@settings(max_examples=100, deadline=None)
@given(operators(1, 3), operators(1, 3), operators(1, 3))
def test_commutator_jacobi(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@settings(max_examples=100, deadline=None)
@given(operators(2, 3), operators(2, 3))
def test_adjoint_involutive_and_antimultiplicative(a, b):
    assert formal_adjoint(formal_adjoint(a)) == a
    assert formal_adjoint(a * b) == formal_adjoint(b) * formal_adjoint(a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: polynomials(n, 4)))
def test_symmetrize_is_self_adjoint_and_has_symbol_f(f):
    s = symmetrize(f)
    assert is_self_adjoint(s)
    assert principal_symbol(s) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: polynomials(n, 4, 3)))
def test_symmetrize_matches_averaging_oracle(f):
    assert symmetrize(f) == oracles.symmetrize(f)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(polynomials(n, 4), polynomials(n, 4))))
def test_correspondence_defect_divisible_by_hbar_squared(fg):
    f, g = fg
    lhs = commutator(symmetrize(f), symmetrize(g)).divide_hbar().scale(I_UNIT)
    defect = lhs - symmetrize(poisson_bracket(f, g))
    assert defect.divisible_by_hbar(2)


def test_correspondence_sign_on_generators():
    # {q, p} = -1 and (i/hbar)[q, p] = -I
    assert poisson_bracket(P("q"), P("p")) == P("-1")
    assert commutator(q, p).divide_hbar().scale(I_UNIT) == W("-I")


@settings(max_examples=100, deadline=None)
@given(operators(1, 3))
def test_central_elements_are_scalars(a):
    assert is_central(a) == a.is_scalar()
