"""Hypothesis strategies for polynomials and operators."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from gvh.poly import Monomial, Polynomial, monomial_basis
from gvh.scalars import GaussianRational, HScalar
from gvh.weyl import WeylElement

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def polynomials(draw, n: int = 1, max_degree: int = 3, max_terms: int = 4):
    basis = monomial_basis(n, 0, max_degree)
    monos = draw(st.lists(st.sampled_from(basis), max_size=max_terms, unique=True))
    return Polynomial(n, {m: draw(small_fractions) for m in monos})


@st.composite
def homogeneous(draw, n: int, degree: int, max_terms: int = 3):
    basis = monomial_basis(n, degree, degree)
    monos = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=max_terms, unique=True))
    return Polynomial(n, {m: draw(small_fractions) for m in monos})


@st.composite
def hscalars(draw, max_power: int = 2):
    powers = draw(st.lists(st.integers(0, max_power), max_size=2, unique=True))
    return HScalar({k: GaussianRational(draw(small_fractions), draw(small_fractions)) for k in powers})


@st.composite
def operators(draw, n: int = 1, max_degree: int = 3, max_terms: int = 3):
    basis = monomial_basis(n, 0, max_degree)
    monos = draw(st.lists(st.sampled_from(basis), max_size=max_terms, unique=True))
    return WeylElement(n, {m: draw(hscalars()) for m in monos})


def monomial(q, p) -> Monomial:
    return Monomial(tuple(q), tuple(p))
