from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gvh.lie import (
    SubalgebraSpec,
    SymplecticMatrix,
    apply_linear_symplectic,
    bracket_generate,
    classify_quadratic_span,
    closure_check,
    dependency_scalar,
    membership,
    span_rank,
)
from gvh.poly import Polynomial, monomial_basis, poisson_bracket
from gvh.scalars import QuadraticNumber
from strategies import homogeneous, polynomials, small_fractions


def P(text, n=1):
    return Polynomial.parse(text, n)


# -- families and membership ------------------------------------------------------------


def test_named_parsing():
    assert SubalgebraSpec.named("P3").k == 3
    assert SubalgebraSpec.named("Pk(3)").k == 3
    assert SubalgebraSpec.named("Pk3").k == 3
    assert SubalgebraSpec.named("n2_mixed", 2).n == 2
    assert SubalgebraSpec.named("n2_mixed", 1).n == 2
    with pytest.raises(ValueError):
        SubalgebraSpec.named("nonsense")


@pytest.mark.parametrize(
    "family,f,expected",
    [
        ("heisenberg", "q + p + 3", True),
        ("heisenberg", "q*p", False),
        ("sp", "q^2 - p^2", True),
        ("sp", "q^2 + 1", False),
        ("hsp", "q^2 + q + 1", True),
        ("coordinate", "q^7*p + q^3", True),
        ("coordinate", "q*p^2", False),
        ("momentum", "q*p^5 + p^2", True),
        ("momentum", "q^2*p", False),
        ("P3", "q^2*p", True),
        ("P3", "q^4", False),
    ],
)
def test_membership_examples(family, f, expected):
    assert membership(P(f), SubalgebraSpec.named(family, 1)) is expected


def test_n2_mixed_membership():
    spec = SubalgebraSpec.named("n2_mixed", 2)
    assert membership(P("q1^3*p1 + q2^2*p2^3 + q1*q2*p2", 2), spec)
    assert not membership(P("q2*p1", 2), spec)
    assert not membership(P("p1^2", 2), spec)


def test_spanned_membership():
    spec = SubalgebraSpec.spanned([P("q^2 + p"), P("q")])
    assert spec.contains(P("2*q^2 + 2*p - q"))
    assert not spec.contains(P("p"))
    assert spec.offending_monomials(P("p + q^3"))


@pytest.mark.parametrize("family,n", [("heisenberg", 2), ("sp", 2), ("hsp", 2), ("coordinate", 2), ("momentum", 2), ("P4", 2)])
def test_named_basis_sizes_match_enumeration(family, n):
    spec = SubalgebraSpec.named(family, n)
    basis = spec.basis(4)
    expected = sum(1 for m in monomial_basis(n, 0, 4) if spec.contains_monomial(m))
    assert len(basis) == expected
    assert span_rank(basis) == len(basis)


# -- closure ------------------------------------------------------------------------------


@pytest.mark.parametrize("family,n", [("heisenberg", 1), ("sp", 1), ("hsp", 2), ("coordinate", 1), ("momentum", 1), ("n2_mixed", 2)])
def test_families_closed(family, n):
    assert closure_check(SubalgebraSpec.named(family, n), 6).closed


def test_pk_is_not_closed():
    report = closure_check(SubalgebraSpec.named("P3", 1), 3)
    assert not report.closed
    assert all(b.degree == 4 for _, _, b in report.violations)


def test_span_q2_p2_not_closed():
    report = closure_check(SubalgebraSpec.spanned([P("q^2"), P("p^2")]), 2)
    assert not report.closed
    assert [str(b) for _, _, b in report.violations] == ["-4*q*p"]


# -- generation ---------------------------------------------------------------------------


def test_generate_quadratics():
    report = bracket_generate([P("q^2"), P("p^2")], 2)
    assert report.dimension == 3
    assert report.contains(P("q*p"))


def test_generate_full_from_coordinate_cubic_and_p2():
    seed = SubalgebraSpec.named("coordinate", 1).basis(3) + [P("p^2")]
    report = bracket_generate(seed, 6)
    assert report.dimension == oracles.count_monomials(1, 0, 6) == 28
    assert report.generates_full


def test_generate_from_p2_and_cubic():
    seed = SubalgebraSpec.named("P2", 1).basis(2) + [P("q^2*p")]
    report = bracket_generate(seed, 4)
    assert report.dimension == oracles.count_monomials(1, 0, 4) == 15


def test_generate_stays_inside_closed_family():
    # a seed inside the coordinate algebra never leaves it
    seed = SubalgebraSpec.named("P1", 1).basis(1) + [P("q^2*p")]
    report = bracket_generate(seed, 4)
    spec = SubalgebraSpec.named("coordinate", 1)
    assert all(spec.contains(f) for f in report.basis)
    assert report.dimension < 15


def test_generate_rejects_empty_seed():
    with pytest.raises(ValueError):
        bracket_generate([], 3)


# -- symplectic maps ------------------------------------------------------------------------


def test_symplectic_matrix_validation():
    with pytest.raises(ValueError):
        SymplecticMatrix([[2, 0], [0, 1]])
    s = SymplecticMatrix([[1, 1], [0, 1]])
    assert s.inverse().inverse() == s


def test_apply_swap():
    s = SymplecticMatrix.swap(1)
    images = {str(apply_linear_symplectic(P(t), s)) for t in ("q^2", "p^2")}
    assert images == {"q^2", "p^2"}


shears = st.builds(lambda a: SymplecticMatrix([[1, a], [0, 1]]), small_fractions)
lower = st.builds(lambda a: SymplecticMatrix([[1, 0], [a, 1]]), small_fractions)


@settings(max_examples=100, deadline=None)
@given(polynomials(1, 3), polynomials(1, 3), shears, lower)
def test_linear_symplectic_maps_preserve_brackets(f, g, s1, s2):
    for s in (s1, s2, SymplecticMatrix.swap(1)):
        lhs = apply_linear_symplectic(poisson_bracket(f, g), s)
        rhs = poisson_bracket(apply_linear_symplectic(f, s), apply_linear_symplectic(g, s))
        assert lhs == rhs


# -- classifier -------------------------------------------------------------------------------


def test_classify_sp2():
    c = classify_quadratic_span([P("q^2"), P("p^2")])
    assert c.tag == "dim3_sp2" and c.closure_dimension == 3


def test_classify_identity_witness():
    c = classify_quadratic_span([P("q^2"), P("q*p")])
    assert c.tag == "dim2_conjugate_to_C2"
    assert c.witness == SymplecticMatrix.identity(1)
    assert c.verified


def test_classify_swap_witness():
    c = classify_quadratic_span([P("p^2"), P("q*p")])
    assert c.tag == "dim2_conjugate_to_C2"
    assert c.witness == SymplecticMatrix.swap(1)
    assert c.verified


@pytest.mark.parametrize("beta", [2, 3, Fraction(1, 2), -1])
def test_classify_beta_family(beta):
    h = P("p^2") - P("q^2") * beta**2
    g = P("p^2") + P("q*p") * (2 * beta) + P("q^2") * beta**2
    c = classify_quadratic_span([h, g])
    assert c.tag == "dim2_conjugate_to_C2"
    assert c.dependency == 0
    assert c.verified
    assert all(isinstance(x, QuadraticNumber) or x == 0 for row in c.witness.entries() for x in row)


def test_classify_degenerate_and_rank_one():
    assert classify_quadratic_span([P("0")]).tag == "degenerate"
    assert classify_quadratic_span([P("q^2"), P("2*q^2")]).tag == "dim1_case"
    with pytest.raises(ValueError):
        classify_quadratic_span([P("q^3")])


def _dependency_by_rank(a, c, r, t):
    h, g = P("p^2") * a + P("q^2") * c, P("p^2") * r + P("q*p") + P("q^2") * t
    rows = [[f.coeff(m) for m in monomial_basis(1, 2, 2)] for f in (h, g, poisson_bracket(h, g))]
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in rows]).rank()


def test_dependency_scalar_matches_rank_on_random_samples():
    rng = random.Random(20240917)
    vals = [Fraction(k, d) for k in range(-3, 4) for d in (1, 2, 3)]
    checked = 0
    for _ in range(100):
        a, c, r, t = (rng.choice(vals) for _ in range(4))
        if a == 0 and c == 0:
            continue
        checked += 1
        assert (dependency_scalar(a, c, r, t) == 0) == (_dependency_by_rank(a, c, r, t) < 3)
    assert checked > 90


@settings(max_examples=100, deadline=None)
@given(homogeneous(1, 2), homogeneous(1, 2))
def test_classifier_closure_dimension_matches_rank_oracle(f, g):
    c = classify_quadratic_span([f, g])
    closure = bracket_generate([f, g], 2).basis
    assert c.closure_dimension == oracles.rank([[x.coeff(m) for m in monomial_basis(1, 2, 2)] for x in closure])
    if c.tag == "dim2_conjugate_to_C2":
        assert c.verified
