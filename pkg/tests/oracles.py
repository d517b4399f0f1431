"""Independent reference implementations used to check the package.

None of these share code with ``gvh``: brackets come from sympy
differentiation, operator products from naive word rewriting, symmetric
ordering from explicit averaging over arrangements, counts from enumeration
and ranks from sympy matrices.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

from gvh.poly import Monomial, Polynomial
from gvh.scalars import GaussianRational, HScalar
from gvh.weyl import WeylElement

HBAR = sp.Symbol("hbar")


def symbols(n: int):
    qs = sp.symbols(f"q1:{n + 1}")
    ps = sp.symbols(f"p1:{n + 1}")
    return qs, ps


def to_sympy(f: Polynomial):
    qs, ps = symbols(f.n)
    expr = sp.Integer(0)
    for m, c in f.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, e in zip(qs, m.q):
            term *= x**e
        for x, e in zip(ps, m.p):
            term *= x**e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, n: int) -> Polynomial:
    qs, ps = symbols(n)
    poly = sp.Poly(sp.expand(expr), *qs, *ps)
    terms = {}
    for exps, c in poly.terms():
        c = sp.Rational(c)
        terms[Monomial(tuple(exps[:n]), tuple(exps[n:]))] = Fraction(int(c.p), int(c.q))
    return Polynomial(n, terms)


def bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """{f, g} = sum df/dp dg/dq - dg/dp df/dq by symbolic differentiation."""
    qs, ps = symbols(f.n)
    F, G = to_sympy(f), to_sympy(g)
    expr = sum(sp.diff(F, p) * sp.diff(G, q) - sp.diff(G, p) * sp.diff(F, q) for q, p in zip(qs, ps))
    return from_sympy(expr, f.n)


def count_monomials(n: int, lo: int, hi: int) -> int:
    count = 0
    for exps in itertools.product(range(hi + 1), repeat=2 * n):
        if lo <= sum(exps) <= hi:
            count += 1
    return count


def rank(rows) -> int:
    return sp.Matrix(rows).rank()


# -- operator words -------------------------------------------------------------------
# A word is a tuple of letters ("q", i) / ("p", i); an operator is a dict word -> sympy coeff.


def normal_order_word(word: tuple, n: int) -> dict:
    """Rewrite with p_i q_i -> q_i p_i - i hbar and commute distinct letters until
    every q precedes every p.  Returns dict Monomial -> sympy coefficient."""
    pending = {word: sp.Integer(1)}
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            if a[0] == "p" and b[0] == "q":
                swapped = w[:k] + (b, a) + w[k + 2 :]
                pending[swapped] = pending.get(swapped, 0) + c
                if a[1] == b[1]:
                    shorter = w[:k] + w[k + 2 :]
                    pending[shorter] = pending.get(shorter, 0) - sp.I * HBAR * c
                break
        else:
            q = [0] * n
            p = [0] * n
            for kind, i in w:
                (q if kind == "q" else p)[i - 1] += 1
            m = Monomial(tuple(q), tuple(p))
            done[m] = sp.expand(done.get(m, 0) + c)
    return {m: c for m, c in done.items() if c != 0}


def word_of(m: Monomial) -> tuple:
    word = []
    for i, e in enumerate(m.q, start=1):
        word += [("q", i)] * e
    for i, e in enumerate(m.p, start=1):
        word += [("p", i)] * e
    return tuple(word)


def to_weyl(terms: dict, n: int) -> WeylElement:
    out = {}
    for m, c in terms.items():
        poly = sp.Poly(sp.expand(c), HBAR)
        h = {}
        for (k,), coeff in poly.terms():
            re, im = sp.re(coeff), sp.im(coeff)
            h[k] = GaussianRational(Fraction(int(sp.Rational(re).p), int(sp.Rational(re).q)),
                                    Fraction(int(sp.Rational(im).p), int(sp.Rational(im).q)))
        out[m] = HScalar(h)
    return WeylElement(n, out)


def weyl_terms(a: WeylElement) -> dict:
    out = {}
    for m, c in a.terms.items():
        expr = sp.Integer(0)
        for k, v in c.terms.items():
            expr += (sp.Rational(v.re.numerator, v.re.denominator) + sp.I * sp.Rational(v.im.numerator, v.im.denominator)) * HBAR**k
        out[m] = expr
    return out


def product(a: WeylElement, b: WeylElement) -> WeylElement:
    """Concatenate normal-ordered words and rewrite from scratch."""
    n = a.n
    total: dict = {}
    for ma, ca in weyl_terms(a).items():
        for mb, cb in weyl_terms(b).items():
            for m, c in normal_order_word(word_of(ma) + word_of(mb), n).items():
                total[m] = sp.expand(total.get(m, 0) + ca * cb * c)
    return to_weyl({m: c for m, c in total.items() if c != 0}, n)


def reorder_pq(a: int, b: int) -> WeylElement:
    """p^b q^a by rewriting, n = 1."""
    word = (("p", 1),) * b + (("q", 1),) * a
    return to_weyl(normal_order_word(word, 1), 1)


def symmetrize(f: Polynomial) -> WeylElement:
    """Average of every distinct arrangement of the letters of each monomial."""
    n = f.n
    total: dict = {}
    for m, c in f.terms.items():
        letters = word_of(m)
        arrangements = set(itertools.permutations(letters))
        weight = sp.Rational(c.numerator, c.denominator) / len(arrangements)
        for w in arrangements:
            for mm, cc in normal_order_word(w, n).items():
                total[mm] = sp.expand(total.get(mm, 0) + weight * cc)
    return to_weyl({m: c for m, c in total.items() if c != 0}, n)
