"""Classical polynomial observables on R^{2n} and their Poisson bracket.

Variables are the positions q1..qn and momenta p1..pn.  Coefficients are exact
(``Fraction``; ``QuadraticNumber`` appears only after a symplectic change of
variables over Q(sqrt d)).

The bracket follows the sign convention

    {f, g} = sum_k  df/dp_k * dg/dq^k  -  dg/dp_k * df/dq^k

so that {p, q} = 1.  This is the opposite of the more common f_q g_p - f_p g_q,
and everything downstream (quantization maps, obstruction checks) relies on it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, NamedTuple

from .scalars import QuadraticNumber, as_fraction, format_fraction

__all__ = [
    "Monomial",
    "Polynomial",
    "poisson_bracket",
    "homogeneous_part",
    "monomial_basis",
    "monomial_key",
    "parse_polynomial",
]


class Monomial(NamedTuple):
    """Exponent vectors (q_1..q_n, p_1..p_n).

    For operators the same pair denotes the normal-ordered product with all
    position factors to the left of all momentum factors.
    """

    q: tuple
    p: tuple

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def degree(self) -> int:
        return sum(self.q) + sum(self.p)

    @property
    def p_degree(self) -> int:
        return sum(self.p)

    @property
    def q_degree(self) -> int:
        return sum(self.q)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def var(cls, kind: str, index: int, n: int, power: int = 1) -> "Monomial":
        e = [0] * n
        e[index - 1] = power
        zero = (0,) * n
        return cls(tuple(e), zero) if kind == "q" else cls(zero, tuple(e))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(
            tuple(a + b for a, b in zip(self.q, other.q)),
            tuple(a + b for a, b in zip(self.p, other.p)),
        )

    def format(self) -> str:
        n = self.n
        factors = []
        for kind, exps in (("q", self.q), ("p", self.p)):
            for i, e in enumerate(exps, start=1):
                if e:
                    name = kind if n == 1 else f"{kind}{i}"
                    factors.append(name if e == 1 else f"{name}^{e}")
        return "*".join(factors)


def monomial_key(m: Monomial):
    """Graded lexicographic key with q1 < ... < qn < p1 < ... < pn.

    Within one degree, monomials compare by their sorted variable sequence, so
    for n=1 the degree-2 monomials run q^2, q*p, p^2.
    """
    n = m.n
    seq = []
    for i, e in enumerate(m.q):
        seq.extend([i] * e)
    for i, e in enumerate(m.p):
        seq.extend([n + i] * e)
    return (len(seq), tuple(seq))


def display_key(m: Monomial):
    """Printing order: higher degree first, canonical order within a degree."""
    deg, seq = monomial_key(m)
    return (-deg, seq)


def _coerce_coeff(c):
    if isinstance(c, QuadraticNumber):
        return c.simplify()
    return as_fraction(c)


class Polynomial:
    """Immutable exact polynomial in q1..qn, p1..pn.

    ``terms`` never stores a zero coefficient; equality is equality of n and of
    the term dictionaries.  The zero polynomial has degree ``-inf``.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("dimension n must be positive")
        self.n = n
        clean = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(tuple(m[0]), tuple(m[1]))
                if len(m.q) != n or len(m.p) != n:
                    raise ValueError(f"monomial {m} does not have dimension {n}")
                c = _coerce_coeff(c)
                if c:
                    s = _coerce_coeff(clean.get(m, 0) + c)
                    if s:
                        clean[m] = s
                    else:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def const(cls, c, n: int) -> "Polynomial":
        return cls(n, {Monomial.one(n): c})

    @classmethod
    def q(cls, i: int, n: int) -> "Polynomial":
        return cls(n, {Monomial.var("q", i, n): 1})

    @classmethod
    def p(cls, i: int, n: int) -> "Polynomial":
        return cls(n, {Monomial.var("p", i, n): 1})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "Polynomial":
        return cls(m.n, {m: coeff})

    @classmethod
    def parse(cls, text: str, n: int) -> "Polynomial":
        return parse_polynomial(text, n)

    # accessors ----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in printing order: highest degree first, canonical within a degree."""
        return sorted(self._terms.items(), key=lambda t: display_key(t[0]))

    def monomials(self) -> list:
        return sorted(self._terms, key=monomial_key)

    def coeff(self, m: Monomial):
        return self._terms.get(m, Fraction(0))

    @property
    def degree(self):
        if not self._terms:
            return float("-inf")
        return max(m.degree for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def is_homogeneous(self, k: int) -> bool:
        return all(m.degree == k for m in self._terms)

    def variables(self) -> set:
        out = set()
        for m in self._terms:
            out.update(("q", i + 1) for i, e in enumerate(m.q) if e)
            out.update(("p", i + 1) for i, e in enumerate(m.p) if e)
        return out

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.const(other, self.n)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _coerce_coeff(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                s = _coerce_coeff(other)
            except TypeError:
                return NotImplemented
            if not s:
                return Polynomial._raw(self.n, {})
            return Polynomial._raw(self.n, {m: _coerce_coeff(c * s) for m, c in self._terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.n, {m: _coerce_coeff(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self, kind: str, index: int) -> "Polynomial":
        """Partial derivative with respect to q_index or p_index (1-based)."""
        i = index - 1
        out = {}
        for m, c in self._terms.items():
            exps = m.q if kind == "q" else m.p
            e = exps[i]
            if e:
                new = exps[:i] + (e - 1,) + exps[i + 1 :]
                dm = Monomial(new, m.p) if kind == "q" else Monomial(m.q, new)
                out[dm] = _coerce_coeff(c * e)
        return Polynomial._raw(self.n, out)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.n, {m: fn(c) for m, c in self._terms.items()})

    # comparison / printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        try:
            return self == Polynomial.const(other, self.n)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial(n={self.n}, {self})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for idx, (m, c) in enumerate(self.items()):
            negative, body = _format_term(c, m)
            if idx == 0:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out


def _format_term(c, m: Monomial):
    mono = m.format()
    if isinstance(c, QuadraticNumber):
        negative = c.a == 0 and c.b < 0
        cs = str(-c if negative else c)
    else:
        negative = c < 0
        c = abs(c)
        cs = format_fraction(c)
    if not mono:
        return negative, cs
    if cs == "1":
        return negative, mono
    return negative, f"{cs}*{mono}"


def poisson_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """{f, g} = sum_k f_{p_k} g_{q^k} - g_{p_k} f_{q^k}.

    >>> q, p = Polynomial.q(1, 1), Polynomial.p(1, 1)
    >>> str(poisson_bracket(p, q))
    '1'
    >>> str(poisson_bracket(p * q, q**2))
    '2*q^2'
    """
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: n={f.n} vs n={g.n}")
    out = Polynomial.zero(f.n)
    if f.is_zero() or g.is_zero():
        return out
    for k in range(1, f.n + 1):
        out = out + f.derivative("p", k) * g.derivative("q", k) - g.derivative("p", k) * f.derivative("q", k)
    return out


def homogeneous_part(f: Polynomial, k: int) -> Polynomial:
    return Polynomial._raw(f.n, {m: c for m, c in f._terms.items() if m.degree == k})


def monomial_basis(n: int, k_lo: int, k_hi: int) -> list:
    """All monomials in 2n variables of total degree in [k_lo, k_hi], canonical order."""
    if n < 1 or k_lo < 0 or k_hi < k_lo:
        raise ValueError("need n >= 1 and 0 <= k_lo <= k_hi")
    out = []
    for deg in range(k_lo, k_hi + 1):
        for combo in itertools.combinations_with_replacement(range(2 * n), deg):
            e = [0] * (2 * n)
            for v in combo:
                e[v] += 1
            out.append(Monomial(tuple(e[:n]), tuple(e[n:])))
    return sorted(out, key=monomial_key)


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse the textual grammar of the CLI into a canonical Polynomial."""
    from .parse import parse_classical

    return parse_classical(text, n)


def polynomials_from(texts: Iterable[str], n: int) -> list:
    return [parse_polynomial(t, n) for t in texts]
