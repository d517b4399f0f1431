"""Formal Weyl algebra in normal order.

Elements are finite sums  c * q1^a1..qn^an p1^b1..pn^bn  with every position
factor left of every momentum factor and coefficients ``HScalar`` (polynomials in
hbar over the Gaussian rationals).  The defining relation is

    p_i q_i = q_i p_i - i*hbar        ([q_i, p_i] = i*hbar)

and operators with different indices commute.  Moving p^b past q^a uses

    p^b q^a = sum_k C(a,k) C(b,k) k! (-i hbar)^k q^(a-k) p^(b-k).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .poly import Monomial, Polynomial, display_key
from .scalars import GaussianRational, HScalar, as_fraction

__all__ = [
    "WeylElement",
    "weyl_mul",
    "commutator",
    "formal_adjoint",
    "is_central",
    "symmetrize",
    "principal_symbol",
    "reorder",
    "centralizer_basis",
]


def _scalar(x) -> HScalar:
    return x if isinstance(x, HScalar) else HScalar.const(x)


class WeylElement:
    """Immutable normal-ordered operator polynomial in dimension n."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(tuple(m[0]), tuple(m[1]))
                if len(m.q) != n or len(m.p) != n:
                    raise ValueError(f"monomial {m} does not have dimension {n}")
                c = _scalar(c)
                if c:
                    s = clean.get(m)
                    s = c if s is None else s + c
                    if s:
                        clean[m] = s
                    else:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls._raw(n, {})

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls._raw(n, {Monomial.one(n): HScalar.const(1)})

    @classmethod
    def scalar(cls, c, n: int) -> "WeylElement":
        return cls(n, {Monomial.one(n): _scalar(c)})

    @classmethod
    def q(cls, i: int, n: int) -> "WeylElement":
        return cls._raw(n, {Monomial.var("q", i, n): HScalar.const(1)})

    @classmethod
    def p(cls, i: int, n: int) -> "WeylElement":
        return cls._raw(n, {Monomial.var("p", i, n): HScalar.const(1)})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "WeylElement":
        return cls(m.n, {m: coeff})

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "WeylElement":
        """Read each classical monomial as the normal-ordered operator monomial."""
        return cls(f.n, {m: HScalar.const(c) for m, c in f.terms.items()})

    @classmethod
    def parse(cls, text: str, n: int) -> "WeylElement":
        from .parse import parse_operator

        return parse_operator(text, n)

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: display_key(t[0]))

    def coeff(self, m: Monomial) -> HScalar:
        return self._terms.get(m, HScalar())

    @property
    def degree(self):
        """Maximal total monomial degree; powers of hbar are ignored."""
        if not self._terms:
            return float("-inf")
        return max(m.degree for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        one = Monomial.one(self.n)
        return all(m == one for m in self._terms)

    def scalar_part(self) -> HScalar:
        return self.coeff(Monomial.one(self.n))

    # -- arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")
            return other
        return WeylElement.scalar(_scalar(other), self.n)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return WeylElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        try:
            s = _scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        try:
            s = _scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def scale(self, s) -> "WeylElement":
        s = _scalar(s)
        if not s:
            return WeylElement.zero(self.n)
        out = {}
        for m, c in self._terms.items():
            v = c * s
            if v:
                out[m] = v
        return WeylElement._raw(self.n, out)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = WeylElement.identity(self.n)
        for _ in range(e):
            out = out * self
        return out

    def map_scalars(self, fn) -> "WeylElement":
        return WeylElement(self.n, {m: fn(c) for m, c in self._terms.items()})

    def divide_hbar(self) -> "WeylElement":
        return WeylElement._raw(self.n, {m: c.divide_hbar() for m, c in self._terms.items()})

    def divisible_by_hbar(self, power: int = 1) -> bool:
        return all(c.divisible_by_hbar(power) for c in self._terms.values())

    # -- comparison / printing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.n == other.n and self._terms == other._terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"WeylElement(n={self.n}, {self})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Canonical text: highest monomials first, identity printed as ``I``."""
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


def _format_term(c: HScalar, m: Monomial):
    mono = m.format() or "I"
    if c.is_single_term():
        text = c.format()
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if text == "1":
            return negative, mono
        return negative, f"{text}*{mono}"
    return False, f"({c.format()})*{mono}"


@lru_cache(maxsize=None)
def _reorder_1d(b: int, a: int) -> tuple:
    """p^b q^a in normal order as ((k, integer coefficient), ...) for (-i hbar)^k."""
    return tuple((k, comb(a, k) * comb(b, k) * factorial(k)) for k in range(min(a, b) + 1))


@lru_cache(maxsize=None)
def _minus_i_hbar_power(k: int) -> HScalar:
    # (-i)^k cycles through 1, -i, -1, i
    unit = [GaussianRational(1), GaussianRational(0, -1), GaussianRational(-1), GaussianRational(0, 1)][k % 4]
    return HScalar({k: unit})


@lru_cache(maxsize=65536)
def reorder(p_exps: tuple, q_exps: tuple) -> tuple:
    """Normal-ordered form of  p^p_exps * q^q_exps  as ((Monomial, HScalar), ...)."""
    n = len(q_exps)
    partial = [((), (), 0, 1)]  # q exps, p exps, total k, integer coefficient
    for i in range(n):
        nxt = []
        for qe, pe, ktot, coef in partial:
            for k, c in _reorder_1d(p_exps[i], q_exps[i]):
                nxt.append((qe + (q_exps[i] - k,), pe + (p_exps[i] - k,), ktot + k, coef * c))
        partial = nxt
    out: dict = {}
    for qe, pe, ktot, coef in partial:
        m = Monomial(qe, pe)
        term = _minus_i_hbar_power(ktot) * coef
        out[m] = out[m] + term if m in out else term
    return tuple((m, c) for m, c in out.items() if c)


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Associative product, reduced to normal order."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: n={a.n} vs n={b.n}")
    n = a.n
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            c0 = ca * cb
            for mid, cm in reorder(ma.p, mb.q):
                m = Monomial(
                    tuple(x + y for x, y in zip(ma.q, mid.q)),
                    tuple(x + y for x, y in zip(mid.p, mb.p)),
                )
                v = c0 * cm
                s = out.get(m)
                out[m] = v if s is None else s + v
    return WeylElement._raw(n, {m: c for m, c in out.items() if c})


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_mul(a, b) - weyl_mul(b, a)


def formal_adjoint(a: WeylElement) -> WeylElement:
    """Antilinear anti-automorphism fixing q_i, p_i and hbar (i -> -i).

    The adjoint of c q^a p^b is conj(c) p^b q^a, renormal-ordered.
    """
    out: dict = {}
    for m, c in a._terms.items():
        cc = c.conjugate()
        for mm, cm in reorder(m.p, m.q):
            v = cc * cm
            s = out.get(mm)
            out[mm] = v if s is None else s + v
    return WeylElement._raw(a.n, {m: c for m, c in out.items() if c})


def is_self_adjoint(a: WeylElement) -> bool:
    return formal_adjoint(a) == a


def generators(n: int) -> list:
    return [WeylElement.q(i, n) for i in range(1, n + 1)] + [WeylElement.p(i, n) for i in range(1, n + 1)]


def is_central(a: WeylElement) -> bool:
    """True iff ``a`` commutes with every q_i and p_i."""
    return all(commutator(a, x).is_zero() for x in generators(a.n))


@lru_cache(maxsize=None)
def _symmetric_1d(a: int, b: int) -> tuple:
    """Average of all orderings of a q's and b p's: ((k, rational coeff of (-i hbar/2)^k))."""
    return tuple((k, comb(a, k) * comb(b, k) * factorial(k)) for k in range(min(a, b) + 1))


def _symmetric_monomial(m: Monomial) -> WeylElement:
    n = m.n
    partial = [((), (), 0, 1)]
    for i in range(n):
        nxt = []
        for qe, pe, ktot, coef in partial:
            for k, c in _symmetric_1d(m.q[i], m.p[i]):
                nxt.append((qe + (m.q[i] - k,), pe + (m.p[i] - k,), ktot + k, coef * c))
        partial = nxt
    out: dict = {}
    for qe, pe, ktot, coef in partial:
        mm = Monomial(qe, pe)
        term = _minus_i_hbar_power(ktot) * (as_fraction(coef) / 2**ktot)
        out[mm] = out[mm] + term if mm in out else term
    return WeylElement(n, out)


def symmetrize(f: Polynomial) -> WeylElement:
    """Totally symmetric (Weyl) ordering, extended linearly.

    q^a p^b maps to the average over all distinct arrangements of a copies of q
    and b copies of p, i.e.  sum_k C(a,k) C(b,k) k! (-i hbar/2)^k q^(a-k) p^(b-k)
    per index.
    """
    out = WeylElement.zero(f.n)
    for m, c in f.terms.items():
        out = out + _symmetric_monomial(m).scale(HScalar.const(c))
    return out


def principal_symbol(a: WeylElement) -> Polynomial:
    """Drop every hbar-dependent term and read the remaining monomials classically."""
    terms = {}
    for m, c in a._terms.items():
        c0 = c.coeff(0)
        if c0.im != 0:
            raise ValueError(f"non-real hbar^0 coefficient {c0} on {m.format() or 'I'}")
        if c0.re:
            terms[m] = c0.re
    return Polynomial(a.n, terms)


def centralizer_basis(n: int, degree: int, hbar="formal") -> list:
    """Exact solution space of [X, q_i] = [X, p_i] = 0 over a generic ansatz.

    X ranges over all operators of degree <= ``degree`` with unknown complex
    coefficients.  Returns a basis over the real scalars (hbar formal, or a
    rational value) as WeylElements; the centre fact says it is {I, i*I}.
    """
    from .ansatz import AnsatzContext

    ctx = AnsatzContext(hbar)
    x = ctx.generic(n, degree, label="X")
    for g in generators(n):
        ctx.impose(x.commutator_with(g, side="right"), label=("commutes", str(g)))
    res = ctx.solve(params=x.params)
    if not res.feasible:
        raise AssertionError("homogeneous system cannot be inconsistent")
    return [ctx.direction(x, vec) for _, vec in res.solution.nullspace]
