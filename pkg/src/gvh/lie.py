"""Lie subalgebras of the polynomial Poisson algebra.

Named families are spanned by monomials, so membership is a per-monomial test
that works at every degree.  Spanned families are finite lists of polynomials
with a degree bound and use exact row reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .linalg import Echelon
from .poly import Monomial, Polynomial, homogeneous_part, monomial_basis, monomial_key, poisson_bracket
from .scalars import QuadraticNumber

__all__ = [
    "SubalgebraSpec",
    "membership",
    "closure_check",
    "ClosureReport",
    "bracket_generate",
    "GenerationReport",
    "SymplecticMatrix",
    "apply_linear_symplectic",
    "classify_quadratic_span",
    "QuadraticClassification",
    "dependency_scalar",
    "span_rank",
    "NAMED_FAMILIES",
]

NAMED_FAMILIES = ("heisenberg", "sp", "hsp", "coordinate", "momentum", "Pk", "n2_mixed", "full")


def _n2_mixed(m: Monomial) -> bool:
    # f(q1) p1 + g(q1, q2, p2)
    (_, a2), (b1, b2) = m.q, m.p
    if b1 == 0:
        return True
    return b1 == 1 and a2 == 0 and b2 == 0


_PREDICATES = {
    "heisenberg": lambda m, k: m.degree <= 1,
    "sp": lambda m, k: m.degree == 2,
    "hsp": lambda m, k: m.degree <= 2,
    "coordinate": lambda m, k: m.p_degree <= 1,
    "momentum": lambda m, k: m.q_degree <= 1,
    "Pk": lambda m, k: m.degree <= k,
    "n2_mixed": lambda m, k: _n2_mixed(m),
    "full": lambda m, k: True,
}


# -- span utilities -----------------------------------------------------------


def _row(f: Polynomial) -> dict:
    return {monomial_key(m): c for m, c in f.terms.items()}


def _echelon_of(polys) -> Echelon:
    ech = Echelon(Fraction(1))
    for f in polys:
        ech.insert(_row(f))
    return ech


def span_rank(polys) -> int:
    return _echelon_of(polys).rank


def _in_span(ech: Echelon, f: Polynomial) -> bool:
    return ech.contains(_row(f))


def _independent(polys) -> list:
    ech = Echelon(Fraction(1))
    out = []
    for f in polys:
        if ech.insert(_row(f))[0] is not None:
            out.append(f)
    return out


@dataclass(frozen=True)
class SubalgebraSpec:
    """A named family (with dimension n) or the span of given polynomials."""

    name: str
    n: int
    k: int | None = None
    span: tuple = ()
    degree_bound: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.name == "spanned":
            for f in self.span:
                if f.n != self.n:
                    raise ValueError("spanning polynomials must share the dimension n")
            return
        if self.name not in _PREDICATES:
            raise ValueError(f"unknown subalgebra family {self.name!r}")
        if self.name == "Pk" and (self.k is None or self.k < 0):
            raise ValueError("Pk needs a non-negative degree k")
        if self.name == "n2_mixed" and self.n != 2:
            raise ValueError("n2_mixed is defined for n = 2 only")

    # -- constructors -------------------------------------------------------
    @classmethod
    def named(cls, name: str, n: int = 1, k: int | None = None) -> "SubalgebraSpec":
        m = re.fullmatch(r"P(?:k)?\(?(\d+)\)?", name)
        if m:
            return cls("Pk", n, k=int(m.group(1)))
        if name == "n2_mixed" and n == 1:
            n = 2
        return cls(name, n, k=k)

    @classmethod
    def spanned(cls, polys, degree_bound: int | None = None) -> "SubalgebraSpec":
        polys = tuple(polys)
        if not polys:
            raise ValueError("a spanned subalgebra needs at least one polynomial")
        n = polys[0].n
        if degree_bound is None:
            degree_bound = max(max(f.degree for f in polys), 0)
        return cls("spanned", n, span=polys, degree_bound=degree_bound)

    @property
    def is_named(self) -> bool:
        return self.name != "spanned"

    @property
    def label(self) -> str:
        if self.name == "Pk":
            return f"P{self.k}"
        if self.name == "spanned":
            return "span{" + ", ".join(str(f) for f in self.span) + "}"
        return self.name

    # -- membership ---------------------------------------------------------
    def contains_monomial(self, m: Monomial) -> bool:
        if not self.is_named:
            return self.contains(Polynomial.monomial(m))
        return _PREDICATES[self.name](m, self.k)

    def offending_monomials(self, f: Polynomial) -> list:
        """Monomials of f that keep it out of a named family (empty if inside)."""
        if not self.is_named:
            return [] if self.contains(f) else f.monomials()
        return [m for m in f.monomials() if not self.contains_monomial(m)]

    def contains(self, f: Polynomial) -> bool:
        if f.n != self.n:
            raise ValueError(f"dimension mismatch: n={f.n} vs n={self.n}")
        if self.is_named:
            return all(self.contains_monomial(m) for m in f.terms)
        return _in_span(self._span_echelon(), f)

    def _span_echelon(self) -> Echelon:
        cached = getattr(self, "_ech", None)
        if cached is None:
            cached = _echelon_of(self.span)
            object.__setattr__(self, "_ech", cached)
        return cached

    def basis(self, max_degree: int) -> list:
        """Basis of the family truncated at total degree ``max_degree``."""
        if self.is_named:
            return [
                Polynomial.monomial(m)
                for m in monomial_basis(self.n, 0, max_degree)
                if self.contains_monomial(m)
            ]
        return [f for f in _independent(self.span) if f.degree <= max_degree]

    def to_dict(self) -> dict:
        if self.is_named:
            out = {"family": self.label, "n": self.n}
        else:
            out = {"span": [str(f) for f in self.span], "degree_bound": self.degree_bound, "n": self.n}
        return out


def membership(f: Polynomial, spec: SubalgebraSpec) -> bool:
    return spec.contains(f)


# -- closure ------------------------------------------------------------------


@dataclass
class ClosureReport:
    spec: SubalgebraSpec
    degree: int
    basis_size: int
    pairs_checked: int
    violations: list = field(default_factory=list)  # (f, g, {f,g})

    @property
    def closed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "algebra": self.spec.to_dict(),
            "degree": self.degree,
            "basis_size": self.basis_size,
            "pairs_checked": self.pairs_checked,
            "closed": self.closed,
            "violations": [{"f": str(f), "g": str(g), "bracket": str(b)} for f, g, b in self.violations],
        }


def closure_check(spec: SubalgebraSpec, max_degree: int) -> ClosureReport:
    """Bracket every unordered basis pair of the truncated family and test membership.

    Brackets are tested at whatever degree they land in, so for named families
    the check is not limited by the truncation.
    """
    basis = spec.basis(max_degree)
    report = ClosureReport(spec, max_degree, len(basis), 0)
    for i, f in enumerate(basis):
        for g in basis[i + 1 :]:
            report.pairs_checked += 1
            b = poisson_bracket(f, g)
            if not spec.contains(b):
                report.violations.append((f, g, b))
    return report


# -- generation -----------------------------------------------------------------


@dataclass
class GenerationReport:
    n: int
    degree: int
    basis: list
    discarded: int
    brackets_computed: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def full_dimension(self) -> int:
        return comb(2 * self.n + self.degree, self.degree)

    @property
    def generates_full(self) -> bool:
        """Evidence only: the span equals all polynomials of degree <= D."""
        return self.dimension == self.full_dimension

    def contains(self, f: Polynomial) -> bool:
        return _in_span(_echelon_of(self.basis), f)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "dimension": self.dimension,
            "full_dimension": self.full_dimension,
            "generates_full": self.generates_full,
            "discarded_brackets": self.discarded,
            "brackets_computed": self.brackets_computed,
            "basis": [str(f) for f in self.basis],
        }


def _truncate(f: Polynomial, max_degree: int) -> Polynomial:
    out = Polynomial.zero(f.n)
    for k in range(0, max_degree + 1):
        out = out + homogeneous_part(f, k)
    return out


def bracket_generate(seed, max_degree: int) -> GenerationReport:
    """Smallest bracket-closed subspace of P^{<=D} containing the seed.

    Brackets that land above degree D are dropped and counted in ``discarded``.
    New elements are processed in insertion order, so the output is deterministic.
    """
    seed = list(seed)
    if not seed:
        raise ValueError("empty seed")
    n = seed[0].n
    ech = Echelon(Fraction(1))
    basis: list = []

    def add(f: Polynomial) -> bool:
        if f.is_zero():
            return False
        if ech.insert(_row(f))[0] is None:
            return False
        basis.append(f)
        return True

    for f in seed:
        add(_truncate(f, max_degree))
    discarded = 0
    computed = 0
    i = 0
    while i < len(basis):
        f = basis[i]
        for j in range(i):
            computed += 1
            b = poisson_bracket(basis[j], f)
            if b.degree > max_degree:
                discarded += 1
                continue
            add(b)
        i += 1
    return GenerationReport(n, max_degree, basis, discarded, computed)


# -- linear symplectic maps ---------------------------------------------------


class SymplecticMatrix:
    """New canonical coordinates as linear forms in the old ones.

    Row i gives the i-th new coordinate (order q1..qn, p1..pn) in terms of the
    old coordinates.  Entries are Fractions or elements of one Q(sqrt d).  The
    condition S^T J S = J with J = [[0, I], [-I, 0]] is checked exactly.
    """

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(_entry(x) for x in r) for r in rows)
        size = len(rows)
        if size == 0 or size % 2 or any(len(r) != size for r in rows):
            raise ValueError("symplectic matrix must be square of even size")
        self.rows = rows
        self.n = size // 2
        if not self._is_symplectic():
            raise ValueError("matrix does not preserve the symplectic form")

    @classmethod
    def identity(cls, n: int) -> "SymplecticMatrix":
        return cls([[Fraction(int(i == j)) for j in range(2 * n)] for i in range(2 * n)])

    @classmethod
    def swap(cls, n: int = 1) -> "SymplecticMatrix":
        """New q = old p, new p = -old q."""
        rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = Fraction(1)
            rows[n + i][i] = Fraction(-1)
        return cls(rows)

    def _j(self, i: int, j: int):
        n = self.n
        if i < n and j == i + n:
            return 1
        if i >= n and j == i - n:
            return -1
        return 0

    def _is_symplectic(self) -> bool:
        size = 2 * self.n
        s = self.rows
        # (S^T J S)_{ab} = sum_{i,j} S_{ia} J_{ij} S_{jb}
        for a in range(size):
            for b in range(size):
                total = Fraction(0)
                for i in range(size):
                    if not s[i][a]:
                        continue
                    j = i + self.n if i < self.n else i - self.n
                    total = total + s[i][a] * self._j(i, j) * s[j][b]
                if total != self._j(a, b):
                    return False
        return True

    def inverse(self) -> "SymplecticMatrix":
        """S^{-1} = -J S^T J."""
        size = 2 * self.n
        n = self.n
        out = [[Fraction(0)] * size for _ in range(size)]
        for a in range(size):
            for b in range(size):
                # (-J S^T J)_{ab} = -sum J_{a,i} S_{j,i} J_{j,b} with single nonzero J entries
                i = a + n if a < n else a - n
                j = b - n if b >= n else b + n
                out[a][b] = -(self._j(a, i) * self.rows[j][i] * self._j(j, b))
        return SymplecticMatrix(out)

    def entries(self) -> list:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, SymplecticMatrix) and all(
            x == y for r1, r2 in zip(self.rows, other.rows) for x, y in zip(r1, r2)
        ) and self.n == other.n

    def __hash__(self):
        return hash(self.n)

    def describe(self) -> list:
        """Text of each new coordinate as a linear form in the old coordinates."""
        out = []
        names = _names(self.n)
        for name, r in zip(names, self.rows):
            form = Polynomial(self.n, {Monomial.var(k, i, self.n): x for (k, i), x in zip(_vars(self.n), r)})
            out.append(f"{name}' = {form}")
        return out

    def __repr__(self):
        return "SymplecticMatrix(" + "; ".join(self.describe()) + ")"


def _entry(x):
    if isinstance(x, QuadraticNumber):
        return x.simplify()
    return Fraction(x)


def _vars(n: int) -> list:
    return [("q", i) for i in range(1, n + 1)] + [("p", i) for i in range(1, n + 1)]


def _names(n: int) -> list:
    return [k if n == 1 else f"{k}{i}" for k, i in _vars(n)]


def apply_linear_symplectic(f: Polynomial, s: SymplecticMatrix) -> Polynomial:
    """Express f in the new coordinates, i.e. return f composed with S^{-1}.

    With S = swap (new q = p, new p = -q) this sends q^2 to p^2.
    """
    if f.n != s.n:
        raise ValueError(f"dimension mismatch: n={f.n} vs n={s.n}")
    n = s.n
    inv = s.inverse()
    old = []
    for r in inv.rows:
        old.append(Polynomial(n, {Monomial.var(k, i, n): x for (k, i), x in zip(_vars(n), r)}))
    cache: dict = {}

    def power(v: int, e: int) -> Polynomial:
        key = (v, e)
        if key not in cache:
            cache[key] = old[v] ** e
        return cache[key]

    out = Polynomial.zero(n)
    for m, c in f.terms.items():
        term = Polynomial.const(c, n)
        for v, e in enumerate(tuple(m.q) + tuple(m.p)):
            if e:
                term = term * power(v, e)
        out = out + term
    return out


# -- quadratic span classifier (n = 1) -------------------------------------------


def dependency_scalar(a, c, r, t, s=1) -> Fraction:
    """Vanishes iff h = a p^2 + c q^2, g = r p^2 + s pq + t q^2 and {h, g} are dependent.

    The determinant of the three coefficient vectors is -4 (a c s^2 + (a t - c r)^2);
    with s = 1 this is the familiar a c + (a t - c r)^2.
    """
    a, c, r, s, t = (Fraction(x) for x in (a, c, r, s, t))
    return a * c * s * s + (a * t - c * r) ** 2


@dataclass
class QuadraticClassification:
    tag: str  # dim3_sp2 | dim2_conjugate_to_C2 | dim1_case | degenerate
    closure_dimension: int
    witness: SymplecticMatrix | None = None
    dependency: Fraction | None = None
    h: Polynomial | None = None
    g: Polynomial | None = None
    subcase: str | None = None
    verified: bool | None = None

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "closure_dimension": self.closure_dimension,
            "dependency": None if self.dependency is None else str(self.dependency),
            "h": None if self.h is None else str(self.h),
            "g": None if self.g is None else str(self.g),
            "subcase": self.subcase,
            "witness": None if self.witness is None else self.witness.describe(),
            "verified": self.verified,
        }


_Q2 = Monomial((2,), (0,))
_QP = Monomial((1,), (1,))
_P2 = Monomial((0,), (2,))


def _acrst(h: Polynomial, g: Polynomial):
    return h.coeff(_P2), h.coeff(_Q2), g.coeff(_P2), g.coeff(_QP), g.coeff(_Q2)


def _split_diagonal(w1: Polynomial, w2: Polynomial):
    """From a basis of a 2-dim quadratic span pick h without pq term and g with s = 1."""
    s1, s2 = w1.coeff(_QP), w2.coeff(_QP)
    if s1 == 0 and s2 == 0:
        # whole span diagonal: it is span{q^2, p^2}
        return Polynomial.monomial(_Q2), Polynomial.monomial(_P2)
    if s1 == 0:
        h, g = w1, w2
    elif s2 == 0:
        h, g = w2, w1
    else:
        h, g = w2 * s1 - w1 * s2, w1
    a = h.coeff(_P2)
    h = h / a if a != 0 else h / h.coeff(_Q2)
    g = g / g.coeff(_QP)
    return h, g



def _maps_onto_c2(basis, witness: SymplecticMatrix) -> bool:
    images = [apply_linear_symplectic(f, witness) for f in basis]
    for f in images:
        if any(m not in (_Q2, _QP) for m in f.terms):
            return False
    return span_rank(images) == 2


def classify_quadratic_span(basis) -> QuadraticClassification:
    basis = list(basis)
    for f in basis:
        if f.n != 1:
            raise ValueError("the quadratic classifier works for n = 1 only")
        if not f.is_zero() and not f.is_homogeneous(2):
            raise ValueError(f"{f} is not a homogeneous quadratic")
    span = _independent([f for f in basis if not f.is_zero()])
    closure = bracket_generate(span, 2).dimension if span else 0
    dep = None
    h = g = None
    if len(span) == 2:
        h, g = _split_diagonal(*span)
        a, c, r, s, t = _acrst(h, g)
        dep = dependency_scalar(a, c, r, t, s)
    if closure == 0:
        return QuadraticClassification("degenerate", 0)
    if closure == 1:
        return QuadraticClassification("dim1_case", 1)
    if closure == 3:
        return QuadraticClassification("dim3_sp2", 3, dependency=dep, h=h, g=g)
    a, c, r, s, t = _acrst(h, g)
    if a == 0:
        subcase, witness = "a=0", SymplecticMatrix.identity(1)
    elif c == 0:
        subcase, witness = "c=0", SymplecticMatrix.swap(1)
    else:
        beta = t - r * c
        inv_root2 = QuadraticNumber(0, Fraction(1, 2), 2)
        witness = SymplecticMatrix(
            [[inv_root2 * beta, inv_root2], [-inv_root2, inv_root2 / beta]]
        )
        subcase = f"ac!=0, beta={beta}"
    verified = _maps_onto_c2(span, witness)
    return QuadraticClassification(
        "dim2_conjugate_to_C2", 2, witness=witness, dependency=dep, h=h, g=g, subcase=subcase, verified=verified
    )
