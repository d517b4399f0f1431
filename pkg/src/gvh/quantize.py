"""Quantization maps into the formal Weyl algebra.

Every map is a linear partial map from polynomials to ``WeylElement``s, defined
on the monomial basis of a named subalgebra.  Images are produced by a rule on
demand, so infinite families such as the coordinate algebra need no truncation.
Differential operators are written in normal order: multiplication by q
becomes a q-hat factor on the left and -i hbar d/dq becomes p-hat.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .lie import SubalgebraSpec
from .poly import Monomial, Polynomial
from .scalars import GaussianRational, HScalar, as_fraction
from .weyl import WeylElement, _symmetric_monomial

__all__ = [
    "QuantizationMap",
    "DomainError",
    "schrodinger",
    "metaplectic",
    "sigma_eta",
    "weyl_map",
    "vn_extend",
    "apply_map",
    "make_map",
    "MAP_NAMES",
]

MAP_NAMES = ("schrodinger", "metaplectic", "sigma", "weyl")

_HALF_I_HBAR = HScalar({1: GaussianRational(0, Fraction(-1, 2))})  # -i hbar / 2


class DomainError(ValueError):
    """Raised when a polynomial has monomials outside a map's domain."""

    def __init__(self, map_name: str, monomials: list):
        self.map_name = map_name
        self.monomials = monomials
        shown = ", ".join(m.format() or "1" for m in monomials)
        super().__init__(f"{shown} outside the domain of the {map_name} map")


@dataclass(frozen=True)
class QuantizationMap:
    name: str
    n: int
    domain: SubalgebraSpec
    rule: Callable = field(compare=False, repr=False)
    parameters: dict = field(default_factory=dict)

    def image(self, m: Monomial) -> WeylElement:
        if not self.domain.contains_monomial(m):
            raise DomainError(self.name, [m])
        return self.rule(m)

    def basis_images(self, max_degree: int) -> dict:
        return {f.monomials()[0]: self.rule(f.monomials()[0]) for f in self.domain.basis(max_degree)}

    def __call__(self, f: Polynomial) -> WeylElement:
        return apply_map(self, f)

    def to_dict(self) -> dict:
        return {
            "map": self.name,
            "n": self.n,
            "domain": self.domain.label,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
        }


def apply_map(q: QuantizationMap, f: Polynomial) -> WeylElement:
    """Linear extension of the basis images; rejects monomials outside the domain."""
    if f.n != q.n:
        raise ValueError(f"dimension mismatch: n={f.n} vs n={q.n}")
    bad = [m for m in f.monomials() if not q.domain.contains_monomial(m)]
    if bad:
        raise DomainError(q.name, bad)
    out = WeylElement.zero(q.n)
    for m, c in f.terms.items():
        out = out + q.rule(m).scale(HScalar.const(c))
    return out


def _linear_rule(m: Monomial) -> WeylElement:
    return WeylElement.monomial(m)


def schrodinger(n: int = 1) -> QuantizationMap:
    """1, q_i, p_j go to I, q-hat_i, p-hat_j."""
    return QuantizationMap("schrodinger", n, SubalgebraSpec.named("heisenberg", n), _linear_rule)


def _metaplectic_rule(m: Monomial) -> WeylElement:
    w = WeylElement.monomial(m)
    if m.degree == 2 and m.q_degree == 1 and m.q == m.p:
        # q_i p_i: symmetric product, i.e. q-hat p-hat - (i hbar / 2) I
        w = w + WeylElement.scalar(_HALF_I_HBAR, m.n)
    return w


def metaplectic(n: int = 1) -> QuantizationMap:
    """Extension of the Schrodinger map to all polynomials of degree <= 2."""
    return QuantizationMap("metaplectic", n, SubalgebraSpec.named("hsp", n), _metaplectic_rule)


def sigma_eta(n: int = 1, eta=0) -> QuantizationMap:
    """Coordinate-algebra quantization with real parameter eta.

    f(q) p_i  ->  f(q-hat) p-hat_i + (hbar*eta - i*hbar/2) (df/dq_i)(q-hat);
    g(q)      ->  g(q-hat).
    """
    eta = as_fraction(eta)
    shift = HScalar({1: GaussianRational(eta, Fraction(-1, 2))})

    def rule(m: Monomial) -> WeylElement:
        w = WeylElement.monomial(m)
        if m.p_degree == 1:
            i = m.p.index(1)
            a = m.q[i]
            if a:
                dq = m.q[:i] + (a - 1,) + m.q[i + 1 :]
                w = w + WeylElement.monomial(Monomial(dq, (0,) * m.n), shift * a)
        return w

    return QuantizationMap(
        "sigma", n, SubalgebraSpec.named("coordinate", n), rule, {"eta": HScalar.const(eta)}
    )


def weyl_map(n: int = 1) -> QuantizationMap:
    """Totally symmetric ordering on every polynomial (candidate extension)."""
    return QuantizationMap("weyl", n, SubalgebraSpec.named("full", n), _symmetric_monomial)


def make_map(name: str, n: int = 1, eta=None) -> QuantizationMap:
    if name == "schrodinger":
        return schrodinger(n)
    if name == "metaplectic":
        return metaplectic(n)
    if name == "sigma":
        if eta is None:
            raise ValueError("the sigma map needs a rational eta")
        return sigma_eta(n, eta)
    if name == "weyl":
        return weyl_map(n)
    raise ValueError(f"unknown map {name!r}; expected one of {', '.join(MAP_NAMES)}")


VN_KINDS = ("r_of_q", "r_of_p", "r_of_q_times_p", "q_times_r_of_p")


def vn_extend(kind: str, r: Polynomial) -> WeylElement:
    """Operator forced on r(q), r(p), r(q)p or q r(p) by the Dirac rule.

    ``r`` must involve at most one variable; its index selects the canonical
    pair used (index 1 for constants).
    """
    if kind not in VN_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(VN_KINDS)}")
    variables = r.variables()
    if len(variables) > 1:
        raise ValueError(f"{r} is not a polynomial in a single variable")
    n = r.n
    index = next(iter(variables))[1] if variables else 1
    powers = {m.degree: c for m, c in r.terms.items()}
    base = WeylElement.q(index, n) if kind in ("r_of_q", "r_of_q_times_p") else WeylElement.p(index, n)
    r_hat = WeylElement.zero(n)
    power = WeylElement.identity(n)
    for k in range(max(powers, default=-1) + 1):
        if k in powers:
            r_hat = r_hat + power.scale(HScalar.const(powers[k]))
        power = power * base
    if kind in ("r_of_q", "r_of_p"):
        return r_hat
    half = HScalar.const(Fraction(1, 2))
    if kind == "r_of_q_times_p":
        other = WeylElement.p(index, n)
        return (r_hat * other + other * r_hat).scale(half)
    other = WeylElement.q(index, n)
    return (other * r_hat + r_hat * other).scale(half)
