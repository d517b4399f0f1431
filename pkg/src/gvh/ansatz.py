"""Operators with unknown coefficients and the exact linear solves over them.

An ``AffineWeyl`` is  C + sum_j x_j W_j  where C, W_j are ``WeylElement`` values
and the x_j are *real* unknowns.  A complex unknown coefficient c = x + i*y of a
monomial w contributes the two directions w and i*w, which keeps the formal
adjoint (antilinear) a linear operation on the unknowns.

Equations ``AffineWeyl == 0`` are split per monomial into real and imaginary
parts and solved exactly, either over Q(hbar) with hbar formal or over Q after
substituting a rational hbar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from .linalg import AffineSystem, SolveResult
from .poly import Monomial, monomial_basis
from .scalars import GaussianRational, HScalar, RationalFunction, _pdivmod, _pgcd, _pmul, as_fraction
from .weyl import WeylElement, commutator, formal_adjoint, weyl_mul

__all__ = ["AffineWeyl", "AnsatzContext", "Round", "NonlinearConstraint"]

_I = HScalar.const(GaussianRational(0, 1))


class NonlinearConstraint(ArithmeticError):
    """A constraint still contains products of unknowns."""


class AffineWeyl:
    __slots__ = ("n", "const", "lin")

    def __init__(self, n: int, const: WeylElement | None = None, lin: dict | None = None):
        self.n = n
        self.const = const if const is not None else WeylElement.zero(n)
        self.lin = {j: w for j, w in (lin or {}).items() if not w.is_zero()}

    @classmethod
    def known(cls, w: WeylElement) -> "AffineWeyl":
        return cls(w.n, w, {})

    @property
    def params(self) -> set:
        return set(self.lin)

    def is_known(self) -> bool:
        return not self.lin

    def _combine(self, other: "AffineWeyl", sign: int) -> "AffineWeyl":
        lin = dict(self.lin)
        for j, w in other.lin.items():
            lin[j] = lin[j] + w if sign > 0 and j in lin else (lin[j] - w if j in lin else (w if sign > 0 else -w))
        return AffineWeyl(self.n, self.const + other.const if sign > 0 else self.const - other.const, lin)

    def __add__(self, other):
        if isinstance(other, WeylElement):
            other = AffineWeyl.known(other)
        return self._combine(other, 1)

    def __sub__(self, other):
        if isinstance(other, WeylElement):
            other = AffineWeyl.known(other)
        return self._combine(other, -1)

    def __neg__(self):
        return AffineWeyl(self.n, -self.const, {j: -w for j, w in self.lin.items()})

    def scale(self, s) -> "AffineWeyl":
        return AffineWeyl(self.n, self.const.scale(s), {j: w.scale(s) for j, w in self.lin.items()})

    def mul_right(self, w: WeylElement) -> "AffineWeyl":
        return AffineWeyl(self.n, weyl_mul(self.const, w), {j: weyl_mul(v, w) for j, v in self.lin.items()})

    def mul_left(self, w: WeylElement) -> "AffineWeyl":
        return AffineWeyl(self.n, weyl_mul(w, self.const), {j: weyl_mul(w, v) for j, v in self.lin.items()})

    def commutator_with(self, w: WeylElement, side: str = "right") -> "AffineWeyl":
        """[self, w] for side='right', [w, self] for side='left'."""
        out = AffineWeyl(self.n, commutator(self.const, w), {j: commutator(v, w) for j, v in self.lin.items()})
        return out if side == "right" else -out

    def commutator(self, other: "AffineWeyl"):
        """Return ([self, other] without bilinear terms, bilinear terms).

        Bilinear terms are a dict (j, k) -> [W_j, V_k]; they must vanish for the
        constraint to be linear.
        """
        lin = {}
        for j, w in self.lin.items():
            lin[j] = commutator(w, other.const)
        for k, v in other.lin.items():
            c = commutator(self.const, v)
            lin[k] = lin[k] + c if k in lin else c
        quad = {}
        for j, w in self.lin.items():
            for k, v in other.lin.items():
                c = commutator(w, v)
                if not c.is_zero():
                    quad[(j, k)] = c
        return AffineWeyl(self.n, commutator(self.const, other.const), lin), quad

    def adjoint(self) -> "AffineWeyl":
        return AffineWeyl(self.n, formal_adjoint(self.const), {j: formal_adjoint(v) for j, v in self.lin.items()})

    def divide_hbar(self) -> "AffineWeyl":
        return AffineWeyl(self.n, self.const.divide_hbar(), {j: v.divide_hbar() for j, v in self.lin.items()})

    def substitute(self, sub: dict) -> "AffineWeyl":
        """Replace x_j by  v_j + sum_s u_s t_s  for each j in ``sub``.

        ``sub[j] = (HScalar v_j, {new param s: HScalar u_s})``.
        """
        const = self.const
        lin: dict = {}
        for j, w in self.lin.items():
            if j not in sub:
                lin[j] = lin[j] + w if j in lin else w
                continue
            v, us = sub[j]
            if v:
                const = const + w.scale(v)
            for s, u in us.items():
                t = w.scale(u)
                lin[s] = lin[s] + t if s in lin else t
        return AffineWeyl(self.n, const, lin)

    def value(self) -> WeylElement:
        if self.lin:
            raise ValueError("ansatz still has free parameters")
        return self.const

    def __repr__(self):
        extra = " + ".join(f"x{j}*({w})" for j, w in sorted(self.lin.items()))
        return f"AffineWeyl({self.const}{' + ' + extra if extra else ''})"


@dataclass
class Round:
    """One exact linear solve: the equations, their labels and the outcome."""

    system: AffineSystem
    result: SolveResult
    params: list
    substitution: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.result.feasible


class AnsatzContext:
    """Allocates real unknowns, collects constraints and solves them exactly.

    ``hbar`` is ``"formal"`` (solve over Q(hbar)) or a rational value.
    """

    def __init__(self, hbar="formal"):
        if hbar == "formal" or hbar is None:
            self.formal = True
            self.hbar_value = None
            self.zero, self.one = RationalFunction(), RationalFunction.const(1)
        else:
            self.formal = False
            self.hbar_value = as_fraction(hbar)
            if self.hbar_value == 0:
                raise ValueError("hbar must be nonzero")
            self.zero, self.one = Fraction(0), Fraction(1)
        self._ids = count()
        self.param_labels: dict = {}
        self._pending = AffineSystem(self.zero, self.one)
        self._pending_params: set = set()
        self.rounds: list = []

    # -- unknowns -------------------------------------------------------------
    def new_param(self, label=None) -> int:
        j = next(self._ids)
        self.param_labels[j] = label
        return j

    def generic(self, n: int, degree: int, label=None) -> AffineWeyl:
        """Operator of degree <= ``degree`` with one complex unknown per monomial."""
        lin = {}
        for m in monomial_basis(n, 0, degree):
            w = WeylElement.monomial(m)
            lin[self.new_param((label, m, "re"))] = w
            lin[self.new_param((label, m, "im"))] = w.scale(_I)
        return AffineWeyl(n, WeylElement.zero(n), lin)

    def scalar_unknown(self, n: int, label=None, real: bool = True) -> AffineWeyl:
        lin = {self.new_param((label, "re")): WeylElement.identity(n)}
        if not real:
            lin[self.new_param((label, "im"))] = WeylElement.scalar(_I, n)
        return AffineWeyl(n, WeylElement.zero(n), lin)

    # -- field conversion -------------------------------------------------------
    def to_field(self, powers: dict):
        if self.formal:
            return RationalFunction.from_powers(powers)
        h = self.hbar_value
        return sum((v * h**k for k, v in powers.items()), Fraction(0))

    def to_hscalar(self, value) -> HScalar:
        if self.formal:
            return HScalar(value.polynomial_powers())
        return HScalar.const(value)

    def scale_to_polynomial(self, vec: dict) -> dict:
        """Multiply a direction vector by a common denominator (formal mode)."""
        if not self.formal:
            return vec
        den = (Fraction(1),)
        for v in vec.values():
            g = _pgcd(den, v.den)
            den, _ = _pdivmod(_pmul(den, v.den), g)
        d = RationalFunction(den)
        return {j: v * d for j, v in vec.items()}

    # -- constraints -------------------------------------------------------------
    def _rows(self, expr: AffineWeyl, label):
        monos = set(expr.const.terms)
        for w in expr.lin.values():
            monos.update(w.terms)
        for m in sorted(monos, key=_mkey):
            c = expr.const.coeff(m)
            coeffs = {j: w.coeff(m) for j, w in expr.lin.items()}
            coeffs = {j: s for j, s in coeffs.items() if s}
            for part, getter in (("re", HScalar.real_part), ("im", HScalar.imag_part)):
                row = {}
                for j, s in coeffs.items():
                    val = getter(s)
                    if val:
                        row[j] = self.to_field(val)
                cv = getter(c)
                const = self.to_field(cv) if cv else self.zero
                if row or const:
                    yield m, part, row, const, (label, m, part)

    def impose(self, expr: AffineWeyl, label=None) -> int:
        """Queue ``expr == 0``; returns the number of scalar equations added."""
        added = 0
        for _, _, row, const, lab in self._rows(expr, label):
            self._pending.add(row, const, label=lab)
            added += 1
        self._pending_params.update(expr.lin)
        return added

    def impose_by_component(self, exprs) -> int:
        """Queue several ``(expr, label)`` equations, ordered by operator component.

        Rows are sorted by monomial (identity first), then real before
        imaginary part, then input order.  Elimination therefore meets the
        scalar components of all equations before any higher component.
        """
        rows = []
        for idx, (expr, label) in enumerate(exprs):
            for m, part, row, const, lab in self._rows(expr, label):
                rows.append(((_mkey(m), part != "re", idx), row, const, lab))
            self._pending_params.update(expr.lin)
        rows.sort(key=lambda t: t[0])
        for _, row, const, lab in rows:
            self._pending.add(row, const, label=lab)
        return len(rows)

    def impose_self_adjoint(self, x: AffineWeyl, label=None) -> int:
        return self.impose(x.adjoint() - x, label=label)

    def solve(self, params=None) -> SolveResult:
        rnd = self.solve_round(params)
        return rnd.result

    def solve_round(self, params=None) -> Round:
        """Solve the queued equations and build the substitution of the solution."""
        system = self._pending
        cols = set(self._pending_params) | set(params or ())
        self._pending = AffineSystem(self.zero, self.one)
        self._pending_params = set()
        result = system.solve(columns=cols)
        rnd = Round(system, result, sorted(cols))
        if result.feasible:
            rnd.substitution = self._substitution(result)
        self.rounds.append(rnd)
        return rnd

    def _substitution(self, result: SolveResult) -> dict:
        sol = result.solution
        sub: dict = {}
        for k in sol.pivot_columns:
            v = sol.particular.get(k, self.zero)
            sub[k] = (self.to_hscalar(v) if v else HScalar(), {})
        for f, vec in sol.nullspace:
            vec = self.scale_to_polynomial(vec)
            t = self.new_param(("free", self.param_labels.get(f)))
            for j, u in vec.items():
                sub.setdefault(j, (HScalar(), {}))[1][t] = self.to_hscalar(u)
        return sub

    def direction(self, x: AffineWeyl, vec: dict) -> WeylElement:
        """The operator  sum_j vec_j W_j  for a (scaled) solution direction."""
        vec = self.scale_to_polynomial(vec)
        out = WeylElement.zero(x.n)
        for j, v in vec.items():
            if j in x.lin:
                out = out + x.lin[j].scale(self.to_hscalar(v))
        return out


def _mkey(m: Monomial):
    from .poly import monomial_key

    return monomial_key(m)


def evaluate_row(system: AffineSystem, multipliers: dict, zero):
    """Recombine rows with the given multipliers: returns (coefficients, constant)."""
    coeffs: dict = {}
    const = zero
    for r, y in multipliers.items():
        row, c = system.rows[r]
        for j, a in row.items():
            coeffs[j] = coeffs.get(j, zero) + y * a
        const = const + y * c
    return {j: v for j, v in coeffs.items() if v}, const
