"""Exact checks of the Dirac rule and certificates that it cannot be extended.

The Dirac rule for a linear map Q is

    Q({f, g}) = (i/hbar) [Q(f), Q(g)],     Q(1) = I.

Residuals are reported as  (i/hbar)[Q(f), Q(g)] - Q({f, g}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ansatz import AffineWeyl, AnsatzContext, NonlinearConstraint, evaluate_row
from .lie import SubalgebraSpec
from .poly import Monomial, Polynomial, monomial_basis, poisson_bracket
from .quantize import DomainError, QuantizationMap, apply_map, metaplectic, sigma_eta, vn_extend
from .scalars import GaussianRational, HScalar
from .weyl import WeylElement, commutator, is_central

__all__ = [
    "dirac_defect",
    "check_dirac",
    "DiracReport",
    "Violation",
    "groenewold_certificate",
    "ObstructionCertificate",
    "scalar_ambiguity_solve",
    "ScalarAmbiguityResult",
    "sigma_recursion_check",
    "RecursionReport",
    "closed_form",
    "extension_infeasibility",
    "LinearSystemReport",
]

I_UNIT = HScalar.const(GaussianRational(0, 1))


def i_over_hbar_commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    """(i/hbar)[a, b]; exact because every commutator is divisible by hbar."""
    return commutator(a, b).divide_hbar().scale(I_UNIT)


def dirac_defect(q: QuantizationMap, f: Polynomial, g: Polynomial) -> WeylElement:
    return i_over_hbar_commutator(apply_map(q, f), apply_map(q, g)) - apply_map(q, poisson_bracket(f, g))


# -- Dirac check ------------------------------------------------------------------


@dataclass
class Violation:
    f: Polynomial
    g: Polynomial
    bracket: Polynomial
    quantized_bracket: WeylElement
    commutator_term: WeylElement
    residual: WeylElement

    def to_dict(self) -> dict:
        return {
            "f": str(self.f),
            "g": str(self.g),
            "bracket": str(self.bracket),
            "Q(bracket)": str(self.quantized_bracket),
            "(i/hbar)[Q(f),Q(g)]": str(self.commutator_term),
            "residual": str(self.residual),
        }


@dataclass
class DiracReport:
    map_name: str
    algebra: str
    degree: int
    parameters: dict
    unit_ok: bool | None
    pairs: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unit_ok is not False and not self.violations

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "map": self.map_name,
            "algebra": self.algebra,
            "degree": self.degree,
            "parameters": self.parameters,
            "unit_ok": self.unit_ok,
            "checked_pairs": len(self.pairs),
            "skipped_pairs": [{"f": str(f), "g": str(g), "bracket": str(b)} for f, g, b in self.skipped],
            "violations": [v.to_dict() for v in self.violations],
        }


def check_dirac(q: QuantizationMap, spec: SubalgebraSpec, max_degree: int) -> DiracReport:
    """Check Q(1) = I and the Dirac rule on every unordered basis pair of S up to degree D.

    A pair whose bracket falls outside the map's domain is recorded as skipped.
    """
    if spec.n != q.n:
        raise ValueError(f"dimension mismatch: n={spec.n} vs map n={q.n}")
    basis = spec.basis(max_degree)
    outside = [m for f in basis for m in f.monomials() if not q.domain.contains_monomial(m)]
    if outside:
        raise DomainError(q.name, outside)
    one = Polynomial.const(1, q.n)
    unit_ok = None
    if q.domain.contains(one) and spec.contains(one):
        unit_ok = apply_map(q, one) == WeylElement.identity(q.n)
    report = DiracReport(q.name, spec.label, max_degree, {k: str(v) for k, v in q.parameters.items()}, unit_ok)
    images = [apply_map(q, f) for f in basis]
    for i, f in enumerate(basis):
        for j in range(i + 1, len(basis)):
            g = basis[j]
            b = poisson_bracket(f, g)
            if not q.domain.contains(b):
                report.skipped.append((f, g, b))
                continue
            report.pairs.append((f, g))
            lhs = apply_map(q, b)
            rhs = i_over_hbar_commutator(images[i], images[j])
            residual = rhs - lhs
            if not residual.is_zero():
                report.violations.append(Violation(f, g, b, lhs, rhs, residual))
    return report


# -- the cubic clash ------------------------------------------------------------------


@dataclass
class ObstructionCertificate:
    """Two classical routes to the same polynomial whose quantizations differ."""

    target: Polynomial
    route_a: str
    route_b: str
    classical_a: Polynomial
    classical_b: Polynomial
    common_value: Polynomial
    quantized_a: WeylElement
    quantized_b: WeylElement
    residual: WeylElement
    images: dict

    @property
    def classical_agree(self) -> bool:
        return self.classical_a == self.classical_b

    @property
    def residual_is_scalar(self) -> bool:
        return self.residual.is_scalar() and not self.residual.is_zero()

    @property
    def contradiction(self) -> bool:
        return self.classical_agree and self.residual_is_scalar

    def to_dict(self) -> dict:
        return {
            "verdict": "contradiction" if self.contradiction else "consistent",
            "target": str(self.target),
            "route_a": self.route_a,
            "route_b": self.route_b,
            "classical_value": str(self.common_value),
            "classical_agree": self.classical_agree,
            "images": {k: str(v) for k, v in self.images.items()},
            "route_a_value": str(self.quantized_a),
            "route_b_value": str(self.quantized_b),
            "residual": str(self.residual),
        }


def groenewold_certificate() -> ObstructionCertificate:
    """Quantize q^2 p^2 along two bracket routes using the forced cubic images."""
    n = 1
    q = Polynomial.q(1, n)
    p = Polynomial.p(1, n)
    q3, p3, q2p, qp2 = q**3, p**3, q * q * p, q * p * p
    a_expr = poisson_bracket(q3, p3) * Fraction(1, 9)
    b_expr = poisson_bracket(q2p, qp2) * Fraction(1, 3)
    images = {
        "q^3": vn_extend("r_of_q", q**3),
        "p^3": vn_extend("r_of_p", p**3),
        "q^2*p": vn_extend("r_of_q_times_p", q**2),
        "q*p^2": vn_extend("q_times_r_of_p", p**2),
    }
    # the classical common value is -q^2 p^2, so Q(q^2 p^2) is minus each route
    minus_ninth = HScalar.const(Fraction(-1, 9))
    minus_third = HScalar.const(Fraction(-1, 3))
    qa = i_over_hbar_commutator(images["q^3"], images["p^3"]).scale(minus_ninth)
    qb = i_over_hbar_commutator(images["q^2*p"], images["q*p^2"]).scale(minus_third)
    return ObstructionCertificate(
        target=q * q * p * p,
        route_a="1/9*{q^3, p^3}",
        route_b="1/3*{q^2*p, q*p^2}",
        classical_a=a_expr,
        classical_b=b_expr,
        common_value=a_expr,
        quantized_a=qa,
        quantized_b=qb,
        residual=qa - qb,
        images=images,
    )


# -- scalar ambiguities ------------------------------------------------------------------

_FAMILIES = ("hsp_P2", "coordinate_C")


@dataclass
class ScalarAmbiguityResult:
    family: str
    constraints: list  # (f, g) pairs imposed
    values: dict  # name -> HScalar for pinned scalars
    free: list  # names left free
    feasible: bool
    _images: dict = field(repr=False, default_factory=dict)
    _ctx: AnsatzContext | None = field(repr=False, default=None)
    _columns: dict = field(repr=False, default_factory=dict)
    _solution: object = field(repr=False, default=None)

    def images_at(self, **free_values) -> dict:
        """Solved images with each free scalar set to a real HScalar value."""
        ctx = self._ctx
        sol = self._solution
        chosen: dict = {}
        for name in self.free:
            if name not in free_values:
                raise ValueError(f"value for free scalar {name} required")
            val = HScalar.coerce(free_values[name])
            if not val.is_real():
                raise ValueError(f"{name} must be real")
            chosen[self._columns[name]] = ctx.to_field(val.real_part())
        assign: dict = {}
        for k in sol.pivot_columns:
            v = sol.particular.get(k, ctx.zero)
            for f, vec in sol.nullspace:
                if k in vec and f in chosen:
                    v = v + vec[k] * chosen[f]
            assign[k] = v
        assign.update(chosen)
        out = {}
        for m, x in self._images.items():
            w = x.const
            for j, d in x.lin.items():
                v = assign.get(j)
                if v:
                    w = w + d.scale(ctx.to_hscalar(v))
            out[m] = w
        return out

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "feasible": self.feasible,
            "constraints": [f"{{{f}, {g}}} = {poisson_bracket(f, g)}" for f, g in self.constraints],
            "values": {k: str(v) for k, v in self.values.items()},
            "free": self.free,
        }


def scalar_ambiguity_solve(family: str = "hsp_P2", constraints=None) -> ScalarAmbiguityResult:
    """Solve for the scalar shifts E, F, G in the quadratic images.

    Ansatz (n = 1):  Q(q^2) = q^2 + E I,  Q(p^2) = p^2 + F I (hsp_P2 only),
    Q(qp) = q p - (i hbar/2) I + G I,  with Q fixed on 1, q, p.  Each scalar is
    complex; self-adjointness makes it real.  ``constraints`` overrides the
    bracket identities imposed (pairs of polynomials).
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(_FAMILIES)}")
    n = 1
    q, p = Polynomial.q(1, n), Polynomial.p(1, n)
    ctx = AnsatzContext("formal")
    names = ["E", "F", "G"] if family == "hsp_P2" else ["E", "G"]
    unknown = {name: ctx.scalar_unknown(n, label=name, real=False) for name in names}
    base = metaplectic(n)
    images = {m.monomials()[0]: AffineWeyl.known(base.rule(m.monomials()[0])) for m in SubalgebraSpec.named("hsp", n).basis(2)}
    targets = {"E": q * q, "F": p * p, "G": q * p}
    for name in names:
        m = targets[name].monomials()[0]
        images[m] = images[m] + unknown[name]
    if family == "coordinate_C":
        images.pop((p * p).monomials()[0])
    if constraints is None:
        constraints = [(p * p, q * q), (q * p, q * q), (q * p, p * p)]
        if family == "coordinate_C":
            constraints = [(q * p, q * q)]

    def q_lin(f: Polynomial) -> AffineWeyl:
        out = AffineWeyl(n)
        for m, c in f.terms.items():
            if m not in images:
                raise DomainError(family, [m])
            out = out + images[m].scale(HScalar.const(c))
        return out

    for f, g in constraints:
        comm, quad = q_lin(f).commutator(q_lin(g))
        if quad:
            raise NonlinearConstraint("scalar shifts must stay central")
        ctx.impose(comm.divide_hbar().scale(I_UNIT) - q_lin(poisson_bracket(f, g)), label=(str(f), str(g)))
    for name in names:
        ctx.impose_self_adjoint(unknown[name], label=("adjoint", name))
    params = set()
    for x in unknown.values():
        params |= x.params
    rnd = ctx.solve_round(params)
    result = ScalarAmbiguityResult(family, list(constraints), {}, [], rnd.feasible, images, ctx)
    if not rnd.feasible:
        return result
    sol = rnd.result.solution
    result._solution = sol
    for name in names:
        x = unknown[name]
        re_col = min(x.params)
        im_col = max(x.params)
        if re_col in sol.free_columns or im_col in sol.free_columns:
            result.free.append(name)
            result._columns[name] = re_col
            continue
        re = ctx.to_hscalar(sol.particular.get(re_col, ctx.zero)) if sol.particular.get(re_col) else HScalar()
        im = ctx.to_hscalar(sol.particular.get(im_col, ctx.zero)) if sol.particular.get(im_col) else HScalar()
        result.values[name] = re + im * I_UNIT
    return result


# -- the coordinate-algebra recursion ------------------------------------------------------


def _check_g(g) -> HScalar:
    g = HScalar.coerce(g)
    if not g.is_real() or any(k != 1 for k in g.terms):
        raise ValueError("G must be a rational multiple of hbar")
    return g


def closed_form(k: int, g) -> WeylElement:
    """q^k p  ->  q-hat^k p-hat + k (G - i hbar/2) q-hat^(k-1), valid for k >= 1."""
    if k < 1:
        raise ValueError("closed form needs k >= 1")
    g = _check_g(g) if g else HScalar()
    n = 1
    qh, ph = WeylElement.q(1, n), WeylElement.p(1, n)
    shift = g + HScalar({1: GaussianRational(0, Fraction(-1, 2))})
    return qh**k * ph + (qh ** (k - 1)).scale(shift * k)


@dataclass
class RecursionReport:
    k: int
    g: HScalar
    eta: Fraction
    values: dict  # j -> recursion value of Q(q^j p)
    closed_forms: dict
    checks: dict  # name -> bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def value(self) -> WeylElement:
        return self.values[self.k]

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.passed else "fail",
            "k": self.k,
            "G": str(self.g),
            "eta": str(self.eta),
            "value": str(self.value),
            "checks": self.checks,
        }


def sigma_recursion_check(k: int, g) -> RecursionReport:
    """Run the recursion for Q(q^j p), j = 2..k, and compare with the closed form and sigma_eta."""
    if k < 2:
        raise ValueError("the recursion starts at k = 2; use closed_form for k = 1")
    g = _check_g(g) if g else HScalar()
    eta = g.coeff(1).re
    n = 1
    qh, ph = WeylElement.q(1, n), WeylElement.p(1, n)
    sigma = sigma_eta(n, eta)
    values = {1: closed_form(1, g)}
    closed = {1: values[1]}
    checks = {}
    minus_i_hbar = HScalar({1: GaussianRational(0, -1)})
    for j in range(2, k + 1):
        v = (qh**j * ph - (qh * values[j - 1]).scale(j)).scale(Fraction(1, 1 - j))
        values[j] = v
        closed[j] = closed_form(j, g)
        mono = Monomial((j,), (1,))
        checks[f"closed_form[{j}]"] = v == closed[j]
        checks[f"sigma[{j}]"] = v == sigma.image(mono)
        checks[f"[Q(q^{j}p), q]"] = commutator(v, qh) == (qh**j).scale(minus_i_hbar)
        checks[f"[Q(q^{j}p), p]"] = commutator(v, ph) == values[j - 1].scale(minus_i_hbar * (-j))
    return RecursionReport(k, g, eta, values, closed, checks)


# -- linear infeasibility ----------------------------------------------------------------------


@dataclass
class WitnessTerm:
    pair: tuple
    monomial: Monomial
    part: str
    multiplier: object

    def to_dict(self) -> dict:
        return {
            "pair": [str(x) for x in self.pair],
            "component": self.monomial.format() or "I",
            "part": self.part,
            "multiplier": str(self.multiplier),
        }


@dataclass
class LinearSystemReport:
    ansatz_degree: int
    hbar_mode: str
    restrict_p2: bool
    unknown_monomials: list
    unknown_count: int
    pair_count: int
    rounds: list = field(default_factory=list)
    verdict: str = "feasible"
    witness: list = field(default_factory=list)
    witness_constant: object = None
    witness_verified: bool | None = None
    clash: HScalar | None = None
    solution: dict = field(default_factory=dict)
    unique: bool | None = None
    free_directions_central: bool | None = None

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"

    @property
    def constraint_count(self) -> int:
        return sum(r["equations"] for r in self.rounds)

    def matches_metaplectic(self) -> bool:
        if not self.solution:
            return False
        mp = metaplectic(1)
        return all(w == mp.rule(m) for m, w in self.solution.items() if m.degree <= 2)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "parameters": {"d": self.ansatz_degree, "hbar": self.hbar_mode, "restrict_p2": self.restrict_p2},
            "unknown_monomials": [m.format() for m in self.unknown_monomials],
            "unknown_count": self.unknown_count,
            "pair_count": self.pair_count,
            "constraint_count": self.constraint_count,
            "rounds": self.rounds,
            "witness": [t.to_dict() for t in self.witness],
            "witness_constant": None if self.witness_constant is None else str(self.witness_constant),
            "witness_verified": self.witness_verified,
            "clash": None if self.clash is None else str(self.clash),
            "solution": {m.format(): str(w) for m, w in self.solution.items()},
            "unique": self.unique,
            "free_directions_central": self.free_directions_central,
        }


def _normalize_witness(system, multipliers: dict, one):
    """Scale so the first row's coefficient on an unknown shared with another row is 1."""
    rows = sorted(r for r, y in multipliers.items() if y)
    if not rows:
        return multipliers
    first = rows[0]
    cols = system.rows[first][0]
    shared = [j for j in sorted(cols) if any(j in system.rows[r][0] for r in rows[1:])]
    j0 = shared[0] if shared else (min(cols) if cols else None)
    scale = one / multipliers[first] if j0 is None else one / (multipliers[first] * cols[j0])
    return {r: multipliers[r] * scale for r in rows}


def extension_infeasibility(ansatz_degree: int = 6, hbar="formal", restrict_p2: bool = False) -> LinearSystemReport:
    """Try to extend the Schrodinger map to P^4 (n = 1) with generic operator images.

    Each monomial of degree 2, 3, 4 (only 2 with ``restrict_p2``) receives an
    operator of degree <= d with unknown complex coefficients, constrained to be
    formally self-adjoint.  The Dirac rule is imposed on every unordered pair of
    distinct basis monomials of degree <= 3 (<= 2).  The system is bilinear in
    general, so it is solved level by level: at level L only pairs whose
    unknowns have degree <= L are imposed, and only once the bilinear part has
    dropped out after substituting the previous solutions.
    """
    top = 2 if restrict_p2 else 4
    if ansatz_degree < (2 if restrict_p2 else 3):
        raise ValueError("ansatz degree must be at least 3 (at least 2 with restrict_p2)")
    n = 1
    ctx = AnsatzContext(hbar)
    mode = "formal" if ctx.formal else str(ctx.hbar_value)
    images: dict = {}
    for m in monomial_basis(n, 0, 1):
        images[m] = AffineWeyl.known(WeylElement.monomial(m))
    unknown_monos = monomial_basis(n, 2, top)
    for m in unknown_monos:
        images[m] = ctx.generic(n, ansatz_degree, label=m)
    pair_basis = [Polynomial.monomial(m) for m in monomial_basis(n, 0, 2 if restrict_p2 else 3)]
    pairs = [(f, g) for i, f in enumerate(pair_basis) for g in pair_basis[i + 1 :]]
    report = LinearSystemReport(
        ansatz_degree, mode, restrict_p2, unknown_monos, sum(len(images[m].lin) for m in unknown_monos), len(pairs)
    )

    def level(f, g) -> int:
        monos = set(f.terms) | set(g.terms) | set(poisson_bracket(f, g).terms)
        return max(m.degree for m in monos)

    def q_lin(f: Polynomial) -> AffineWeyl:
        out = AffineWeyl(n)
        for m, c in f.terms.items():
            out = out + images[m].scale(HScalar.const(c))
        return out

    pending = list(pairs)
    for lvl in range(2, top + 1):
        new_unknowns = [m for m in unknown_monos if m.degree == lvl]
        while True:
            batch = []
            exprs = []
            for f, g in pending:
                if level(f, g) > lvl:
                    continue
                comm, quad = q_lin(f).commutator(q_lin(g))
                if quad:
                    continue
                batch.append((f, g))
                exprs.append(comm.divide_hbar().scale(I_UNIT) - q_lin(poisson_bracket(f, g)))
            if not batch and not new_unknowns:
                break
            ctx.impose_by_component(list(zip(exprs, batch)))
            for m in new_unknowns:
                ctx.impose_self_adjoint(images[m], label=("adjoint", m))
            params = set()
            for m in new_unknowns:
                params |= images[m].params
            new_unknowns = []
            pending = [pr for pr in pending if pr not in batch]
            rnd = ctx.solve_round(params)
            res = rnd.result
            report.rounds.append(
                {
                    "level": lvl,
                    "pairs": len(batch),
                    "equations": res.equations,
                    "unknowns": res.unknowns,
                    "rank": res.rank,
                    "feasible": res.feasible,
                }
            )
            if not res.feasible:
                _record_witness(report, ctx, rnd)
                return report
            for m in unknown_monos:
                images[m] = images[m].substitute(rnd.substitution)
        stuck = [pr for pr in pending if level(*pr) <= lvl]
        if stuck:
            raise NonlinearConstraint(f"{len(stuck)} constraints stay bilinear at level {lvl}")
    report.verdict = "feasible"
    report.solution = {m: images[m].const for m in unknown_monos}
    report.unique = all(images[m].is_known() for m in unknown_monos)
    report.free_directions_central = all(is_central(w) for m in unknown_monos for w in images[m].lin.values())
    return report


def _record_witness(report: LinearSystemReport, ctx: AnsatzContext, rnd) -> None:
    system = rnd.system
    mult = _normalize_witness(system, rnd.result.witness.multipliers, ctx.one)
    coeffs, const = evaluate_row(system, mult, ctx.zero)
    report.verdict = "infeasible"
    report.witness_constant = const
    report.witness_verified = not coeffs and bool(const)
    for r, y in mult.items():
        label, mono, part = system.labels[r]
        report.witness.append(WitnessTerm(label, mono, part, y))
    if ctx.formal:
        report.clash = HScalar(const.polynomial_powers()) if const.is_polynomial() else None
    else:
        report.clash = HScalar.const(const)
