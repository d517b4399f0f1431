"""Command-line front end.

Exit status: 0 success or passing verdict, 1 the mathematics says no
(violations, contradictions, infeasibility, non-membership, domain refusal),
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .lie import (
    SubalgebraSpec,
    bracket_generate,
    classify_quadratic_span,
    closure_check,
)
from .obstruction import (
    check_dirac,
    extension_infeasibility,
    groenewold_certificate,
)
from .parse import ParseError, parse_classical, parse_operator
from .poly import poisson_bracket
from .quantize import MAP_NAMES, DomainError, apply_map, make_map
from .weyl import commutator, formal_adjoint, is_self_adjoint

SCHEMA_VERSION = "1"

OK, MATH_FAILURE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational a/b, got {text!r}") from None


def _hbar(text: str):
    if text == "formal":
        return text
    value = _fraction(text)
    if value == 0:
        raise argparse.ArgumentTypeError("hbar must be nonzero")
    return value


def _common(parser: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--n", type=int, default=default if suppress else 1, help="number of degrees of freedom")
    parser.add_argument(
        "--format",
        choices=("text", "structured"),
        default=default if suppress else "text",
        help="plain text or a JSON document",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gvh", description="Exact Poisson/Weyl algebra and quantization obstructions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _common(p, suppress=True)
        return p

    p = cmd("bracket", "Poisson bracket {f, g}")
    p.add_argument("f")
    p.add_argument("g")

    p = cmd("quantize", "apply a quantization map to a polynomial")
    p.add_argument("--map", choices=MAP_NAMES, required=True)
    p.add_argument("--eta", type=_fraction)
    p.add_argument("f")

    p = cmd("commutator", "[A, B] of two operator expressions")
    p.add_argument("a")
    p.add_argument("b")

    p = cmd("adjoint", "formal adjoint of an operator expression")
    p.add_argument("a")

    p = cmd("check-dirac", "check the Dirac rule on a subalgebra")
    p.add_argument("--map", choices=MAP_NAMES, required=True)
    p.add_argument("--eta", type=_fraction)
    p.add_argument("--algebra", required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = cmd("obstruction", "obstruction certificates")
    osub = p.add_subparsers(dest="action", required=True)
    g = osub.add_parser("groenewold", help="the cubic bracket clash")
    _common(g, suppress=True)
    e = osub.add_parser("extend", help="linear infeasibility of extending beyond quadratics")
    _common(e, suppress=True)
    e.add_argument("--ansatz-degree", type=int, default=6)
    e.add_argument("--hbar", type=_hbar, default="formal")
    e.add_argument("--restrict-p2", action="store_true")

    p = cmd("algebra", "subalgebra tools")
    asub = p.add_subparsers(dest="action", required=True)
    c = asub.add_parser("closure", help="bracket closure of a family or span")
    _common(c, suppress=True)
    c.add_argument("--algebra")
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("exprs", nargs="*", help="spanning polynomials when --algebra is absent")
    m = asub.add_parser("member", help="membership of a polynomial")
    _common(m, suppress=True)
    m.add_argument("--algebra")
    m.add_argument("f")
    m.add_argument("exprs", nargs="*", help="spanning polynomials when --algebra is absent")
    gen = asub.add_parser("generate", help="bracket-generate up to a degree bound")
    _common(gen, suppress=True)
    gen.add_argument("--algebra")
    gen.add_argument("--degree", type=int, required=True)
    gen.add_argument("--seed-degree", type=int, help="truncation of the named family (default: --degree)")
    gen.add_argument("--adjoin", action="append", default=[])
    gen.add_argument("exprs", nargs="*")
    cl = asub.add_parser("classify", help="classify a span of quadratics (n = 1)")
    _common(cl, suppress=True)
    cl.add_argument("exprs", nargs="+")
    return parser


# -- helpers ------------------------------------------------------------------------


def _poly(text: str, n: int):
    return parse_classical(text, n)


def _op(text: str, n: int):
    return parse_operator(text, n)


def _spec(args, n: int, need: bool = True) -> SubalgebraSpec | None:
    exprs = getattr(args, "exprs", [])
    if args.algebra:
        if exprs:
            raise UsageError("give either --algebra or spanning polynomials, not both")
        try:
            return SubalgebraSpec.named(args.algebra, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if not exprs:
        if need:
            raise UsageError("need --algebra or spanning polynomials")
        return None
    bound = getattr(args, "degree", None)
    return SubalgebraSpec.spanned([_poly(t, n) for t in exprs], bound)


def _map(args, n: int):
    if args.map == "sigma" and args.eta is None:
        raise UsageError("--map sigma requires --eta a/b")
    if args.map != "sigma" and args.eta is not None:
        raise UsageError("--eta only applies to --map sigma")
    return make_map(args.map, n, args.eta)


# -- commands -------------------------------------------------------------------------


def _bracket(args, n):
    f, g = _poly(args.f, n), _poly(args.g, n)
    b = poisson_bracket(f, g)
    return OK, {"f": str(f), "g": str(g), "bracket": str(b)}, [str(b)]


def _quantize(args, n):
    q = _map(args, n)
    f = _poly(args.f, n)
    w = apply_map(q, f)
    return OK, {"map": q.to_dict(), "f": str(f), "image": str(w)}, [str(w)]


def _commutator(args, n):
    a, b = _op(args.a, n), _op(args.b, n)
    c = commutator(a, b)
    return OK, {"a": str(a), "b": str(b), "commutator": str(c)}, [str(c)]


def _adjoint(args, n):
    a = _op(args.a, n)
    adj = formal_adjoint(a)
    return OK, {"a": str(a), "adjoint": str(adj), "self_adjoint": is_self_adjoint(a)}, [str(adj)]


def _check_dirac(args, n):
    q = _map(args, n)
    spec = _spec(argparse.Namespace(algebra=args.algebra, exprs=[]), n)
    rep = check_dirac(q, spec, args.max_degree)
    d = rep.to_dict()
    lines = [
        f"{d['verdict']}: map {rep.map_name} on {rep.algebra} up to degree {rep.degree}",
        f"checked pairs: {len(rep.pairs)}, skipped: {len(rep.skipped)}, violations: {len(rep.violations)}",
    ]
    if rep.unit_ok is not None:
        lines.append(f"Q(1) = I: {'yes' if rep.unit_ok else 'no'}")
    for v in rep.violations:
        lines.append(f"  {{{v.f}, {v.g}}} = {v.bracket}: residual {v.residual}")
    return (OK if rep.passed else MATH_FAILURE), d, lines


def _cubic_clash(args, n):
    cert = groenewold_certificate()
    d = cert.to_dict()
    lines = [
        f"classical: {cert.route_a} = {cert.route_b} = {cert.common_value}",
        *(f"Q({k}) = {v}" for k, v in d["images"].items()),
        f"route A, Q({cert.target}) = {cert.quantized_a}",
        f"route B, Q({cert.target}) = {cert.quantized_b}",
        f"residual (A - B) = {cert.residual}",
        f"verdict: {d['verdict']}",
    ]
    return (MATH_FAILURE if cert.contradiction else OK), d, lines


def _extend(args, n):
    if n != 1:
        raise UsageError("the extension prover works for n = 1")
    try:
        rep = extension_infeasibility(args.ansatz_degree, args.hbar, args.restrict_p2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = rep.to_dict()
    lines = [
        f"verdict: {rep.verdict}",
        f"ansatz degree {rep.ansatz_degree}, hbar {rep.hbar_mode}, "
        f"{'pairs within P2' if rep.restrict_p2 else 'pairs up to degree 3'}",
        f"unknowns: {rep.unknown_count} real, for {', '.join(m.format() for m in rep.unknown_monomials)}",
        f"pairs: {rep.pair_count}, equations: {rep.constraint_count}",
    ]
    for r in rep.rounds:
        lines.append(
            f"  level {r['level']}: {r['pairs']} pairs, {r['equations']} equations, "
            f"{r['unknowns']} unknowns, rank {r['rank']}, {'feasible' if r['feasible'] else 'inconsistent'}"
        )
    if rep.witness:
        lines.append("witness:")
        for t in rep.witness:
            lines.append(
                f"  {t.multiplier} x ({t.part} part of the {t.monomial.format() or 'I'} component "
                f"of the pair {{{t.pair[0]}, {t.pair[1]}}})"
            )
        lines.append(f"  combination reads 0 = {rep.witness_constant}; verified: {rep.witness_verified}")
    if rep.solution:
        for m, w in rep.solution.items():
            lines.append(f"Q({m.format()}) = {w}")
        lines.append(f"unique: {rep.unique}")
    return (OK if rep.feasible else MATH_FAILURE), d, lines


def _closure(args, n):
    spec = _spec(args, n)
    rep = closure_check(spec, args.degree)
    lines = [
        f"{'closed' if rep.closed else 'not closed'}: {spec.label} up to degree {rep.degree} "
        f"({rep.basis_size} basis elements, {rep.pairs_checked} pairs)"
    ]
    for f, g, b in rep.violations:
        lines.append(f"  {{{f}, {g}}} = {b} is outside")
    return (OK if rep.closed else MATH_FAILURE), rep.to_dict(), lines


def _member(args, n):
    spec = _spec(args, n)
    f = _poly(args.f, n)
    inside = spec.contains(f)
    d = {"f": str(f), "algebra": spec.to_dict(), "member": inside}
    if not inside and spec.is_named:
        d["offending_monomials"] = [m.format() or "1" for m in spec.offending_monomials(f)]
    text = f"{f} {'is' if inside else 'is not'} in {spec.label}"
    return (OK if inside else MATH_FAILURE), d, [text]


def _generate(args, n):
    seed = []
    if args.algebra:
        spec = _spec(argparse.Namespace(algebra=args.algebra, exprs=[]), n)
        seed.extend(spec.basis(args.seed_degree if args.seed_degree is not None else args.degree))
    seed.extend(_poly(t, n) for t in args.exprs)
    seed.extend(_poly(t, n) for t in args.adjoin)
    if not seed:
        raise UsageError("empty seed: give --algebra, polynomials or --adjoin")
    rep = bracket_generate(seed, args.degree)
    lines = [
        f"dimension {rep.dimension} of {rep.full_dimension} (all polynomials of degree <= {rep.degree})",
        f"generates all of degree <= {rep.degree}: {'yes' if rep.generates_full else 'no'}",
        f"brackets above degree {rep.degree} discarded: {rep.discarded}",
    ]
    return OK, rep.to_dict(), lines


def _classify(args, n):
    if n != 1:
        raise UsageError("the quadratic classifier works for n = 1")
    basis = [_poly(t, n) for t in args.exprs]
    try:
        res = classify_quadratic_span(basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"case: {res.tag} (closure dimension {res.closure_dimension})"]
    if res.dependency is not None:
        lines.append(f"dependency scalar: {res.dependency}")
    if res.h is not None:
        lines.append(f"h = {res.h}, g = {res.g}")
    if res.witness is not None:
        lines.append(f"witness ({res.subcase}): " + ", ".join(res.witness.describe()))
        lines.append(f"maps the span onto span{{q^2, q*p}}: {res.verified}")
    return OK, res.to_dict(), lines


_DISPATCH = {
    "bracket": _bracket,
    "quantize": _quantize,
    "commutator": _commutator,
    "adjoint": _adjoint,
    "check-dirac": _check_dirac,
    ("obstruction", "groenewold"): _cubic_clash,
    ("obstruction", "extend"): _extend,
    ("algebra", "closure"): _closure,
    ("algebra", "member"): _member,
    ("algebra", "generate"): _generate,
    ("algebra", "classify"): _classify,
}


def _glue_negative_values(argv: list) -> list:
    # argparse reads "-3/7" as an option, so "--eta -3/7" becomes "--eta=-3/7"
    out: list = []
    for tok in argv:
        if out and out[-1] in ("--eta", "--hbar") and tok.startswith("-") and tok[1:2].isdigit():
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else OK
    n = args.n
    if n < 1:
        print("error: --n must be positive", file=err)
        return USAGE
    key = (args.command, args.action) if hasattr(args, "action") else args.command
    handler = _DISPATCH[key]
    name = " ".join(key) if isinstance(key, tuple) else key
    try:
        status, data, lines = handler(args, n)
    except ParseError as exc:
        print(f"parse error: {exc.message} at position {exc.position}", file=err)
        print(exc.pointer(), file=err)
        return USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    except DomainError as exc:
        data = {"error": "domain", "map": exc.map_name, "monomials": [m.format() or "1" for m in exc.monomials]}
        status, lines = MATH_FAILURE, [f"domain error: {exc}"]
    if args.format == "structured":
        doc = {"schema_version": SCHEMA_VERSION, "command": name, "n": n, "exit_code": status, "result": data}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
