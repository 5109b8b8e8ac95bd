"""Command-line front end.

Exit codes: 0 success, 2 spec error, 3 soundness alarm (oracle mismatch),
4 precondition violation, 1 anything else the library reports.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
import time

import sympy

from . import bound_engine
from .algebra.finite_field import GF
from .algebra.forms import TernaryForm
from .algebra.rational import format_rational, primes_in_range
from .canonical_frobenius import (MONOMIAL_ORDER, assemble_defect, canonical_lift_space,
                                  frobenius_lift_test, splitting_verdict)
from .errors import (BranchLociCoincide, CommonTorsionError, InvalidArgument, PreconditionViolated,
                     SoundnessAlarm, SpecError)
from .reports import RunReport, error_report, load_spec, render_text, serialize, write_atomic
from .torsion_search import common_projective_torsion, ff_oracle_common, is_separating, separating_primes
from .weierstrass import reduction_type
from .witt2 import W2Element, to_integers_mod_p2

AUX_SEARCH = range(5, 500)


def _pick(specs, labels=None, count=2):
    if labels:
        names = labels.split(",")
        table = {s.label: s for s in specs}
        missing = [n for n in names if n not in table]
        if missing:
            raise SpecError(f"labels not in spec: {', '.join(missing)}", None, "labels")
        chosen = [table[n] for n in names]
    else:
        chosen = specs[:count]
    if len(chosen) != count:
        raise SpecError(f"need exactly {count} curve(s), found {len(chosen)}", None, "labels")
    return chosen


def _primes(text):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidArgument(f"bad prime list {text!r}") from None


def _w_overrides(items):
    out = {}
    for item in items or []:
        label, sep, val = item.partition("=")
        if not sep:
            raise InvalidArgument(f"--w-override expects LABEL=W, got {item!r}")
        if val == "inf":
            out[label] = "inf"
        else:
            try:
                out[label] = int(val)
            except ValueError:
                raise InvalidArgument(f"bad w value {val!r}") from None
            if out[label] < 1:
                raise InvalidArgument("w must be at least 1")
    return out


# --- commands -----------------------------------------------------------------

def _val(v):
    return "inf" if v == math.inf else v


def cmd_classify(specs, p) -> RunReport:
    rows = []
    for s in specs:
        rt = reduction_type(s.curve, p)
        rows.append({"label": s.label, "type": str(rt.tag), "v_disc_min": _val(rt.v_disc_min),
                     "v_c4": _val(rt.v_c4), "v_j": _val(rt.v_j), "j": format_rational(s.curve.j)})
    return RunReport("classify", {"p": p, "curves": [s.describe() for s in specs]}, {"table": rows})


def _torsion_dict(rep) -> dict:
    return {
        "N": rep.N,
        "count": rep.count,
        "infinity_common": rep.infinity_is_common,
        "infinity_orders": [list(o) for o in rep.infinity_provenance],
        "factors": [{"poly": f.pretty(), "coeffs": list(f.coeffs), "degree": f.degree,
                     "multiplicity": f.multiplicity, "orders": [list(o) for o in f.provenance]}
                    for f in rep.factors],
        "loci_degrees": list(rep.loci_degrees),
    }


def cmd_common_torsion(specs, N, aux_primes=None) -> RunReport:
    s1, s2 = specs
    P1, P2 = s1.projection(), s2.projection()
    inputs = {"N": N, "curves": [s1.describe(), s2.describe()], "aux_primes": list(aux_primes or [])}
    try:
        rep = common_projective_torsion(P1, P2, N)
    except BranchLociCoincide as exc:
        raise BranchLociCoincide(f"{exc} (distinct branch loci are a standing hypothesis of the search)") from None
    results = {"torsion": _torsion_dict(rep), "oracle": []}
    chosen = list(aux_primes) if aux_primes else separating_primes(P1, P2, N, AUX_SEARCH, count=2)
    if not chosen:
        results["notes"] = ["no separating auxiliary prime found below 500"]
    moduli = []
    alarm = None
    for l in chosen:
        entry = {"prime": l}
        try:
            entry["count"] = ff_oracle_common(P1, P2, N, l)
        except PreconditionViolated as exc:
            entry["error"] = f"{type(exc).__name__}: {exc}"
            results["oracle"].append(entry)
            continue
        sep = is_separating(P1, P2, N, l)
        entry["separating"] = sep
        entry["agrees"] = entry["count"] == rep.count
        if sep and not entry["agrees"] and alarm is None:
            alarm = f"oracle count {entry['count']} at {l} differs from exact count {rep.count}"
        moduli.append(l)
        results["oracle"].append(entry)
    results["summary"] = f"{rep.count} common image(s) of torsion of order <= {N}"
    report = RunReport("common-torsion", inputs, results)
    report.moduli["used"] = [f"F_{l} and its extensions" for l in moduli]
    if alarm:
        report.status = "alarm"
        report.results["alarm"] = alarm
    return report


def cmd_bound(specs, p, q=None, w_overrides=None) -> RunReport:
    s1, s2 = specs
    cert = bound_engine.certify(s1.projection(), s2.projection(), p, q, w_overrides)
    results = cert.to_dict()
    results["summary"] = cert.summary()
    replay = cert.replay()
    results["replay_matches"] = replay == (cert.bound, cert.total)
    inputs = {"p": p, "q": q, "curves": [s1.describe(), s2.describe()],
              "w_overrides": {k: str(v) for k, v in (w_overrides or {}).items()}}
    return RunReport("bound", inputs, results)


def parse_cubic(text: str, modulus: int) -> TernaryForm:
    """Ternary cubic from an expression in x, y, z with rational coefficients."""
    x, y, z = sympy.symbols("x y z")
    try:
        expr = sympy.sympify(text, locals={"x": x, "y": y, "z": z})
        poly = sympy.Poly(sympy.expand(expr), x, y, z)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError):
        raise SpecError(f"cannot parse cubic {text!r}", None, "cubic") from None
    terms = {}
    for mon, c in poly.terms():
        if sum(mon) != 3:
            raise SpecError("the cubic must be homogeneous of degree 3", None, "cubic")
        c = sympy.Rational(c)
        if math.gcd(int(c.q), modulus) != 1:
            raise SpecError(f"coefficient {c} is not integral at the prime", None, "cubic")
        terms[mon] = int(c.p) * pow(int(c.q), -1, modulus) % modulus
    return TernaryForm(terms, 3, modulus)


def _lift_dict(sol) -> dict:
    return {"solvable": sol.solvable, "kernel_dim": sol.kernel_dim, "unknowns": sol.unknowns,
            "equations": sol.equations, "witness_digest": sol.digest(), "monomial_order": sol.monomial_order}


def cmd_frob_lift(p, spec=None, cubic=None) -> RunReport:
    if (spec is None) == (cubic is None):
        raise InvalidArgument("give exactly one of a curve or a raw cubic")
    if spec is not None:
        v = splitting_verdict(spec.curve, p)
        results = {"verdict": str(v.tag), "w": v.w_statement, **_lift_dict(v.witness),
                   "cubic": str(v.cubic)}
        inputs = {"p": p, "curve": spec.describe()}
    else:
        e = parse_cubic(cubic, p * p)
        sol = frobenius_lift_test(assemble_defect(e, p))
        results = _lift_dict(sol)
        inputs = {"p": p, "cubic": cubic}
    results["summary"] = (f"{results.get('verdict', 'lift')}: "
                          f"{'solvable' if results['solvable'] else 'no Frobenius lift'} mod p^2")
    return RunReport("frob-lift", inputs, results)


def cmd_canonical_lift(p, spec=None, cubic=None) -> RunReport:
    if (spec is None) == (cubic is None):
        raise InvalidArgument("give exactly one of a curve or a raw cubic")
    if spec is not None:
        from .canonical_frobenius import weierstrass_cubic
        from .weierstrass import minimal_at_p
        e0 = weierstrass_cubic(minimal_at_p(spec.curve, p), p)
        inputs = {"p": p, "curve": spec.describe()}
    else:
        e0 = parse_cubic(cubic, p)
        inputs = {"p": p, "cubic": cubic}
    space = canonical_lift_space(e0, p)
    e1 = space.particular_e1()
    results = {"nonempty": space.nonempty, "dimension": space.dimension, "e1_rank": space.e1_rank,
               "e1_particular": None if e1 is None else str(e1), "monomial_order": MONOMIAL_ORDER,
               "summary": f"lifts e + p*e1 with a Frobenius lift: affine space of dimension {space.dimension}, "
                          f"e1 ranges over {space.e1_rank} dimensions"}
    return RunReport("canonical-lift", inputs, results)


_WITT_TOKEN = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)|(-?\d+)|([a-z]+)")


def _witt_tokens(expression):
    pos, out = 0, []
    expression = expression.strip()
    while pos < len(expression):
        if expression[pos].isspace():
            pos += 1
            continue
        m = _WITT_TOKEN.match(expression, pos)
        if not m:
            raise SpecError(f"cannot parse Witt expression near {expression[pos:]!r}", None, "expression")
        out.append(m)
        pos = m.end()
    return out


def eval_witt(p: int, expression: str) -> W2Element:
    """Evaluate ``op arg ...`` with ops add, sub, mul, neg, frob, teich, scale."""
    F = GF(p, 1)
    toks = _witt_tokens(expression)
    if not toks or not toks[0].group(4):
        raise SpecError("expression must start with an operation", None, "expression")
    op, args = toks[0].group(4), toks[1:]

    def vec(m):
        if m.group(1) is None:
            raise SpecError("expected a Witt vector (a0,a1)", None, "expression")
        return W2Element.over(F, int(m.group(1)), int(m.group(2)))

    arity = {"add": 2, "sub": 2, "mul": 2, "neg": 1, "frob": 1, "teich": 1, "scale": 2}
    if op not in arity:
        raise SpecError(f"unknown operation {op!r}", None, "expression")
    if len(args) != arity[op]:
        raise SpecError(f"{op} takes {arity[op]} argument(s)", None, "expression")
    if op == "teich":
        if args[0].group(3) is None:
            raise SpecError("teich takes an integer", None, "expression")
        return W2Element.teichmuller(F(int(args[0].group(3))))
    if op == "scale":
        if args[0].group(3) is None:
            raise SpecError("scale takes an integer then a vector", None, "expression")
        return int(args[0].group(3)) * vec(args[1])
    vals = [vec(a) for a in args]
    return {"add": lambda: vals[0] + vals[1], "sub": lambda: vals[0] - vals[1],
            "mul": lambda: vals[0] * vals[1], "neg": lambda: -vals[0],
            "frob": lambda: vals[0].frobenius()}[op]()


def cmd_witt(p, expression) -> RunReport:
    if p < 3:
        raise InvalidArgument("Witt evaluation needs p >= 3")
    val = eval_witt(p, expression)
    return RunReport("witt", {"p": p, "expression": expression},
                     {"value": repr(val), "a0": int(val.a0), "a1": int(val.a1),
                      "integer_mod_p2": to_integers_mod_p2(val),
                      "summary": f"{expression} = {val!r}"})


def cmd_find_primes(specs, p_min, p_max) -> RunReport:
    s1, s2 = specs
    found = bound_engine.find_admissible_primes(s1.projection(), s2.projection(),
                                                primes_in_range(p_min, p_max), include_inadmissible=True)
    rows = [{"p": p, "scenario": str(tag)} for p, tag in found]
    admissible = [r["p"] for r in rows if r["scenario"] != "Inadmissible"]
    return RunReport("find-primes", {"p_min": p_min, "p_max": p_max,
                                     "curves": [s1.describe(), s2.describe()]},
                     {"primes": rows, "admissible": admissible,
                      "summary": f"{len(admissible)} admissible prime(s) in [{p_min}, {p_max}]"})


# --- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="commontorsion",
                                 description="Common projective torsion of elliptic curves: exact search and bounds")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--output", help="write the report to this file (atomically)")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="reduction types at p")
    c.add_argument("spec")
    c.add_argument("--p", type=int, required=True)

    c = sub.add_parser("common-torsion", parents=[common], help="common images of torsion of order <= N")
    c.add_argument("spec")
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--aux-primes", help="comma-separated oracle primes (default: two separating primes)")
    c.add_argument("--labels", help="two comma-separated labels (default: first two curves)")

    c = sub.add_parser("bound", parents=[common], help="certified bound at p (and total bound with q)")
    c.add_argument("spec")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int)
    c.add_argument("--w-override", action="append", metavar="LABEL=W",
                   help="level w >= 1 or 'inf' (canonical lift) for a curve that splits mod p^2")
    c.add_argument("--labels")

    for name, helptext in (("frob-lift", "Frobenius-lift test mod p^2"),
                           ("canonical-lift", "space of lifts admitting a Frobenius lift")):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("spec", nargs="?")
        c.add_argument("--label")
        c.add_argument("--cubic", help="ternary cubic in x, y, z instead of a spec file")
        c.add_argument("--p", type=int, required=True)

    c = sub.add_parser("witt", parents=[common], help="evaluate a W2 expression, e.g. 'add (1,0) (1,0)'")
    c.add_argument("expression")
    c.add_argument("--p", type=int, required=True)

    c = sub.add_parser("find-primes", parents=[common], help="classify primes in a range")
    c.add_argument("spec")
    c.add_argument("--p-min", type=int, default=5)
    c.add_argument("--p-max", type=int, default=100)
    c.add_argument("--labels")
    return ap


def _one_spec(args):
    if args.spec is None:
        return None
    specs = load_spec(args.spec)
    return _pick(specs, args.label, 1)[0] if args.label else _pick(specs[:1], None, 1)[0]


def run(args) -> RunReport:
    cmd = args.command
    if cmd == "classify":
        return cmd_classify(load_spec(args.spec), args.p)
    if cmd == "common-torsion":
        return cmd_common_torsion(_pick(load_spec(args.spec), args.labels), args.N, _primes(args.aux_primes))
    if cmd == "bound":
        return cmd_bound(_pick(load_spec(args.spec), args.labels), args.p, args.q, _w_overrides(args.w_override))
    if cmd == "frob-lift":
        return cmd_frob_lift(args.p, _one_spec(args), args.cubic)
    if cmd == "canonical-lift":
        return cmd_canonical_lift(args.p, _one_spec(args), args.cubic)
    if cmd == "witt":
        return cmd_witt(args.p, args.expression)
    if cmd == "find-primes":
        return cmd_find_primes(_pick(load_spec(args.spec), args.labels), args.p_min, args.p_max)
    raise InvalidArgument(f"unknown command {cmd}")


def _inputs_echo(args) -> dict:
    return {k: v for k, v in vars(args).items()
            if k not in ("format", "output", "command") and isinstance(v, (str, int, type(None)))}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = run(args)
        code = 3 if report.status == "alarm" else 0
    except SoundnessAlarm as exc:
        report, code = error_report(args.command, _inputs_echo(args), exc), exc.exit_code
    except CommonTorsionError as exc:
        report, code = error_report(args.command, _inputs_echo(args), exc), exc.exit_code
    report.wall_ms = int((time.perf_counter() - start) * 1000)
    text = serialize(report) if args.format == "structured" else render_text(report)
    if args.output:
        write_atomic(args.output, text)
    else:
        (sys.stdout if code == 0 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
