"""Command-line front end with exact JSON input/output.

Every rational in the interface is a decimal-free string "p/q" (or a bare
integer string); exponent vectors are integer arrays.  Exit codes: 0 on
success, 1 when a check suite finds a property violation, 2 on malformed
input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from valuix import checks
from valuix.divisors import FormalPshToric, MonomialIdeal, PshGerm
from valuix.fans import Fan, PLFunction, dual_complex, retract_check
from valuix.geometry import GeometryError
from valuix.intersection import (
    generalized_lelong,
    intersection,
    mixed_multiplicity,
    monge_ampere,
    relative_type,
)
from valuix.multiplier import l2_ideal, lct, linf_ideal, nef_envelope
from valuix.valuations import (
    MonomialValuation,
    Polynomial,
    ShiftedMonomialValuation,
    TriangularAutomorphism,
    homotopy_eval,
    homotopy_stabilization_threshold,
)


class InputError(ValueError):
    pass


# -- JSON (de)serialization ---------------------------------------------------

def rat_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise InputError(f"rationals must be strings or integers, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InputError(f"not a rational: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {s!r}") from exc


def parse_ideal(doc) -> MonomialIdeal:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise InputError("ideal document needs a 'generators' field")
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError("'generators' must be a nonempty array")
    n = doc.get("n", len(gens[0]))
    try:
        return MonomialIdeal.make(int(n), [tuple(g) for g in gens])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def emit_ideal(ideal: MonomialIdeal) -> dict:
    return {"generators": [list(g) for g in ideal.generators]}


def parse_germ(doc) -> PshGerm:
    if not isinstance(doc, dict) or "terms" not in doc:
        raise InputError("germ document needs a 'terms' field")
    terms = []
    for t in doc["terms"]:
        terms.append((str_to_rat(t.get("c", "1")), parse_ideal(t["ideal"])))
    try:
        return PshGerm.make(terms)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def parse_weights(doc, key="w"):
    if key not in doc:
        raise InputError(f"missing '{key}' field")
    w = [str_to_rat(x) for x in doc[key]]
    if any(x <= 0 for x in w):
        raise InputError("weights must be positive")
    return tuple(w)


def parse_fan(doc) -> Fan:
    try:
        n = int(doc["n"])
        rays = tuple(tuple(int(x) for x in r) for r in doc["rays"])
        cones = tuple(tuple(int(i) for i in c) for c in doc["cones"])
        return Fan(n, rays, cones)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad fan document: {exc}") from exc


def parse_polynomial(doc, dim) -> Polynomial:
    try:
        coeffs = {}
        for t in doc["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            coeffs[exp] = coeffs.get(exp, Fraction(0)) + str_to_rat(t["c"])
        return Polynomial.make(dim, coeffs)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad polynomial document: {exc}") from exc


def parse_valuation(doc, max_degree):
    w = parse_weights(doc, "weights")
    n = len(w)
    shifts_doc = doc.get("shifts", [])
    if not shifts_doc:
        return MonomialValuation(w)
    shifts = {}
    for item in shifts_doc:
        try:
            i = int(item["i"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("each shift needs an integer 'i'") from exc
        if not 0 < i < n:
            raise InputError("shift index out of range")
        shifts[i] = parse_polynomial(item["poly"], n)
    try:
        change = TriangularAutomorphism.make(n, shifts)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return ShiftedMonomialValuation(change, w, degree_cap=max_degree)


def emit(doc, stream):
    json.dump(doc, stream, sort_keys=True, separators=(",", ": "), indent=2)
    stream.write("\n")


# -- commands -----------------------------------------------------------------

def _scaled(doc) -> FormalPshToric:
    g = FormalPshToric(parse_ideal(doc).region())
    c = str_to_rat(doc.get("c", "1"))
    if c <= 0:
        raise InputError("'c' must be positive")
    return g if c == 1 else g.scale(c)


def cmd_lct(doc, args):
    return rat_to_str(lct(FormalPshToric(parse_ideal(doc).region())))


def cmd_multiplier(doc, args):
    return emit_ideal(l2_ideal(_scaled(doc)))


def cmd_linf(doc, args):
    return emit_ideal(linf_ideal(_scaled(doc)))


def cmd_envelope(doc, args):
    fan = parse_fan(doc["fan"]) if "fan" in doc else None
    if fan is None:
        raise InputError("envelope needs a 'fan' field")
    values = [str_to_rat(v) for v in doc.get("values", [])]
    try:
        g = nef_envelope(PLFunction(fan, values))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {
        "generators": [[rat_to_str(x) for x in v] for v in g.region.generators]
    }


def _parse_ideals(doc):
    if "ideals" not in doc:
        raise InputError("missing 'ideals' field")
    return [parse_ideal(d) for d in doc["ideals"]]


def cmd_mixed_mult(doc, args):
    regions = [a.region() for a in _parse_ideals(doc)]
    return rat_to_str(mixed_multiplicity(*regions))


def cmd_intersection(doc, args):
    regions = [a.region() for a in _parse_ideals(doc)]
    return rat_to_str(intersection(regions).value)


def cmd_monge_ampere(doc, args):
    gs = [FormalPshToric(a.region()) for a in _parse_ideals(doc)]
    measure = monge_ampere(gs)
    return {
        "atoms": [
            {
                "weights": [rat_to_str(x) for x in nu.weights],
                "mass": rat_to_str(mass),
            }
            for nu, mass in measure.atoms
        ]
    }


def cmd_lelong(doc, args):
    u = parse_germ(doc["u"])
    phi = parse_germ(doc["phi"]) if "phi" in doc else None
    if phi is None:
        from valuix.divisors import lelong_number

        return rat_to_str(lelong_number(u))
    return rat_to_str(generalized_lelong(u, phi))


def cmd_relative_type(doc, args):
    u = parse_germ(doc["u"])
    return rat_to_str(relative_type(u, parse_weights(doc)))


def cmd_transform_eval(doc, args):
    u = parse_germ(doc["u"])
    return rat_to_str(u.transform().value(parse_weights(doc)))


def cmd_homotopy(doc, args):
    nu = parse_valuation(doc, args.max_degree)
    f = parse_polynomial(doc["f"], nu.dim)
    if f.is_zero:
        raise InputError("'f' must be nonzero")
    s = str_to_rat(doc.get("s", "0"))
    if s < 0:
        raise InputError("'s' must be nonnegative")
    return {
        "value": rat_to_str(homotopy_eval(nu, f, s)),
        "threshold": rat_to_str(homotopy_stabilization_threshold(nu, f)),
    }


def cmd_retract(doc, args):
    nu = parse_valuation(doc, args.max_degree)
    fan = parse_fan(doc["fan"]) if "fan" in doc else None
    from valuix.fans import orthant_fan

    if fan is None:
        fan = orthant_fan(nu.dim)
    result = retract_check(nu, fan)
    return {"weights": [rat_to_str(x) for x in result.weights]}


def cmd_dual_complex(doc, args):
    fan = parse_fan(doc["fan"] if "fan" in doc else doc)
    dc = dual_complex(fan)
    local = {ray_index: i for i, ray_index in enumerate(dc.vertices)}
    return {
        "vertices": [
            {"ray": list(fan.rays[i]), "b": b}
            for i, b in zip(dc.vertices, dc.b_values)
        ],
        "faces": [[local[i] for i in face] for face in dc.faces],
    }


COMMANDS = {
    "lct": cmd_lct,
    "multiplier": cmd_multiplier,
    "linf": cmd_linf,
    "envelope": cmd_envelope,
    "mixed-mult": cmd_mixed_mult,
    "intersection": cmd_intersection,
    "monge-ampere": cmd_monge_ampere,
    "lelong": cmd_lelong,
    "relative-type": cmd_relative_type,
    "transform-eval": cmd_transform_eval,
    "homotopy": cmd_homotopy,
    "retract": cmd_retract,
    "dual-complex": cmd_dual_complex,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valuix",
        description="Exact valuative invariants of monomial-type singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _common_flags(p)
    p = sub.add_parser("check")
    p.add_argument("suite", nargs="?", help="suite name, or use --all")
    p.add_argument("--all", action="store_true", dest="all_suites")
    _common_flags(p)
    return parser


def _common_flags(p):
    p.add_argument("--input", default="-", metavar="FILE")
    p.add_argument("--output", default="-", metavar="FILE")
    p.add_argument("--seed", type=int, default=1, metavar="N")
    p.add_argument("--max-degree", type=int, default=64, metavar="N")


def _load_input(args):
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    return doc


def _write_output(args, doc):
    if args.output == "-":
        emit(doc, sys.stdout)
    else:
        with open(args.output, "w") as fh:
            emit(doc, fh)


def _run_check(args) -> int:
    if args.all_suites:
        report = checks.run_all(seed=args.seed)
    else:
        if not args.suite:
            print("error: check needs a suite name or --all", file=sys.stderr)
            return 2
        if args.suite not in checks.SUITES:
            print(f"error: unknown suite: {args.suite}", file=sys.stderr)
            return 2
        report = checks.run_suite(args.suite, seed=args.seed)
        report = {"seed": args.seed, "suites": [report], "passed": report["passed"]}
    _write_output(args, report)
    return 0 if report["passed"] else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check":
        try:
            return _run_check(args)
        except KeyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        doc = _load_input(args)
        result = COMMANDS[args.command](doc, args)
    except (InputError, GeometryError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(args, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
