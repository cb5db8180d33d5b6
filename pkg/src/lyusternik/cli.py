"""Command-line front end. Every subcommand prints one JSON document.

Exit status: 0 on success, 1 on bad input, 2 when a checked inequality or a
certificate fails (never expected for valid input).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jsonio as jio
from .boxes import BoxUnion
from .decomposition import (
    VerificationError,
    certify_1d,
    certify_boxes,
    certify_int,
    cover_functions,
    pieces_1d,
    pieces_boxes,
    pieces_int,
    verify,
)
from .games import (
    concave_extension_eval,
    fsa_check_core,
    fsa_check_enum,
    is_supermodular,
)
from .integer_sets import IntegerSet
from .lp import LPError
from .partitions import (
    EXTREME_CAP,
    FractionalPartition,
    InvalidPartition,
    extreme_partitions,
    leave_one_out,
    singletons,
    to_regular_cover,
)
from .rational import RationalFormatError, fmt, mask_key, members, to_rational
from .real_sets import EmptySetError, IntervalUnion1D, grid_error_bound, grid_oracle
from .region import counterexample, nu_vector, realize_two, verify_fsa, verify_product

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


class Violation(Exception):
    def __init__(self, report: dict):
        super().__init__("inequality violated")
        self.report = report


# -- argument helpers ------------------------------------------------------------

def _sets(args) -> list:
    if not args.sets:
        raise InputError("--sets FILE is required")
    return jio.sets_from_json(jio.load_file(args.sets))


def _partition(args, M: int | None) -> FractionalPartition | None:
    spec = getattr(args, "partition", None)
    if spec is None:
        return None
    M = args.M or M
    if spec in ("leave-one-out", "singletons"):
        if M is None:
            raise InputError(f"--partition {spec} needs --M or --sets")
        return leave_one_out(M) if spec == "leave-one-out" else singletons(M)
    return jio.partition_from_json(jio.load_file(spec))


def _cover_or_partition(args, M: int):
    if args.cover and args.partition:
        raise InputError("give either --cover or --partition, not both")
    if args.cover:
        return jio.cover_from_json(jio.load_file(args.cover), M)
    P = _partition(args, M)
    if P is None:
        raise InputError("--partition or --cover is required")
    return P


def _function(args):
    if args.function:
        return jio.set_function_from_json(jio.load_file(args.function))
    if args.sets:
        return nu_vector(_sets(args)).as_set_function()
    raise InputError("--function FILE or --sets FILE is required")


def _nu_json(nu) -> dict:
    return {mask_key(S): fmt(nu[S]) for S in range(1 << nu.M)}


def _emit(obj, out: str | None = None) -> None:
    text = jio.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------

def cmd_sum(args):
    sets = _sets(args)
    total = sets[0]
    for X in sets[1:]:
        total = total + X
    out = {"sum": jio.set_to_json(total), "measure": fmt(Fraction(total.measure()))}
    if args.resolution is not None:
        if len(sets) != 2 or not all(isinstance(X, IntervalUnion1D) for X in sets):
            raise InputError("--resolution compares against the grid estimate for two 1-D sets")
        if args.resolution < 1:
            raise InputError("--resolution must be positive")
        est = grid_oracle(sets[0], sets[1], args.resolution)
        bound = grid_error_bound(sets[0], sets[1], args.resolution)
        gap = est - float(total.measure())
        out["grid"] = {"resolution": args.resolution, "estimate": est, "bound": float(bound),
                       "within_bound": -1e-12 <= gap <= float(bound) + 1e-12}
    return out


def cmd_volume(args):
    sets = _sets(args)
    return {"measures": [fmt(Fraction(X.measure())) for X in sets]}


def cmd_nu(args):
    nu = nu_vector(_sets(args))
    return {"M": nu.M, "dim": nu.dim, "nu": _nu_json(nu)}


def cmd_check_fsa(args):
    v = _function(args)
    out = {"M": v.M}
    rep = fsa_check_core(v, jobs=args.jobs)
    out["fsa"] = rep.holds
    out["subgames"] = [{
        "ground": members(c.ground), "balanced": c.balanced, "value": fmt(c.value), "target": fmt(c.target),
        "allocation": {str(i): fmt(t) for i, t in sorted(c.allocation.items())},
        **({"witness": jio.partition_to_json(c.witness)} if c.witness else {}),
    } for _, c in sorted(rep.subgames.items())]
    if args.enum:
        if v.M > EXTREME_CAP:
            raise InputError(f"--enum supports M <= {EXTREME_CAP}")
        e = fsa_check_enum(v, jobs=args.jobs)
        out["enum_fsa"] = e.holds
        out["methods_agree"] = e.holds == rep.holds
    return out


def cmd_check_supermodular(args):
    v = _function(args)
    r = is_supermodular(v)
    out = {"M": v.M, "supermodular": r.holds}
    if not r.holds:
        S, T = r.witness
        out["witness"] = {"S": members(S), "T": members(T), "union_plus_intersection": fmt(r.lhs),
                          "sum": fmt(r.rhs)}
    return out


def cmd_certify(args):
    sets = _sets(args)
    kind = args.kind
    expect = {"1d": IntervalUnion1D, "int": IntegerSet, "boxes": BoxUnion}[kind]
    if not all(isinstance(X, expect) for X in sets):
        raise InputError(f"certify {kind} needs {expect.__name__} summands")
    P = _cover_or_partition(args, len(sets))
    axis = args.axis - 1
    if args.layer is not None:
        C = P if not isinstance(P, FractionalPartition) else to_regular_cover(P)
        if kind == "1d":
            ps = pieces_1d(sets, C, args.layer)
        elif kind == "int":
            ps = pieces_int(sets, C, args.layer)
        else:
            ps = pieces_boxes(sets, C, args.layer, axis)
        return {"layer": args.layer, "cover": jio.cover_to_json(C),
                "pieces": [{"j": p.j, "translator": members(p.translator),
                            "window": [fmt(p.window[0]), fmt(p.window[1])],
                            "piece": jio.set_to_json(p.piece)} for p in ps]}
    if kind == "1d":
        cert = certify_1d(sets, P)
    elif kind == "int":
        cert = certify_int(sets, P)
    else:
        cert = certify_boxes(sets, P, axis)
    doc = jio.certificate_to_json(cert)
    summary = {"q": cert.q, "lhs": fmt(cert.lhs), "rhs": fmt(cert.rhs), "slack": fmt(cert.slack),
               "fractional_lhs": fmt(cert.fractional_sides()[0]),
               "fractional_rhs": fmt(cert.fractional_sides()[1]),
               "verdict": cert.verdict, "equality_condition_met": cert.equality_condition_met}
    if args.out:
        _emit(doc, args.out)
        return summary | {"certificate": args.out}
    return summary | {"certificate": doc}


def cmd_partitions(args):
    if args.action == "extremes":
        if args.M is None:
            raise InputError("--M is required")
        ps = extreme_partitions(args.M)
        return {"M": args.M, "count": len(ps), "partitions": [jio.partition_to_json(P) for P in ps]}
    P = _partition(args, args.M)
    if P is None:
        raise InputError("--partition is required")
    C = to_regular_cover(P)
    H = cover_functions(C)
    return {"cover": jio.cover_to_json(C),
            "h": [{str(i): H.h(k, i) for i in members(C.ground)} for k in range(1, C.q + 1)]}


def cmd_realize(args):
    A1, A2 = realize_two(args.alpha, args.beta, args.c, args.d)
    return {"d": args.d, "A1": jio.set_to_json(A1), "A2": jio.set_to_json(A2),
            "volumes": {"A1": fmt(A1.volume()), "A2": fmt(A2.volume()), "A1+A2": fmt((A1 + A2).volume())}}


def cmd_counterexample(args):
    ce = counterexample(args.which, k=args.k, d=args.d, M=args.M or 3)
    out = {"name": ce.name}
    if ce.sets:
        out |= {"sets": [jio.set_to_json(X) for X in ce.sets], "nu": _nu_json(ce.nu),
                "|A+B+C|+|A|": fmt(ce.lhs), "|A+B|+|A+C|": fmt(ce.rhs), "supermodular": ce.lhs >= ce.rhs}
    else:
        out["functions"] = {name: jio.set_function_to_json(v) | {"supermodular": is_supermodular(v).holds,
                                                                  "fsa": fsa_check_core(v).holds}
                            for name, v in ce.functions.items()}
    return out


def cmd_extend(args):
    v = _function(args)
    try:
        raw = json.loads(args.x) if args.x.strip().startswith("[") else args.x.split(",")
        x = [to_rational(t if not isinstance(t, str) else t.strip()) for t in raw]
    except (ValueError, RationalFormatError, TypeError) as e:
        raise InputError(f"--x must be a list of rationals: {e}") from None
    return {"x": [fmt(t) for t in x], "F": fmt(concave_extension_eval(v, x))}


def cmd_verify_fsa(args):
    sets = _sets(args)
    P = _partition(args, len(sets))
    if P is None:
        raise InputError("--partition is required")
    r = verify_fsa(sets, P)
    out = {"lhs": fmt(r.lhs), "rhs": fmt(r.rhs), "slack": fmt(r.slack), "holds": r.holds}
    if not r.holds:
        raise Violation(out)
    return out


def cmd_verify_product(args):
    if not args.sets:
        raise InputError("--sets FILE with a factor table is required")
    factors = jio.factors_from_json(jio.load_file(args.sets))
    P = _partition(args, len(factors))
    if P is None:
        raise InputError("--partition is required")
    r = verify_product(factors, P)
    out = {"d": r.d, "dims": list(r.dims), "all_convex": r.all_convex, "lhs": r.lhs, "rhs": r.rhs,
           "holder_bound": r.holder_bound, "slack": r.slack, "holds": r.holds}
    if not r.holds:
        raise Violation(out)
    return out


def cmd_verify_certificate(args):
    cert = jio.certificate_from_json(jio.load_file(args.file))
    failures = verify(cert)
    out = {"valid": not failures, "failures": failures, "slack": fmt(cert.slack)}
    if failures:
        raise Violation(out)
    return out


# -- parser ----------------------------------------------------------------------

def _rat_arg(s: str) -> Fraction:
    try:
        return to_rational(s)
    except RationalFormatError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lyusternik", description="Exact volumes of Minkowski subset sums, "
                                "fractional superadditivity checks and certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sets=True, partition=False, function=False):
        if sets:
            sp.add_argument("--sets", metavar="FILE", help="JSON list of sets")
        if partition:
            sp.add_argument("--partition", metavar="FILE|leave-one-out|singletons")
            sp.add_argument("--M", type=int, help="ground set size for named partitions")
        if function:
            sp.add_argument("--function", metavar="FILE", help="JSON set function")
        sp.add_argument("--out", metavar="FILE", help="write the JSON result here")
        return sp

    s = common(sub.add_parser("sum", help="Minkowski sum of all sets"))
    s.add_argument("--resolution", type=int, metavar="N", help="also compare with an N-cell grid estimate")
    s.set_defaults(fn=cmd_sum)
    common(sub.add_parser("volume", help="measure of each set")).set_defaults(fn=cmd_volume)
    common(sub.add_parser("nu", help="measures of all subset sums")).set_defaults(fn=cmd_nu)

    s = common(sub.add_parser("check-fsa", help="fractional superadditivity of a set function"), function=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--enum", action="store_true", help="cross-check against extreme partitions")
    s.set_defaults(fn=cmd_check_fsa)
    common(sub.add_parser("check-supermodular", help="supermodularity of a set function"),
           function=True).set_defaults(fn=cmd_check_supermodular)

    s = common(sub.add_parser("certify", help="decomposition certificate"), partition=True)
    s.add_argument("kind", choices=["1d", "int", "boxes"])
    s.add_argument("--cover", metavar="FILE", help="explicitly ordered regular cover")
    s.add_argument("--layer", type=int, metavar="k", help="only print the pieces of layer k")
    s.add_argument("--axis", type=int, default=1, help="slab coordinate for boxes (1-based)")
    s.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; certificates are sequential")
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("partitions", help="extreme partitions or regular-cover expansion")
    s.add_argument("action", choices=["extremes", "expand"])
    s.add_argument("--M", type=int)
    s.add_argument("--partition", metavar="FILE|leave-one-out|singletons")
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(fn=cmd_partitions)

    s = sub.add_parser("realize", help="two sets with volumes alpha^d, beta^d and sum volume c")
    s.add_argument("--alpha", type=_rat_arg, required=True, help="side length; the volume is alpha^d")
    s.add_argument("--beta", type=_rat_arg, required=True, help="side length; the volume is beta^d")
    s.add_argument("--c", type=_rat_arg, required=True, help="volume of the sum")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(fn=cmd_realize)

    s = sub.add_parser("counterexample", help="fixtures where volumes are not supermodular")
    s.add_argument("which", choices=["supermodularity_1d", "supermodularity_cubes", "alpha_beta_fixtures"])
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--M", type=int)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(fn=cmd_counterexample)

    s = common(sub.add_parser("extend", help="concave 1-homogeneous extension"), function=True)
    s.add_argument("action", choices=["eval"])
    s.add_argument("--x", required=True, help='point, e.g. "1,1,1/2" or \'["1","1","1/2"]\'')
    s.set_defaults(fn=cmd_extend)

    common(sub.add_parser("verify-fsa", help="evaluate both sides of the inequality directly"),
           partition=True).set_defaults(fn=cmd_verify_fsa)
    common(sub.add_parser("verify-product", help="d-th root inequality for product sets"),
           partition=True).set_defaults(fn=cmd_verify_product)

    s = sub.add_parser("verify-certificate", help="re-check a stored certificate")
    s.add_argument("file")
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(fn=cmd_verify_certificate)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        result = args.fn(args)
    except Violation as v:
        _emit(v.report, getattr(args, "out", None))
        return EXIT_VIOLATION
    except VerificationError as e:
        _emit({"error": "verification failed", "failures": e.failures})
        return EXIT_VIOLATION
    except InvalidPartition as e:
        print(json.dumps({"error": str(e), "defects": {str(i): fmt(d) for i, d in e.defects.items()}}),
              file=sys.stderr)
        return EXIT_INPUT
    except (InputError, jio.FormatError, RationalFormatError, EmptySetError, ValueError, TypeError,
            LPError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_INPUT
    if args.command != "certify":
        _emit(result, getattr(args, "out", None))
    else:
        _emit(result)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
