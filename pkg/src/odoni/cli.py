"""Command-line surface: construct, certify, disc, newton, group-check,
frobenius, and pipeline subcommands with JSON input and output.

Exit codes: 0 on success or a passing verdict, 1 when a verification
check fails (the violated relation is named on stderr), 2 for usage or
input errors. JSON always goes to --out or stdout; human-readable
progress and the --verbose check log go to stderr, so piped output
stays parseable. The environment variable ODONI_SEED overrides the
default seed 0 wherever a subcommand takes --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import construct as construct_mod
from . import frobenius as frobenius_mod
from . import newton as newton_mod
from . import permgroup
from .arith import CapExceededError, decimal_str
from .certify import (
    DEFAULT_DEPTH,
    EXHIBIT_TRIAL_BOUND,
    FN_BIT_CAP,
    Certificate,
    CertifyError,
    certificate_to_json_dict,
    certify,
)
from .poly import (
    BitBudgetExceededError,
    Poly,
    Trinomial,
    disc_iterate,
    disc_trinomial,
)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _default_seed() -> int:
    raw = os.environ.get("ODONI_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _emit(payload: dict, out_path: str | None):
    text = json.dumps(payload, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _log(message: str):
    print(message, file=sys.stderr)


def _frac_str(q: Fraction) -> str:
    num = decimal_str(q.numerator)
    return num if q.denominator == 1 else f"{num}/{decimal_str(q.denominator)}"


def _load_params(path: str) -> construct_mod.IterInstance:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return construct_mod.instance_from_json_dict(data)


def _cmd_construct(args) -> int:
    inst = construct_mod.build_params(args.degree, cap=args.cap)
    if args.depth_hint is not None:
        # cheap growth estimate: bits(F_N) ~ d^N * bits of the scaled data
        scale = (inst.d * inst.t * (inst.big_d if inst.parity_case == "even" else inst.t)).bit_length()
        estimate = inst.d**args.depth_hint * scale
        if estimate > FN_BIT_CAP:
            _log(
                f"note: depth {args.depth_hint} will likely exceed the "
                f"{FN_BIT_CAP}-bit cap (estimated {estimate} bits)"
            )
    _emit(construct_mod.instance_to_json_dict(inst), args.out)
    return EXIT_PASS


def _print_verbose_checks(cert: Certificate):
    for check in cert.checks:
        status = "ok" if check.ok else "FAIL"
        detail = f" ({check.detail})" if check.detail else ""
        _log(f"check {check.name}: {status}{detail}")


def _cmd_certify(args) -> int:
    inst = _load_params(args.params)
    cert = certify(
        inst, depth=args.depth, exhibit_effort=args.exhibit_effort
    )
    if args.verbose:
        _print_verbose_checks(cert)
    _emit(certificate_to_json_dict(cert, full_values=args.full_values), args.out)
    if not cert.verdict_pass:
        _log(f"certificate FAILED at: {cert.first_failure}")
        return EXIT_CHECK_FAILED
    _log(f"certificate passes to depth {cert.depth}")
    return EXIT_PASS


def _cmd_disc(args) -> int:
    if args.trinomial:
        parts = args.trinomial.replace(",", " ").split()
        if len(parts) != 5:
            raise ValueError("--trinomial expects 5 entries: A,B,C,d,m")
        a, b, c = (Fraction(x) for x in parts[:3])
        d, m = int(parts[3]), int(parts[4])
        value = disc_trinomial(Trinomial(a, b, c, d, m))
        _emit(
            {
                "schema": "odoni-disc-v1",
                "kind": "trinomial",
                "A": _frac_str(a),
                "B": _frac_str(b),
                "C": _frac_str(c),
                "d": d,
                "m": m,
                "value": _frac_str(value),
            },
            args.out,
        )
        return EXIT_PASS
    inst = _load_params(args.params)
    value = disc_iterate(inst, args.level)
    _emit(
        {
            "schema": "odoni-disc-v1",
            "kind": "iterate",
            "level": args.level,
            "value": _frac_str(value),
        },
        args.out,
    )
    return EXIT_PASS


def _cmd_newton(args) -> int:
    if args.poly_file:
        with open(args.poly_file, encoding="utf-8") as fh:
            coeffs = [Fraction(c) for c in json.load(fh)["coeffs"]]
    else:
        coeffs = [Fraction(c) for c in args.coeffs.replace(",", " ").split()]
    polygon = newton_mod.newton_polygon(Poly(coeffs), args.prime)
    _emit(
        {
            "schema": "odoni-newton-v1",
            "prime": args.prime,
            "vertices": [[i, str(v)] for i, v in polygon.vertices],
            "segments": [
                {"slope": _frac_str(seg.slope), "length": seg.length}
                for seg in polygon.segments
            ],
        },
        args.out,
    )
    return EXIT_PASS


def _cmd_group_check(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    d, m = int(data["d"]), int(data["m"])
    g_gens = [permgroup.Perm([i - 1 for i in images]) for images in data["g_gens"]]
    h_gens = [permgroup.Perm([i - 1 for i in images]) for images in data.get("h_gens", [])]
    verdict = permgroup.gen_sd_check(d, m, g_gens, h_gens)
    _emit(
        {
            "schema": "odoni-group-check-v1",
            "d": d,
            "m": m,
            "hypotheses": verdict.hypotheses,
            "hypotheses_hold": verdict.hypotheses_hold,
            "conclusion_holds": verdict.conclusion_holds,
            "group_order": verdict.group_order,
        },
        args.out,
    )
    if not verdict.hypotheses_hold:
        failed = [k for k, v in verdict.hypotheses.items() if not v]
        _log(f"group-check hypotheses FAILED: {', '.join(failed)}")
        return EXIT_CHECK_FAILED
    if not verdict.conclusion_holds:
        _log(
            "group-check: hypotheses hold but the closure is NOT the full "
            "symmetric group, contradicting the generation criterion"
        )
        return EXIT_CHECK_FAILED
    _log(f"group-check passes: closure is S_{d} (order {verdict.group_order})")
    return EXIT_PASS


def _cmd_frobenius(args) -> int:
    inst = _load_params(args.params)
    report = frobenius_mod.run_frobenius(
        inst, args.level, args.primes, seed=args.seed, start=args.start
    )
    _emit(frobenius_mod.report_to_json_dict(report), args.out)
    if report.within_tolerance is False:
        _log(
            f"frobenius: TV distance {report.tv} exceeds the enforced "
            f"tolerance {frobenius_mod.TV_TOLERANCE}"
        )
        return EXIT_CHECK_FAILED
    _log(f"frobenius: TV distance {float(report.tv):.4f} over {report.sample.used} primes")
    return EXIT_PASS


def pipeline_level(d: int, depth: int) -> int | None:
    """Deepest statistically checkable level: largest n <= min(depth, 2)
    whose exact reference law is enumerable."""
    for n in range(min(depth, 2), 0, -1):
        if permgroup.wreath_order(d, n) <= permgroup.MAX_ENUMERATION:
            return n
    return None


def _cmd_pipeline(args) -> int:
    inst = construct_mod.build_params(args.degree, cap=args.cap)
    _log(f"constructed instance for degree {args.degree} ({inst.parity_case})")
    cert = certify(inst, depth=args.depth)
    if args.verbose:
        _print_verbose_checks(cert)
    _log(
        "certificate "
        + ("passes" if cert.verdict_pass else f"FAILED at {cert.first_failure}")
    )
    level = pipeline_level(args.degree, args.depth)
    frob_json: dict
    frob_fail = False
    if level is None:
        frob_json = {
            "skipped": True,
            "reason": (
                f"no level n <= {min(args.depth, 2)} has an enumerable reference "
                f"law (group order exceeds {permgroup.MAX_ENUMERATION})"
            ),
        }
        _log("frobenius section skipped: " + frob_json["reason"])
    else:
        report = frobenius_mod.run_frobenius(
            inst, level, args.primes, seed=args.seed, start=args.start
        )
        frob_json = frobenius_mod.report_to_json_dict(report)
        frob_fail = report.within_tolerance is False
        _log(
            f"frobenius at level {level}: TV {float(report.tv):.4f} over "
            f"{report.sample.used} primes"
        )
    overall = cert.verdict_pass and not frob_fail
    _emit(
        {
            "schema": "odoni-pipeline-v1",
            "degree": args.degree,
            "depth": args.depth,
            "params": construct_mod.instance_to_json_dict(inst),
            "certificate": certificate_to_json_dict(cert),
            "frobenius": frob_json,
            "pass": overall,
        },
        args.out,
    )
    return EXIT_PASS if overall else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odoni",
        description=(
            "Construct trinomial instances over Q and certify that their "
            "iterated preimages realize full wreath-product Galois groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a certified parameter set for a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--depth-hint", type=int, default=None)
    p.add_argument("--cap", type=int, default=10**6, help="prime search cap")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("certify", help="verify all hypotheses to a depth")
    p.add_argument("--params", required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--full-values", action="store_true", help="inline huge integers")
    p.add_argument(
        "--exhibit-effort",
        type=int,
        default=EXHIBIT_TRIAL_BOUND,
        help="trial-division bound for the optional explicit witness prime",
    )
    p.add_argument("--verbose", action="store_true", help="echo each checked relation")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("disc", help="trinomial or iterate discriminants")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--trinomial",
        metavar="A,B,C,d,m",
        help="discriminant of A x^d + B x^m + C; pass as --trinomial=1,-1,1,3,2",
    )
    group.add_argument("--params", help="params JSON for the iterate discriminant")
    p.add_argument("--level", type=int, default=1, help="iterate level n")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_disc)

    p = sub.add_parser("newton", help="Newton polygon of a polynomial at a prime")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--coeffs",
        help='comma-separated ascending coefficients, rationals as num/den, pass as --coeffs=-1/49,0,1 when the first entry is negative',
    )
    group.add_argument(
        "--poly-file",
        help='JSON file {"coeffs": ["c0", "c1", ...]} in ascending degree',
    )
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_newton)

    p = sub.add_parser("group-check", help="S_d generation criterion from a generator file")
    p.add_argument("--file", required=True, help="JSON with d, m, g_gens, h_gens (1-based images)")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_group_check)

    p = sub.add_parser("frobenius", help="cycle-type statistics against the exact law")
    p.add_argument("--params", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--primes", type=int, default=2000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--start", type=int, default=frobenius_mod.DEFAULT_SCAN_START)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_frobenius)

    p = sub.add_parser("pipeline", help="construct, certify, and sample in one run")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--primes", type=int, default=2000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--start", type=int, default=frobenius_mod.DEFAULT_SCAN_START)
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_pipeline)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize other exits too
        return EXIT_USAGE if exc.code != 0 else EXIT_PASS
    try:
        return args.handler(args)
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        _log(f"input error: {exc}")
        return EXIT_USAGE
    except (
        construct_mod.ConstructError,
        CertifyError,
        frobenius_mod.UnrealizableTypeError,
        frobenius_mod.InsufficientPrimesError,
        permgroup.ClosureCapError,
        CapExceededError,
        BitBudgetExceededError,
    ) as exc:
        _log(f"check failed: {exc}")
        return EXIT_CHECK_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
