"""Command-line driver.

Subcommands:
  phi     minimum-cost representation value with primal/dual certificates
  fan     linearity or normal fans of a generator set, optionally smoothed
  verify  closure-identity verification of a graded system file

Exit codes: 0 success/verified, 1 domain failure (target outside the cone,
falsified identity, failed linearity check), 2 usage, validation, or
budget errors.  All randomized batteries take --seed so runs are
reproducible; JSON reports are byte-identical for identical inputs and
seeds.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from .errors import ConefanError, InputError, NotInConeError
from .fans import Fan, cone_from_generators, is_cost_linear_on, linearity_fan, normal_fan, smooth_refine
from .graded import GradedSystem, MonomialIdeal, verify_closure_identity
from .lp import duality_check, price_polyhedron, representation_cost
from .rational import fmt, fmt_vec, frac, ivec, vec


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse {what} as JSON: {exc}") from exc


def _parse_vector(text: str, what: str):
    data = _parse_json_arg(text, what)
    if not isinstance(data, list):
        raise InputError(f"{what} must be a JSON array")
    return vec(data)


def _parse_vectors(text: str, what: str):
    data = _parse_json_arg(text, what)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{what} must be a JSON array of arrays")
    return [vec(r) for r in data]


def _cmd_phi(args) -> int:
    generators = _parse_vectors(args.generators, "--generators")
    costs = _parse_vector(args.alpha, "--alpha")
    target = _parse_vector(args.v, "--v")
    try:
        result = representation_cost(generators, costs, target)
        check = duality_check(generators, costs, target)
    except NotInConeError:
        print("v not in cone", file=sys.stderr)
        return 1
    print(
        f"phi = {fmt(result.value)}, witness = {fmt_vec(result.witness)}, "
        f"dual max = {fmt(check.dual_value)} at {fmt_vec(check.maximizer)}"
    )
    if not check.gap_zero:
        print("duality gap detected", file=sys.stderr)
        return 1
    return 0


def _print_fan(fan: Fan) -> None:
    print("rays:")
    for r in fan.rays():
        print(f"  {fmt_vec(r)}")
    print(f"maximal cones ({len(fan.maximal_cones)}):")
    for c in fan.maximal_cones:
        print("  " + ", ".join(fmt_vec(r) for r in c.rays))


def _cmd_fan(args) -> int:
    generators = _parse_vectors(args.generators, "--generators")
    if args.normal_fan_alpha is not None:
        costs = _parse_vector(args.normal_fan_alpha, "--normal-fan-alpha")
        if any(c < 0 for c in costs):
            raise InputError("--normal-fan-alpha entries must be nonnegative")
        fan = normal_fan(price_polyhedron(generators, costs))
    elif args.linearity:
        fan = linearity_fan(generators)
    else:
        cone = cone_from_generators(generators)
        fan = Fan.make([cone], cone.ambient_dim)
    if args.smooth:
        fan = smooth_refine(fan)
    _print_fan(fan)
    if args.check:
        import random

        rng = random.Random(args.seed)
        failures = 0
        trials = 0
        for _ in range(args.check_alphas):
            costs = tuple(
                Fraction(rng.randint(1, 9), rng.randint(1, 3))
                for _ in generators
            )
            for c in fan.maximal_cones:
                trials += 1
                if not is_cost_linear_on(generators, costs, c, seed=args.seed):
                    failures += 1
        if failures:
            print(f"linearity check: FAIL ({failures}/{trials} cone checks)")
            return 1
        print(f"linearity check: PASS ({trials} cone checks)")
    return 0


def load_system(data: dict) -> GradedSystem:
    """Build a graded system from its JSON description.

    Schema: {"ambient_dim": n, "grading_rank": s, "generators":
    [{"degree": [...], "ideal": [[...], ...]}, ...], "caps": {...}}.
    Duplicate degrees are merged by ideal sum.
    """
    if not isinstance(data, dict):
        raise InputError("system file must be a JSON object")
    try:
        n = int(data["ambient_dim"])
        s = int(data["grading_rank"])
        raw_gens = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed system file: {exc}") from exc
    if not isinstance(raw_gens, list) or not raw_gens:
        raise InputError("system file needs a nonempty generators list")
    merged: dict[tuple, MonomialIdeal] = {}
    for entry in raw_gens:
        try:
            degree = ivec(entry["degree"])
            ideal = MonomialIdeal.from_exponents(n, entry["ideal"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed generator entry: {exc}") from exc
        if degree in merged:
            from .graded import ideal_sum

            merged[degree] = ideal_sum(merged[degree], ideal)
        else:
            merged[degree] = ideal
    degrees = sorted(merged)
    return GradedSystem.create(s, n, degrees, [merged[d] for d in degrees])


def _cmd_verify(args) -> int:
    if args.system == "-":
        raw = sys.stdin.read().encode()
    else:
        try:
            with open(args.system, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read system file: {exc}") from exc
    data = _parse_json_arg(raw.decode(), "system file")
    system = load_system(data)
    caps = data.get("caps", {}) if isinstance(data, dict) else {}
    power_bound = args.p_bound if args.p_bound is not None else caps.get("p_bound", 4)
    exponent_cap = args.d_cap if args.d_cap is not None else caps.get("d_cap", 64)
    power_checks = args.L if args.L is not None else caps.get("L", 8)
    seed = args.seed if args.seed is not None else caps.get("seed", 0)
    report = verify_closure_identity(
        system,
        power_bound=int(power_bound),
        exponent_cap=int(exponent_cap),
        power_checks=int(power_checks),
        smooth=not args.no_smooth,
        refine=not args.no_refine,
        seed=int(seed),
    )
    verdict = "VERIFIED" if report.verified else "FALSIFIED"
    print(f"{verdict} (d = {report.exponent}, {len(report.cones)} cones)")
    for cone_check in report.cones:
        status = "pass" if cone_check.passed else "FAIL"
        print(
            f"  cone {', '.join(fmt_vec(r) for r in cone_check.rays)}: {status}"
        )
        if not cone_check.passed:
            for t in cone_check.checks:
                if not (t.closure_ok and t.chain_ok):
                    where = (
                        f"weight {fmt_vec(t.witness_weight)} gives "
                        f"{fmt(t.left_value)} vs {fmt(t.right_value)}"
                        if t.witness_weight is not None
                        else (t.chain_note or "valuation chain failed")
                    )
                    print(
                        f"    tuple {t.powers} (degree {fmt_vec(t.degree)}): {where}"
                    )
                    break
    if args.json:
        payload = {
            "command": _echo_args(args),
            "input_digest": "sha256:" + hashlib.sha256(raw).hexdigest(),
            "report": report.to_dict(),
            "status": "verified" if report.verified else "falsified",
            "exit_code": 0 if report.verified else 1,
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.verified else 1


def _echo_args(args) -> list[str]:
    echo = ["verify", args.system]
    for name in ("p_bound", "d_cap", "L", "seed"):
        value = getattr(args, name)
        if value is not None:
            echo.append(f"--{name.replace('_', '-')}={value}")
    if args.no_smooth:
        echo.append("--no-smooth")
    if args.no_refine:
        echo.append("--no-refine")
    return echo


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conefan",
        description=(
            "Exact rational cones, fans, Newton polyhedra, and closure "
            "verification for graded monomial-ideal systems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_phi = sub.add_parser(
        "phi", help="minimum-cost representation value with certificates"
    )
    p_phi.add_argument("--generators", required=True, help="JSON list of vectors")
    p_phi.add_argument("--alpha", required=True, help="JSON list of nonnegative costs")
    p_phi.add_argument("--v", required=True, help="JSON target vector")

    p_fan = sub.add_parser("fan", help="fans attached to a generator set")
    p_fan.add_argument("--generators", required=True, help="JSON list of vectors")
    mode = p_fan.add_mutually_exclusive_group()
    mode.add_argument(
        "--linearity",
        action="store_true",
        help="fan on which every nonnegative-cost value function is linear",
    )
    mode.add_argument(
        "--normal-fan-alpha",
        metavar="ALPHA",
        help="normal fan of the price polyhedron for these costs",
    )
    p_fan.add_argument(
        "--smooth", action="store_true", help="apply the smooth refinement"
    )
    p_fan.add_argument(
        "--check",
        action="store_true",
        help="sample cost vectors and test linearity on every maximal cone",
    )
    p_fan.add_argument("--check-alphas", type=int, default=20)
    p_fan.add_argument("--seed", type=int, default=0)

    p_ver = sub.add_parser("verify", help="verify the closure identity of a system")
    p_ver.add_argument("system", help="system JSON file, or - for stdin")
    p_ver.add_argument("--p-bound", dest="p_bound", type=int, default=None)
    p_ver.add_argument("--d-cap", dest="d_cap", type=int, default=None)
    p_ver.add_argument("--L", dest="L", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument(
        "--no-smooth", action="store_true", help="skip the smooth refinement"
    )
    p_ver.add_argument(
        "--no-refine",
        action="store_true",
        help="debug: use the single degree cone instead of the linearity fan",
    )
    p_ver.add_argument("--json", metavar="PATH", help="write a JSON report")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "phi":
            return _cmd_phi(args)
        if args.command == "fan":
            return _cmd_fan(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise InputError(f"unknown command {args.command}")
    except NotInConeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConefanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
