"""Command-line interface: tropicalize, check, initial, radius, solve-linear, verify-ft, selftest.

Exit codes: 0 success / all checks pass, 1 mathematical failure (a candidate
is not a solution, a monomial initial form exists, a report step fails),
2 usage or input errors.  All numeric output is exact-rational text; report
files are canonical JSON (stable key order, no timestamps), so identical
configuration and seed reproduce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import files
from .diffpoly import derived_system, is_tropical_solution, tropicalize_poly, sigma0_poly
from .errors import (
    InvalidRule,
    NotAClassicalSolution,
    PolySyntaxError,
    TropdiffError,
    TruncationAmbiguous,
    UnknownVariable,
    ZetaUnavailable,
)
from .initial import initial_system_monomial_check
from .parser import print_poly
from .radius import (
    RadiusRule,
    base_change,
    describe_radius,
    fit_rule,
    radius_from_rule,
    radius_window_estimate,
)
from .semiring import NatValuation, format_rational, parse_rational
from .series import tropicalize_series
from .verify import DEFAULT_SEED, reproduce_exponential_example, solve_linear, verify_ft

SCHEMA_VERSION = files.SCHEMA_VERSION


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters; unset values fall back to p-scaled defaults."""

    subcommand: str
    p: Optional[int] = None
    truncation: Optional[int] = None
    order: Optional[int] = None
    base: Optional[Fraction] = None
    seed: int = DEFAULT_SEED
    count: int = 50
    window_start: Optional[int] = None
    json_path: Optional[str] = None

    def defaulted_truncation(self) -> int:
        if self.truncation is not None:
            return self.truncation
        return 6 * self.p if self.p else 12

    def defaulted_order(self) -> int:
        if self.order is not None:
            return self.order
        return 3 * self.p if self.p else 6

    def defaulted_base(self) -> Fraction:
        if self.base is not None:
            return self.base
        if self.p:
            return Fraction(self.p)
        raise ValueError("no base given and the field has no prime")

    def validate(self):
        if self.truncation is not None and self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        if self.order is not None and self.order < 0:
            raise ValueError("order must be >= 0")
        if self.base is not None and self.base <= 1:
            raise ValueError("base must be > 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")


def _env_seed() -> int:
    value = os.environ.get("TROPDIFF_SEED")
    return int(value) if value else DEFAULT_SEED


def _write_json(config: RunConfig, payload: dict):
    if config.json_path:
        payload = {"schema": SCHEMA_VERSION, **payload}
        files.dump_json(payload, config.json_path)


def _report_line(rep, label: str) -> str:
    extra = " (truncation-limited)" if rep.truncation_limited else ""
    verdict = "OK  " if rep.vanishes else "FAIL"
    return (f"  [{verdict}] {label}: value {rep.value}, "
            f"min attained {len(rep.attainment)}x{extra}")


def cmd_tropicalize(args) -> int:
    config = RunConfig("tropicalize", json_path=args.json)
    backend, nvars, truncation, polys = files.system_from_dict(files.load_json(args.system))
    records = []
    for f in polys:
        trop = tropicalize_poly(f)
        grig = sigma0_poly(trop)
        records.append({"input": print_poly(f), "rank2": print_poly(trop),
                        "grigoriev": print_poly(grig)})
        print(f"f       = {print_poly(f)}")
        print(f"trop_v  = {print_poly(trop)}")
        print(f"trop_w  = {print_poly(grig)}")
    _write_json(config, {"command": "tropicalize", "field": files.field_to_dict(backend),
                         "vars": nvars, "truncation": truncation, "polynomials": records})
    return 0


def _load_system_and_candidate(args):
    backend, nvars, truncation, polys = files.system_from_dict(files.load_json(args.system))
    candidate = files.candidate_from_dict(files.load_json(args.candidate), backend.nat_val)
    if len(candidate) != nvars:
        raise ValueError(f"system has {nvars} variable(s), candidate has {len(candidate)}")
    return backend, nvars, truncation, polys, candidate


def cmd_check(args) -> int:
    backend, nvars, truncation, polys, candidate = _load_system_and_candidate(args)
    config = RunConfig("check", p=backend.p, order=args.order, json_path=args.json)
    config.validate()
    m = config.defaulted_order()
    labels, system = [], []
    for l, f in enumerate(polys):
        for k, g in enumerate(derived_system(f, m)):
            labels.append((l, k))
            system.append(tropicalize_poly(g))
    report = is_tropical_solution(system, candidate)
    print(f"check: {len(polys)} generator(s), derived to order m = {m}, "
          f"truncation N = {truncation}")
    for (l, k), rep in zip(labels, report.reports):
        print(_report_line(rep, f"generator {l}, d^{k}"))
    records = [{"generator": l, "order": k, "vanishes": rep.vanishes,
                "value": str(rep.value), "attained": len(rep.attainment),
                "truncation_limited": rep.truncation_limited}
               for (l, k), rep in zip(labels, report.reports)]
    payload = {"command": "check", "field": files.field_to_dict(backend),
               "vars": nvars, "truncation": truncation, "order": m,
               "all_vanish": report.all_vanish,
               "truncation_limited": report.truncation_limited,
               "equations": records}
    _write_json(config, payload)
    if report.all_vanish:
        qualifier = " (up to truncation)" if report.truncation_limited else ""
        print(f"verdict: tropical solution of the derived system{qualifier}")
        return 0
    l, k = labels[report.failing[0]]
    print(f"verdict: NOT a tropical solution; first failure at generator {l}, "
          f"derivative order {k}")
    return 1


def cmd_initial(args) -> int:
    backend, nvars, truncation, polys, candidate = _load_system_and_candidate(args)
    config = RunConfig("initial", p=backend.p, order=args.order, json_path=args.json)
    config.validate()
    m = config.defaulted_order()
    check = initial_system_monomial_check(polys, candidate, m)
    records = []
    for (l, k), form in check.initials:
        text = print_poly(form)
        records.append({"generator": l, "order": k, "initial_form": text,
                        "monomial": (l, k) in check.witnesses})
        print(f"in_S(d^{k} f_{l}) = {text}")
    payload = {"command": "initial", "field": files.field_to_dict(backend),
               "vars": nvars, "truncation": truncation, "order": m,
               "verdict": check.verdict, "initial_forms": records}
    _write_json(config, payload)
    print(f"verdict: {check.verdict}")
    if not check.monomial_free:
        l, k = check.witnesses[0]
        print(f"monomial witness: generator {l}, derivative order {k}")
        return 1
    return 0


def _parse_rule_spec(spec: str, p: Optional[int], series) -> RadiusRule:
    parts = [s.strip() for s in spec.split(",")]
    stride = p if parts[0] == "p" else int(parts[0])
    if stride is None:
        raise ValueError("--rule p,... needs a field with a prime")
    if len(parts) == 2 and parts[1] == "auto":
        return fit_rule(series, stride, p)
    if len(parts) != 4:
        raise ValueError("--rule takes 'd,auto' or 'd,q,offset,corr'")
    slope = parse_rational(parts[1])
    offset = parse_rational(parts[2])
    corr = {"corr": True, "nocorr": False, "1": True, "0": False}.get(parts[3])
    if corr is None:
        raise ValueError("the correction flag must be corr/nocorr")
    return RadiusRule(stride, slope, offset, corr, p)


def cmd_radius(args) -> int:
    data = files.load_json(args.series)
    if "field" in data:
        backend = files.field_from_dict(data["field"])
        series = tropicalize_series(files.series_from_dict(data, backend))
        p = backend.p
    else:
        p = data.get("p")
        series = files.trop_series_from_dict(data, NatValuation(p))
    config = RunConfig("radius", p=p, window_start=args.window_start,
                       base=Fraction(args.base) if args.base else None,
                       json_path=args.json)
    config.validate()
    base = config.defaulted_base()
    if args.rule:
        rule = _parse_rule_spec(args.rule, p, series)
        estimate = radius_from_rule(rule)
    else:
        start = config.window_start
        if start is None:
            start = series.truncation // 2
        estimate = radius_window_estimate(series, start)
    print(describe_radius(estimate, base))
    payload = {"command": "radius", "kind": estimate.kind,
               "log_radius": estimate.log_str(),
               "base": format_rational(base),
               "truncation": series.truncation,
               "window": list(estimate.window) if estimate.window else None,
               "caveat": estimate.caveat}
    if args.base2:
        change = base_change(estimate, base, Fraction(args.base2))
        rendered = (format_rational(change.new_log_radius)
                    if isinstance(change.new_log_radius, Fraction)
                    else str(change.new_log_radius))
        print(f"in base {format_rational(change.new_base)}: log_r = {rendered}"
              f"{'' if change.exact else ' (approximate)'}")
        payload["base_change"] = {"base": format_rational(change.new_base),
                                  "log_radius": rendered, "exact": change.exact}
    _write_json(config, payload)
    return 0


def cmd_solve_linear(args) -> int:
    config = RunConfig("solve-linear", json_path=args.json)
    ode = files.ode_from_dict(files.load_json(args.ode))
    sol = solve_linear(ode)
    backend = sol.backend
    print(f"solution of x' = g*x over {backend.describe()}, truncation {sol.truncation}")
    shown = 0
    for k, c in enumerate(sol.coeffs):
        if not c.is_zero:
            print(f"  t^{k}: {c}")
            shown += 1
            if shown >= 12 and k < sol.truncation - 1:
                print("  ...")
                break
    record = {"field": files.field_to_dict(backend), **files.series_to_dict(sol)}
    if args.out:
        files.dump_json(record, args.out)
        print(f"series written to {args.out}")
    _write_json(config, {"command": "solve-linear", "solution": record})
    return 0


def cmd_verify_ft(args) -> int:
    config = RunConfig("verify-ft", p=args.p, truncation=args.truncation,
                       order=args.order, seed=args.seed, count=args.count,
                       json_path=args.json)
    config.validate()
    report = verify_ft(args.p, config.count, config.defaulted_truncation(),
                       config.defaulted_order(), config.seed)
    print(report.format_text())
    _write_json(config, {"command": "verify-ft", "seed": config.seed,
                         **report.to_dict()})
    return 0 if report.passed else 1


def cmd_selftest(args) -> int:
    config = RunConfig("selftest", p=args.p, truncation=args.truncation,
                       order=args.order, json_path=args.json)
    config.validate()
    report = reproduce_exponential_example(args.p, config.truncation, config.order)
    print(report.format_text())
    _write_json(config, {"command": "selftest", **report.to_dict()})
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tropdiff",
        description="Exact tropical differential algebra over valued power-series rings.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p_trop = sub.add_parser("tropicalize", help="tropicalize the polynomials of a system file")
    p_trop.add_argument("--system", required=True)
    p_trop.add_argument("--json", help="write a machine-readable report")
    p_trop.set_defaults(func=cmd_tropicalize)

    p_check = sub.add_parser("check", help="check a candidate against a derived tropical system")
    p_check.add_argument("--system", required=True)
    p_check.add_argument("--candidate", required=True)
    p_check.add_argument("--order", type=int, help="derive generators to this order (default 3p)")
    p_check.add_argument("--json")
    p_check.set_defaults(func=cmd_check)

    p_init = sub.add_parser("initial", help="initial forms of the derived system at a candidate")
    p_init.add_argument("--system", required=True)
    p_init.add_argument("--candidate", required=True)
    p_init.add_argument("--order", type=int)
    p_init.add_argument("--json")
    p_init.set_defaults(func=cmd_initial)

    p_rad = sub.add_parser("radius", help="tropical radius of convergence of a series file")
    p_rad.add_argument("--series", required=True)
    p_rad.add_argument("--rule", help="'d,q,offset,corr' or 'd,auto' (d may be the letter p)")
    p_rad.add_argument("--window-start", type=int, dest="window_start")
    p_rad.add_argument("--base", help="rational base > 1 (default: the field prime)")
    p_rad.add_argument("--base2", help="also express the radius in this base")
    p_rad.add_argument("--json")
    p_rad.set_defaults(func=cmd_radius)

    p_solve = sub.add_parser("solve-linear", help="solve x' = g*x exactly by recurrence")
    p_solve.add_argument("--ode", required=True)
    p_solve.add_argument("--out", help="write the solution as a series file")
    p_solve.add_argument("--json")
    p_solve.set_defaults(func=cmd_solve_linear)

    p_ft = sub.add_parser("verify-ft", help="fundamental-theorem checks on random linear ODEs")
    p_ft.add_argument("--p", type=int, default=3)
    p_ft.add_argument("--count", type=int, default=50)
    p_ft.add_argument("--truncation", type=int)
    p_ft.add_argument("--order", type=int)
    p_ft.add_argument("--seed", type=int, default=_env_seed())
    p_ft.add_argument("--json")
    p_ft.set_defaults(func=cmd_verify_ft)

    p_self = sub.add_parser("selftest", help="reproduce the worked p-adic exponential example")
    p_self.add_argument("--p", type=int, default=3)
    p_self.add_argument("--truncation", type=int)
    p_self.add_argument("--order", type=int)
    p_self.add_argument("--json")
    p_self.set_defaults(func=cmd_selftest)
    return top


USAGE_ERRORS = (OSError, json.JSONDecodeError, ValueError, KeyError,
                PolySyntaxError, ZetaUnavailable, UnknownVariable)
MATH_ERRORS = (NotAClassicalSolution, TruncationAmbiguous, InvalidRule)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MATH_ERRORS as exc:
        print(f"tropdiff: {exc}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"tropdiff: {exc}", file=sys.stderr)
        return 2
    except TropdiffError as exc:
        print(f"tropdiff: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
