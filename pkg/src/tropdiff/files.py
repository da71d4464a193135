"""JSON file schemas: fields, series, candidates, systems, ODEs, reports.

All exact values serialize as strings "num/den" (or "inf"); Eisenstein
elements as arrays of rational strings ["c0", "c1", ...].  Series records
list only the nonzero (classical) / finite (tropical) coefficients:

    {"truncation": N, "coeffs": [{"n": k, "val": ...}, ...]}

A system file is {"field": {...}, "vars": n, "truncation": N,
"polynomials": [expr, ...]} with expressions in the polynomial grammar; a
candidate file is {"series": [series-record, ...]} over the system's field.
"""

from __future__ import annotations

import json
from typing import Sequence

from .diffpoly import CONSTANT_MONOMIAL, DiffPoly
from .fields import FieldBackend, FieldElem
from .semiring import NatValuation, T_INF, TropNum, format_rational, parse_rational
from .series import PowerSeries, TropSeries
from .verify import LinearODE

SCHEMA_VERSION = 1


def field_to_dict(backend: FieldBackend) -> dict:
    out = {"kind": backend.kind}
    if backend.p is not None:
        out["p"] = backend.p
    return out


def field_from_dict(data: dict) -> FieldBackend:
    try:
        return FieldBackend(data["kind"], data.get("p"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad field record: {exc}") from exc


def elem_to_json(c: FieldElem):
    if c.backend.kind == "eisenstein":
        return [format_rational(q) for q in c.coeffs]
    return format_rational(c.coeffs[0])


def elem_from_json(value, backend: FieldBackend) -> FieldElem:
    if isinstance(value, list):
        if backend.kind != "eisenstein":
            raise ValueError("coefficient arrays are for Eisenstein backends only")
        return backend.from_coeffs([parse_rational(v) for v in value])
    return backend.elem(parse_rational(str(value)))


def series_to_dict(s: PowerSeries) -> dict:
    coeffs = [{"n": k, "val": elem_to_json(c)}
              for k, c in enumerate(s.coeffs) if not c.is_zero]
    return {"truncation": s.truncation, "coeffs": coeffs}


def series_from_dict(data: dict, backend: FieldBackend) -> PowerSeries:
    n = int(data["truncation"])
    cs = [backend.zero()] * (n + 1)
    for rec in data.get("coeffs", []):
        k = int(rec["n"])
        if not 0 <= k <= n:
            raise ValueError(f"coefficient index {k} outside truncation {n}")
        cs[k] = elem_from_json(rec["val"], backend)
    return PowerSeries(backend, n, tuple(cs))


def trop_series_to_dict(s: TropSeries) -> dict:
    coeffs = [{"n": k, "val": str(c)}
              for k, c in enumerate(s.coeffs) if not c.is_inf]
    return {"truncation": s.truncation, "coeffs": coeffs}


def trop_series_from_dict(data: dict, nat_val: NatValuation) -> TropSeries:
    n = int(data["truncation"])
    cs = [T_INF] * (n + 1)
    for rec in data.get("coeffs", []):
        k = int(rec["n"])
        if not 0 <= k <= n:
            raise ValueError(f"coefficient index {k} outside truncation {n}")
        cs[k] = TropNum.parse(str(rec["val"]))
    return TropSeries(nat_val, n, tuple(cs))


def candidate_to_dict(series: Sequence[TropSeries]) -> dict:
    return {"series": [trop_series_to_dict(s) for s in series]}


def candidate_from_dict(data: dict, nat_val: NatValuation) -> tuple[TropSeries, ...]:
    records = data.get("series")
    if not isinstance(records, list) or not records:
        raise ValueError("candidate file needs a nonempty 'series' list")
    out = tuple(trop_series_from_dict(rec, nat_val) for rec in records)
    if nat_val.p is None:
        # Grigoriev mode records supports only: coefficients must be Boolean
        for s in out:
            if not all(c.is_boolean for c in s.coeffs):
                raise ValueError("trivially valued systems take Boolean "
                                 "candidates (coefficients 0 or inf)")
    return out


def system_from_dict(data: dict):
    """Returns (backend, nvars, truncation, polynomials)."""
    from .parser import parse_poly  # deferred: parser imports nothing from here

    backend = field_from_dict(data["field"])
    nvars = int(data["vars"])
    truncation = int(data["truncation"])
    if nvars < 1:
        raise ValueError("systems need at least one variable")
    if truncation < 0:
        raise ValueError("truncation must be a natural number")
    exprs = data.get("polynomials", [])
    if not exprs:
        raise ValueError("system file lists no polynomials")
    polys = tuple(parse_poly(src, backend, nvars, truncation) for src in exprs)
    return backend, nvars, truncation, polys


def system_to_dict(backend: FieldBackend, nvars: int, truncation: int,
                   polynomials: Sequence[DiffPoly]) -> dict:
    from .parser import print_poly

    return {
        "field": field_to_dict(backend),
        "vars": nvars,
        "truncation": truncation,
        "polynomials": [print_poly(f) for f in polynomials],
    }


def ode_from_dict(data: dict) -> LinearODE:
    """Linear-ODE record: {"field": ..., "truncation": N, "g": expr|series, "c0": val}."""
    from .parser import parse_poly

    backend = field_from_dict(data["field"])
    truncation = int(data["truncation"])
    g_data = data["g"]
    if isinstance(g_data, str):
        g_poly = parse_poly(g_data, backend, 1, max(truncation - 1, 0))
        if any(not lam.is_constant for lam, _ in g_poly.terms):
            raise ValueError("the right-hand side g must not involve x")
        g = g_poly.coefficient(CONSTANT_MONOMIAL)
    else:
        g = series_from_dict(g_data, backend)
    c0 = elem_from_json(data["c0"], backend)
    return LinearODE(g, c0, truncation)


def dump_json(data: dict, path: str):
    """Canonical serialization: stable key order, no timestamps."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
