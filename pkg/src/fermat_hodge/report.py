"""JSON encoding of exact values and the versioned report schema.

Every report is an envelope {schema_version, kind, package_version, config, result}
with an optional non-authoritative "approx" block. Output is deterministic: keys are
sorted and nothing time-dependent is recorded.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from . import __version__
from .candidate import FakeCycleSpec
from .cyclotomic import CycloNum, degree
from .polyring import Poly

SCHEMA_VERSION = "1.0"
REPORT_KINDS = (
    "spec",
    "certificate",
    "tangent",
    "qform",
    "hodge-numbers",
    "picmax",
    "lemma-check",
    "periods",
)
APPROX_NOTE = "floating-point rendering for reading only; exact fields are authoritative"


class ReportError(ValueError):
    pass


# exact values


def cyclo_to_json(z: CycloNum) -> dict:
    return {"m": z.m, "coeffs": [[c.numerator, c.denominator] for c in z.coeffs]}


def cyclo_from_json(obj: Mapping) -> CycloNum:
    try:
        m = int(obj["m"])
        coeffs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ReportError(f"malformed cyclotomic number {obj!r}: {exc}") from None
    if len(coeffs) != degree(m):
        raise ReportError(f"Q(zeta_{m}) needs {degree(m)} coefficients, got {len(coeffs)}")
    return CycloNum(m, coeffs)


def poly_to_json(p: Poly) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [{"exps": list(e), "coeff": cyclo_to_json(c)} for e, c in p.sorted_terms()],
    }


def poly_from_json(obj: Mapping) -> Poly:
    try:
        nvars = int(obj["nvars"])
        terms = [(tuple(int(x) for x in t["exps"]), cyclo_from_json(t["coeff"])) for t in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ReportError(f"malformed polynomial: {exc}") from None
    if any(len(e) != nvars for e, _ in terms):
        raise ReportError("exponent vector length differs from nvars")
    return Poly(nvars, terms)


def spec_to_json(spec: FakeCycleSpec) -> dict:
    return {
        "d": spec.d,
        "n": spec.n,
        "c": [cyclo_to_json(ci) for ci in spec.c],
        "c_lambda": None if spec.c_lambda is None else cyclo_to_json(spec.c_lambda),
    }


def spec_from_json(obj: Mapping) -> FakeCycleSpec:
    """Accepts a bare spec object or any report whose result is or embeds a spec."""
    if "kind" in obj:
        result = obj.get("result", {})
        obj = result if obj["kind"] == "spec" else result.get("spec")
        if obj is None:
            raise ReportError("report does not embed a spec")
    try:
        c = tuple(cyclo_from_json(x) for x in obj["c"])
        cl = obj.get("c_lambda")
        return FakeCycleSpec(int(obj["d"]), int(obj["n"]), c, None if cl is None else cyclo_from_json(cl))
    except KeyError as exc:
        raise ReportError(f"spec is missing field {exc}") from None


def complex_to_json(z: complex) -> list[float]:
    return [round(z.real, 15), round(z.imag, 15)]


# envelope


def envelope(kind: str, config: Mapping[str, Any], result: Mapping[str, Any], approx: Mapping | None = None) -> dict:
    if kind not in REPORT_KINDS:
        raise ReportError(f"unknown report kind {kind!r}")
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "package_version": __version__,
        "config": dict(config),
        "result": dict(result),
    }
    if approx is not None:
        out["approx"] = {"note": APPROX_NOTE, **approx}
    return out


def emit(report: Mapping) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# schema

_INT_LIST = {"type": "array", "items": {"type": "integer"}}


def _obj(props: dict, required: list[str] | None = None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


def _defs() -> dict:
    ref = lambda name: {"$ref": f"#/$defs/{name}"}  # noqa: E731
    cyclo = _obj(
        {
            "m": {"type": "integer", "minimum": 1},
            "coeffs": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "integer"}, {"type": "integer", "minimum": 1}],
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        }
    )
    poly = _obj(
        {
            "nvars": {"type": "integer", "minimum": 1},
            "terms": {"type": "array", "items": _obj({"exps": _INT_LIST, "coeff": ref("cyclonum")})},
        }
    )
    spec = _obj(
        {
            "d": {"enum": [3, 4, 6]},
            "n": {"type": "integer", "minimum": 2, "multipleOf": 2},
            "c": {"type": "array", "items": ref("cyclonum"), "minItems": 2},
            "c_lambda": {"oneOf": [ref("cyclonum"), {"type": "null"}]},
        }
    )
    period_record = _obj({"beta_prime": _INT_LIST, "value": ref("cyclonum")})
    gamma_value = _obj(
        {"coeff": ref("cyclonum"), "gamma": _INT_LIST, "pi_power": {"type": "integer"}}
    )
    nullable_int = {"type": ["integer", "null"]}
    results = {
        "spec": ref("spec"),
        "certificate": _obj(
            {
                "spec": ref("spec"),
                "success": {"type": "boolean"},
                "checks": {"type": "integer"},
                "expected_checks": {"type": "integer"},
                "rational_periods": {"type": "integer"},
                "true_linear": {"type": "boolean"},
                "galois_invariant": {"type": "boolean"},
                "periods": {"type": "array", "items": period_record},
                "failure": {"oneOf": [period_record, {"type": "null"}]},
            }
        ),
        "tangent": _obj(
            {
                "spec": ref("spec"),
                "certified": {"type": "boolean"},
                "degree": {"type": "integer"},
                "colon_dim": {"type": "integer"},
                "codim": {"type": "integer"},
                "expected_codim": nullable_int,
                "hilbert_function": {"oneOf": [_INT_LIST, {"type": "null"}]},
                "idealfake": {
                    "oneOf": [
                        {"type": "array", "items": _obj({"degree": {"type": "integer"}, "equal": {"type": "boolean"}})},
                        {"type": "null"},
                    ]
                },
            }
        ),
        "qform": _obj(
            {
                "spec": ref("spec"),
                "mode": {"enum": ["single", "witness"]},
                "pair": nullable_int,
                "D": {"oneOf": [ref("poly"), {"type": "null"}]},
                "raw": {"oneOf": [ref("poly"), {"type": "null"}]},
                "class": {"type": "array", "items": ref("cyclonum")},
                "complement": {"type": "array", "items": _INT_LIST},
                "vanishes": {"type": "boolean"},
                "closed_form_matches": {"type": ["boolean", "null"]},
                "candidates_tried": nullable_int,
                "message": {"type": ["string", "null"]},
            }
        ),
        "hodge-numbers": _obj(
            {
                "d": {"type": "integer"},
                "n": {"type": "integer"},
                "numbers": {
                    "type": "array",
                    "items": _obj({"p": {"type": "integer"}, "q": {"type": "integer"}, "h": {"type": "integer"}}),
                },
            }
        ),
        "picmax": _obj(
            {
                "n": {"type": "integer"},
                "cases": {
                    "type": "array",
                    "items": _obj(
                        {"d": {"type": "integer"}, "phi": {"type": "integer"}, "maximal": {"type": "boolean"}}
                    ),
                },
            }
        ),
        "lemma-check": _obj(
            {
                "max_d": {"type": "integer"},
                "identity_max_d": {"type": "integer"},
                "exceptional": _INT_LIST,
                "identity_failures": _INT_LIST,
                "witnesses": {
                    "type": "array",
                    "items": _obj(
                        {
                            "d": {"type": "integer"},
                            "q": {"type": "integer"},
                            "k": {"type": "integer"},
                            "t": {"type": "integer"},
                            "c": ref("cyclonum"),
                            "failing_pairs": {"type": "array", "items": _INT_LIST},
                        }
                    ),
                },
            }
        ),
        "periods": _obj(
            {
                "d": {"type": "integer"},
                "n": {"type": "integer"},
                "source": {"enum": ["monomial", "spec"]},
                "beta": {"oneOf": [_INT_LIST, {"type": "null"}]},
                "spec": {"oneOf": [ref("spec"), {"type": "null"}]},
                "records": {
                    "type": "array",
                    "items": _obj(
                        {"beta_prime": _INT_LIST, "value": {"oneOf": [ref("cyclonum"), gamma_value]}}
                    ),
                },
            }
        ),
    }
    defs = {"cyclonum": cyclo, "poly": poly, "spec": spec}
    defs.update({f"result_{k.replace('-', '_')}": v for k, v in results.items()})
    return defs


def report_schema() -> dict:
    """JSON Schema (draft 2020-12) covering every report kind."""
    defs = _defs()
    variants = []
    for kind in REPORT_KINDS:
        variants.append(
            {
                "properties": {
                    "kind": {"const": kind},
                    "result": {"$ref": f"#/$defs/result_{kind.replace('-', '_')}"},
                }
            }
        )
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": f"fermat-hodge/report/{SCHEMA_VERSION}",
        "title": "fermat-hodge report",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "kind": {"enum": list(REPORT_KINDS)},
            "package_version": {"type": "string"},
            "config": {"type": "object"},
            "result": {"type": "object"},
            "approx": {
                "type": "object",
                "properties": {"note": {"const": APPROX_NOTE}},
                "required": ["note"],
            },
        },
        "required": ["schema_version", "kind", "package_version", "config", "result"],
        "additionalProperties": False,
        "oneOf": variants,
        "$defs": defs,
    }


def validate_report(report: Mapping) -> None:
    import jsonschema

    jsonschema.Draft202012Validator(report_schema()).validate(report)
