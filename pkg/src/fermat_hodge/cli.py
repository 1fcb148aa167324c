"""Command-line front end. Every subcommand builds a RunConfig and hands it to run()."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Callable

from . import characters as ch
from .candidate import PRESETS, FakeCycleSpec, preset
from .fake_cycles import (
    certify_hodge,
    cocycle_phi,
    galois_invariance,
    is_true_linear,
    no_fake_cycles_witness,
    solve_c_lambda,
)
from .periods import normalized_period, period_omega_beta, vanishing_cycle_indices
from .polyring import monomials
from .report import (
    ReportError,
    complex_to_json,
    cyclo_to_json,
    emit,
    envelope,
    poly_to_json,
    report_schema,
    spec_from_json,
    spec_to_json,
)

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "text")
C_SOURCES = ("inline", "preset", "file")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    n: int | None = None
    c_source: str | None = None
    c_value: str | None = None
    output_format: str = "json"
    output_path: str | None = None
    jobs: int = 1  # parallelism hint; accepted and recorded, work runs serially
    approx: bool = False
    options: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config fields: {sorted(unknown)}")
        if "command" not in data:
            raise UsageError("config needs a 'command' field")
        return cls(**data)


@dataclass
class Outcome:
    status: int
    report: dict
    rows: list[dict] | None = None
    text: list[str] = field(default_factory=list)


# spec resolution


def load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def resolve_spec(cfg: RunConfig) -> FakeCycleSpec:
    from .parse import ParseError, parse_scalar

    try:
        if cfg.c_source == "preset":
            spec = preset(cfg.c_value)
        elif cfg.c_source == "file":
            spec = spec_from_json(load_json(cfg.c_value))
        elif cfg.c_source == "inline":
            if cfg.d is None or cfg.n is None:
                raise UsageError("--c needs --d and --n")
            m = 2 * cfg.d
            c = tuple(parse_scalar(s, m) for s in cfg.c_value.split(","))
            spec = FakeCycleSpec(cfg.d, cfg.n, c)
        else:
            raise UsageError("give a c-vector with --preset, --c or --spec")
        cl = cfg.options.get("c_lambda")
        if cl is not None:
            spec = spec.with_c_lambda(parse_scalar(cl, spec.conductor))
    except (KeyError, ValueError, ParseError, ReportError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    for name in ("d", "n"):
        given = getattr(cfg, name)
        if given is not None and given != getattr(spec, name):
            raise UsageError(f"--{name} {given} disagrees with the loaded candidate ({name}={getattr(spec, name)})")
    return spec


def ensure_c_lambda(spec: FakeCycleSpec) -> FakeCycleSpec:
    return spec if spec.c_lambda is not None else spec.with_c_lambda(solve_c_lambda(cocycle_phi(spec)))


def _approx_c(spec: FakeCycleSpec) -> dict:
    out = {"c": [complex_to_json(ci.approx()) for ci in spec.c]}
    if spec.c_lambda is not None:
        out["c_lambda"] = complex_to_json(spec.c_lambda.approx())
    return out


def _int_list(text: str | list, what: str) -> list[int]:
    if isinstance(text, list):
        return [int(x) for x in text]
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _require_dn(cfg: RunConfig) -> ch.FermatContext:
    if cfg.d is None or cfg.n is None:
        raise UsageError(f"{cfg.command} needs --d and --n")
    try:
        return ch.FermatContext(cfg.n, cfg.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# handlers


def cmd_hodge_numbers(cfg: RunConfig) -> Outcome:
    ctx = _require_dn(cfg)
    numbers = [{"p": p, "q": ctx.n - p, "h": ch.hodge_number(ctx, p, ctx.n - p)} for p in range(ctx.n + 1)]
    result = {"d": ctx.d, "n": ctx.n, "numbers": numbers}
    text = [f"h^{{{r['p']},{r['q']}}}_prim = {r['h']}" for r in numbers]
    return Outcome(EXIT_OK, envelope("hodge-numbers", asdict(cfg), result), numbers, text)


def cmd_picmax(cfg: RunConfig) -> Outcome:
    n = 2 if cfg.n is None else cfg.n
    degrees = _int_list(cfg.options.get("degrees", "3,4,5,6,7,8,9,10"), "--degrees")
    cases = []
    status = EXIT_OK
    for d in degrees:
        try:
            maximal = ch.picmax_check(ch.FermatContext(n, d))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        except AssertionError:
            status = EXIT_MATH
            maximal = False
        cases.append({"d": d, "phi": ch.euler_phi(d), "maximal": maximal})
    text = [f"d={c['d']}: phi={c['phi']} maximal Picard rank {c['maximal']}" for c in cases]
    return Outcome(status, envelope("picmax", asdict(cfg), {"n": n, "cases": cases}), cases, text)


def cmd_lemma_check(cfg: RunConfig) -> Outcome:
    max_d = int(cfg.options.get("max_d", 10000))
    id_max = int(cfg.options.get("identity_max_d", 100))
    witness_degrees = _int_list(cfg.options.get("witness_degrees", "5,7,8,9,10"), "--witness-degrees")
    if max_d < 5 or id_max < 5:
        raise UsageError("ranges start at d=5")
    status = EXIT_OK
    exceptional = []
    for d in range(5, max_d + 1):
        if d == 6:
            continue
        try:
            if ch.min_nondividing_prime(d)[1] == "exceptional":
                exceptional.append(d)
        except ArithmeticError:
            status = EXIT_MATH
    failures = []
    for d in range(5, id_max + 1):
        if d == 6:
            continue
        try:
            ok = ch.villasmall_identity(d)
        except ArithmeticError:
            ok = False
        if not ok:
            failures.append(d)
    witnesses = []
    for d in witness_degrees:
        try:
            w = no_fake_cycles_witness(d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        except ArithmeticError:
            status = EXIT_MATH
            continue
        witnesses.append(
            {"d": w.d, "q": w.q, "k": w.k, "t": w.t, "c": cyclo_to_json(w.c), "failing_pairs": [list(p) for p in w.failing]}
        )
    if failures:
        status = EXIT_MATH
    result = {
        "max_d": max_d,
        "identity_max_d": id_max,
        "exceptional": exceptional,
        "identity_failures": failures,
        "witnesses": witnesses,
    }
    text = [
        f"exceptional d in 5..{max_d}: {exceptional}",
        f"residue identity failures for d <= {id_max}: {failures or 'none'}",
    ] + [f"d={w['d']}: q={w['q']} k={w['k']} t={w['t']} failing pairs {w['failing_pairs']}" for w in witnesses]
    return Outcome(status, envelope("lemma-check", asdict(cfg), result), None, text)


def cmd_periods(cfg: RunConfig) -> Outcome:
    beta_opt = cfg.options.get("beta")
    if beta_opt is None:
        spec = ensure_c_lambda(resolve_spec(cfg))
        ctx = spec.ctx
    else:
        spec = None
        ctx = _require_dn(cfg)
        beta = _int_list(beta_opt, "--beta")
    bps = cfg.options.get("beta_prime")
    targets = [tuple(_int_list(bps, "--beta-prime"))] if bps is not None else vanishing_cycle_indices(ctx)
    records = []
    approx = []
    for bp in targets:
        try:
            if spec is not None:
                val = normalized_period(spec, bp)
                value = cyclo_to_json(val)
                approx.append(complex_to_json(val.approx()))
            else:
                pv = period_omega_beta(beta, bp, ctx).divide_by_two_pi_i(ctx.n // 2)
                if pv.is_pure():
                    value = cyclo_to_json(pv.coeff)
                    approx.append(complex_to_json(pv.coeff.approx()))
                else:
                    value = {"coeff": cyclo_to_json(pv.coeff), "gamma": list(pv.gamma_word), "pi_power": pv.pi_power}
                    approx.append(None)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        records.append({"beta_prime": list(bp), "value": value})
    result = {
        "d": ctx.d,
        "n": ctx.n,
        "source": "monomial" if spec is None else "spec",
        "beta": None if spec is not None else beta,
        "spec": None if spec is None else spec_to_json(spec),
        "records": records,
    }
    extra = {"values": approx} if cfg.approx else None
    rows = [{"beta_prime": " ".join(map(str, r["beta_prime"])), "value": json.dumps(r["value"], sort_keys=True)} for r in records]
    text = [f"{len(records)} period records"]
    return Outcome(EXIT_OK, envelope("periods", asdict(cfg), result, extra), rows, text)


def cmd_fake_cycle(cfg: RunConfig) -> Outcome:
    spec = resolve_spec(cfg)
    if cfg.options.get("solve"):
        spec = spec.with_c_lambda(solve_c_lambda(cocycle_phi(spec)))
    approx = _approx_c(spec) if cfg.approx else None
    if not cfg.options.get("certify"):
        text = [f"d={spec.d} n={spec.n} c={[str(c) for c in spec.c]} c_lambda={spec.c_lambda}"]
        return Outcome(EXIT_OK, envelope("spec", asdict(cfg), spec_to_json(spec), approx), None, text)
    if spec.c_lambda is None:
        raise UsageError("--certify needs c_lambda: pass --solve or --c-lambda")
    cert = certify_hodge(spec, stop_on_failure=False)
    expected = (spec.d - 1) ** (spec.n + 1)
    rational = sum(1 for _, v in cert.periods if v.is_rational())
    periods = [{"beta_prime": list(bp), "value": cyclo_to_json(v)} for bp, v in cert.periods]
    result = {
        "spec": spec_to_json(spec),
        "success": cert.success,
        "checks": cert.checks,
        "expected_checks": expected,
        "rational_periods": rational,
        "true_linear": is_true_linear(spec),
        "galois_invariant": galois_invariance(spec),
        "periods": periods,
        "failure": None if cert.failure is None else {"beta_prime": list(cert.failure[0]), "value": cyclo_to_json(cert.failure[1])},
    }
    if approx is not None:
        approx["periods"] = [complex_to_json(v.approx()) for _, v in cert.periods]
    rows = []
    for bp, v in cert.periods:
        q = v.rational_value() if v.is_rational() else None
        rows.append(
            {
                "beta_prime": " ".join(map(str, bp)),
                "rational": q is not None,
                "value": str(q) if q is not None else str(v),
            }
        )
    text = [
        f"c_lambda = {spec.c_lambda}",
        f"{rational}/{expected} normalized periods rational",
        "certified Hodge class" if cert.success else f"not a Hodge class: period at {cert.failure[0]} is {cert.failure[1]}",
    ]
    status = EXIT_OK if cert.success and cert.checks == expected else EXIT_MATH
    return Outcome(status, envelope("certificate", asdict(cfg), result, approx), rows, text)


def cmd_tangent(cfg: RunConfig) -> Outcome:
    from .tangent import colon_dim, expected_codim, hilbert_function, idealfake_compare
    from .polyring import build_P_lambda

    spec = ensure_c_lambda(resolve_spec(cfg))
    ctx = spec.ctx
    e = int(cfg.options.get("degree") or ctx.d)
    if not 0 <= e <= ctx.socle + 1:
        raise UsageError(f"--degree must lie in 0..{ctx.socle + 1}")
    certified = certify_hodge(spec).success
    P = build_P_lambda(spec)
    cdim = colon_dim(P, e, ctx)
    codim = len(monomials(ctx.nvars, e)) - cdim
    expected = expected_codim(ctx) if e == ctx.d else None
    hf = hilbert_function(P, ctx) if cfg.options.get("hilbert_function") else None
    ideal = None
    if cfg.options.get("compare_idealfake"):
        ideal = [{"degree": k, "equal": idealfake_compare(spec, k)} for k in range(1, ctx.d + 1)]
    result = {
        "spec": spec_to_json(spec),
        "certified": certified,
        "degree": e,
        "colon_dim": cdim,
        "codim": codim,
        "expected_codim": expected,
        "hilbert_function": hf,
        "idealfake": ideal,
    }
    ok = certified and (expected is None or codim == expected) and all(x["equal"] for x in ideal or [])
    text = [f"degree {e}: dim (J^F : P)_e = {cdim}, codim = {codim}" + (f" (expected {expected})" if expected is not None else "")]
    if hf is not None:
        text.append(f"Hilbert function: {hf}")
    if ideal is not None:
        text.append("generator ideal agrees in degrees " + ", ".join(str(x["degree"]) for x in ideal if x["equal"]))
    if not certified:
        text.append("spec is not a certified Hodge class")
    rows = [{"degree": k, "dim": v} for k, v in enumerate(hf)] if hf is not None else None
    return Outcome(EXIT_OK if ok else EXIT_MATH, envelope("tangent", asdict(cfg), result), rows, text)


def cmd_qform(cfg: RunConfig) -> Outcome:
    from .parse import ParseError, parse_poly
    from .qform import WitnessNotFound, nonreduced_witness, qr, qr_closed_form, qr_raw, tangent_vector

    spec = ensure_c_lambda(resolve_spec(cfg))
    ctx = spec.ctx
    if not certify_hodge(spec).success:
        raise UsageError("qform needs a certified Hodge class; check c_lambda")
    base = {"spec": spec_to_json(spec), "closed_form_matches": None, "candidates_tried": None, "message": None}
    if cfg.options.get("witness"):
        try:
            w = nonreduced_witness(spec, cfg.options.get("limit"))
        except WitnessNotFound as exc:
            result = {**base, "mode": "witness", "pair": None, "D": None, "raw": None, "class": [],
                      "complement": [], "vanishes": True, "message": str(exc)}
            return Outcome(EXIT_MATH, envelope("qform", asdict(cfg), result), None, [f"no witness: {exc}"])
        pair, D, res, tried = w.pair, w.D, w.result, w.tried
        mode = "witness"
    else:
        if cfg.options.get("pair") is None or cfg.options.get("D") is None:
            raise UsageError("qform needs --witness or both --pair and --D")
        pair = int(cfg.options["pair"])
        if not 1 <= pair <= ctx.half:
            raise UsageError(f"--pair must lie in 1..{ctx.half}")
        try:
            D = parse_poly(cfg.options["D"], ctx.nvars, spec.conductor)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
        if D.is_zero() or D.degrees() != {ctx.d - 1}:
            raise UsageError(f"--D must be homogeneous of degree {ctx.d - 1}")
        res = qr(tangent_vector(spec, pair, D), tangent_vector(spec, pair, D), spec, "paired")
        tried = None
        mode = "single"
    G = tangent_vector(spec, pair, D)
    matches = qr_raw(G, G, spec, "paired") == qr_closed_form(pair, D, spec)
    result = {
        **base,
        "mode": mode,
        "pair": pair,
        "D": poly_to_json(D),
        "raw": poly_to_json(res.raw),
        "class": [cyclo_to_json(c) for c in res.coordinates],
        "complement": [list(m) for m in res.complement],
        "vanishes": res.vanishes,
        "closed_form_matches": matches,
        "candidates_tried": tried,
    }
    approx = {"class": [complex_to_json(c.approx()) for c in res.coordinates]} if cfg.approx else None
    text = [
        f"pair {pair}, D = {D}",
        "class vanishes" if res.vanishes else "class is nonzero: " + ", ".join(str(c) for c in res.coordinates if c),
        f"raw form equals the closed form: {matches}",
    ]
    status = EXIT_OK if matches and (mode == "single" or not res.vanishes) else EXIT_MATH
    return Outcome(status, envelope("qform", asdict(cfg), result, approx), None, text)


def cmd_schema(cfg: RunConfig) -> Outcome:
    schema = report_schema()
    return Outcome(EXIT_OK, schema, None, [json.dumps(schema, sort_keys=True)])


HANDLERS: dict[str, Callable[[RunConfig], Outcome]] = {
    "hodge-numbers": cmd_hodge_numbers,
    "picmax": cmd_picmax,
    "lemma-check": cmd_lemma_check,
    "periods": cmd_periods,
    "fake-cycle": cmd_fake_cycle,
    "tangent": cmd_tangent,
    "qform": cmd_qform,
    "schema": cmd_schema,
}


# output


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return emit(outcome.report)
    if fmt == "text":
        return "\n".join(outcome.text) + "\n"
    rows = outcome.rows
    if rows is None:
        raise UsageError("this command has no tabular output; use --emit json or text")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, dict | None]:
    """Dispatch the command and write its report; returns (exit status, report)."""
    try:
        handler = HANDLERS.get(cfg.command)
        if handler is None:
            raise UsageError(f"unknown command {cfg.command!r}")
        if cfg.output_format not in FORMATS:
            raise UsageError(f"output format must be one of {FORMATS}")
        if cfg.c_source is not None and cfg.c_source not in C_SOURCES:
            raise UsageError(f"c_source must be one of {C_SOURCES}")
        outcome = handler(cfg)
        out = render(outcome, cfg.output_format)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    if cfg.output_path:
        path = Path(cfg.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(out)
    else:
        sys.stdout.write(out)
    return outcome.status, outcome.report


# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--emit", choices=FORMATS, default="json", help="output format")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--approx", action="store_true", help="add non-authoritative floating-point values")
    p.add_argument("--jobs", type=int, default=1, help="parallelism hint (recorded only)")


def _spec_args(p: argparse.ArgumentParser, need_dn: bool = False) -> None:
    p.add_argument("--d", type=int, required=need_dn)
    p.add_argument("--n", type=int, required=need_dn)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--c", help="comma-separated constants c_0, c_2, ..., c_n as expressions in z = zeta_{2d}")
    src.add_argument("--spec", help="JSON file holding a spec or any report embedding one")
    p.add_argument("--c-lambda", help="c_lambda as an expression in z = zeta_{2d}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermat-hodge", description=__doc__)
    parser.add_argument("--config", help="run a RunConfig JSON file instead of a subcommand")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("hodge-numbers", help="primitive Hodge numbers of X^n_d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("picmax", help="maximal Picard rank test over a list of degrees")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--degrees", default="3,4,5,6,7,8,9,10")
    _common(p)

    p = sub.add_parser("lemma-check", help="prime classification and the residue identity")
    p.add_argument("--max-d", type=int, default=10000)
    p.add_argument("--identity-max-d", type=int, default=100)
    p.add_argument("--witness-degrees", default="5,7,8,9,10")
    _common(p)

    p = sub.add_parser("periods", help="exact periods of a monomial form or of a candidate class")
    _spec_args(p)
    p.add_argument("--beta", help="exponent vector of the monomial, comma-separated")
    p.add_argument("--beta-prime", help="a single vanishing cycle index (default: all)")
    _common(p)

    p = sub.add_parser("fake-cycle", help="build, solve and certify a candidate fake linear cycle")
    _spec_args(p)
    p.add_argument("--solve", action="store_true", help="compute c_lambda by Hilbert 90")
    p.add_argument("--certify", action="store_true", help="check every normalized period for rationality")
    _common(p)

    p = sub.add_parser("tangent", help="colon ideal dimensions and tangent codimension")
    _spec_args(p)
    p.add_argument("--degree", type=int)
    p.add_argument("--compare-idealfake", action="store_true")
    p.add_argument("--hilbert-function", action="store_true")
    _common(p)

    p = sub.add_parser("qform", help="quadratic fundamental form and the non-reducedness witness")
    _spec_args(p)
    p.add_argument("--pair", type=int)
    p.add_argument("--D", dest="D", help="degree d-1 polynomial in x0, x1, ...")
    p.add_argument("--witness", action="store_true", help="search for a nonzero class")
    p.add_argument("--limit", type=int, help="give up after this many candidates")
    _common(p)

    p = sub.add_parser("schema", help="print the JSON schema of all reports")
    _common(p)
    return parser


_OPTION_KEYS = {
    "picmax": ("degrees",),
    "lemma-check": ("max_d", "identity_max_d", "witness_degrees"),
    "periods": ("beta", "beta_prime", "c_lambda"),
    "fake-cycle": ("solve", "certify", "c_lambda"),
    "tangent": ("degree", "compare_idealfake", "hilbert_function", "c_lambda"),
    "qform": ("pair", "D", "witness", "limit", "c_lambda"),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ns = vars(args)
    source, value = None, None
    for name, label in (("preset", "preset"), ("c", "inline"), ("spec", "file")):
        if ns.get(name) is not None:
            source, value = label, ns[name]
    options = {}
    for key in _OPTION_KEYS.get(args.command, ()):
        v = ns.get(key)
        if v is not None and v is not False:
            options[key] = v
    return RunConfig(
        command=args.command,
        d=ns.get("d"),
        n=ns.get("n"),
        c_source=source,
        c_value=value,
        output_format=args.emit,
        output_path=args.out,
        jobs=args.jobs,
        approx=args.approx,
        options=options,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = RunConfig.from_dict(load_json(args.config))
        except (UsageError, TypeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    elif args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    else:
        cfg = config_from_args(args)
    status, _ = run(cfg)
    return status


if __name__ == "__main__":
    sys.exit(main())
