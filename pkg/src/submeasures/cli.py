"""Command-line front end: ``submeasures {eval,pathology,select,demo}``.

Exit codes: 0 success or verified, 1 a check or selector failed, 2 usage,
schema or cap errors, 3 a budgeted search gave up.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction

from .core import VectorSeq, evaluate, finset
from .demo import demo_ok, run_demo
from .errors import (
    BudgetExhausted,
    CapExceeded,
    CertificateError,
    PreconditionError,
    SelectorFailure,
    SubmeasureError,
    UniverseError,
)
from .extended import approx, as_ext, format_ext, format_plain
from .ideals import scheme_by_name
from .instances import INSTANCE_NAMES, diagonal_stream, named_instance, one_per_block
from .pathology import integer_pathology_criterion, pathology_degree
from .selectors import (
    bp_select,
    c0like_selector,
    property_A_selector,
    schreier_selector,
    small_norm_selector,
    tall_selector,
)
from .specfile import SpecError, build_spec, digest, load_spec_file
from .streams import SetStream

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
SELECTORS = ("small-norm", "property-a", "c0like", "schreier", "bp", "tall")
STREAMS = ("default", "naturals", "diagonal", "one-per-block")


class UsageError(SubmeasureError):
    pass


def parse_set(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        items = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--set expects comma-separated naturals, got {text!r}") from None
    if any(n < 0 for n in items):
        raise UsageError("--set takes naturals only")
    return finset(items)


def _budget(args) -> int | None:
    if args.budget is not None:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        return args.budget
    return None  # library default, which honours SUBM_BUDGET


def _load(args):
    if not args.spec:
        raise UsageError("--spec FILE is required")
    doc = load_spec_file(args.spec)
    return doc, build_spec(doc)


def _num(value, args) -> str | dict:
    if args.approx:
        return {"exact": format_ext(value), "approx": approx(value)}
    return format_ext(value)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> tuple[dict, int, list[str]]:
    doc, spec = _load(args)
    A = parse_set(args.set or "")
    value = evaluate(spec, A)
    results = {"set": sorted(A), "value": _num(value, args)}
    text = [format_plain(value) + (f"  (~{approx(value)})" if args.approx else "")]
    return {"input_digest": digest(doc), "results": results}, EXIT_OK, text


def cmd_pathology(args) -> tuple[dict, int, list[str]]:
    doc, spec = _load(args)
    universe = args.universe if args.universe is not None else spec.universe
    if universe is None:
        raise UsageError("--universe is required for a spec on all of N")
    max_size = args.max_size if args.max_size is not None else min(universe, 6)
    rep = pathology_degree(spec, universe, max_size)
    checks = []
    targets = [rep.witness_set] if rep.witness_set else []
    if args.set:
        targets.append(tuple(sorted(parse_set(args.set))))
    for A in targets:
        crit = integer_pathology_criterion(spec, A)
        checks.append({"set": list(A), **crit.to_json()})
    results = rep.to_json()
    if args.approx:
        results["degree_approx"] = approx(rep.degree)
    results["criterion"] = checks
    text = [
        f"degree: {format_ext(rep.degree)}" + (f"  (~{approx(rep.degree)})" if args.approx else ""),
        f"family: {rep.family}",
        f"witness set: {list(rep.witness_set)}",
        f"witness value: {format_ext(rep.witness_value)}",
        f"witness hull: {format_ext(rep.witness_hull)}",
        "witness measure: " + ", ".join(f"{k}:{format_ext(w)}" for k, w in rep.witness_measure.weights.items()),
    ]
    for c in checks:
        text.append(f"criterion on {c['set']}: {c['verdict']} ({c['reason']})")
    return {"input_digest": digest(doc), "results": results}, EXIT_OK, text


def _select_stream(args, instance, spec) -> SetStream:
    choice = args.stream
    scheme = scheme_by_name(args.scheme)
    if choice == "default":
        if instance is not None:
            return instance.stream()
        if getattr(spec, "length", None) is not None:
            return SetStream(range(spec.length), name="indices")
        return SetStream.naturals()
    if choice == "naturals":
        if getattr(spec, "length", None) is not None:
            return SetStream(range(spec.length), name="indices")
        return SetStream.naturals()
    if choice == "diagonal":
        return diagonal_stream(scheme)
    return one_per_block(scheme)


def cmd_select(args) -> tuple[dict, int, list[str]]:
    if args.selector is None:
        raise UsageError("--selector is required")
    if args.spec:
        doc = load_spec_file(args.spec)
        spec = build_spec(doc)
        instance = named_instance(doc["instance"], scheme_by_name(doc.get("scheme", "arith-v1"))) \
            if doc.get("kind") == "named" and "instance" in doc else None
        dig = digest(doc)
    elif args.instance:
        instance = named_instance(args.instance, scheme_by_name(args.scheme))
        spec = instance.spec
        dig = digest({"kind": "named", "instance": args.instance, "scheme": args.scheme})
    else:
        raise UsageError("give --spec FILE or --instance NAME")
    stream = _select_stream(args, instance, spec)
    L = args.length
    if L is None or L < 1:
        raise UsageError("--length must be a positive integer")
    budget = _budget(args)
    sel = args.selector
    extra = {}
    if sel in ("c0like", "schreier", "bp", "tall") and not isinstance(spec, VectorSeq):
        raise UsageError(f"selector {sel} needs a vector sequence spec")
    if sel == "small-norm":
        cert = small_norm_selector(stream, L, spec=spec, budget=budget)
    elif sel == "property-a":
        cert = property_A_selector(spec, stream, L, budget=budget)
    elif sel == "c0like":
        hint = instance.notes.get("witness_bound") if instance is not None else None
        cert = c0like_selector(spec, stream, L, budget=budget, witness_bound=hint)
    elif sel == "schreier":
        cert = schreier_selector(spec, args.p, stream, L, budget=budget)
    elif sel == "bp":
        alpha = as_ext(args.alpha)
        selection, cert = bp_select(spec, stream, alpha, L, budget=budget)
        extra["selection"] = selection.to_json()
    else:
        cert = tall_selector(spec, stream, L, budget=budget)
    code = EXIT_OK if cert.verified or cert.mode == "heuristic" else EXIT_FAIL
    results = {"certificate": cert.to_json(), **extra}
    if args.approx:
        results["bound_approx"] = approx(cert.bound)
    text = [
        f"selector: {cert.selector}" + (f" (route {cert.route})" if cert.route else ""),
        f"indices: {list(cert.indices)}",
        f"M: {format_ext(cert.bound)}" + (f"  (~{approx(cert.bound)})" if args.approx else ""),
        f"verified: {'yes' if cert.verified else 'no'}",
        f"mode: {cert.mode}",
        f"inequalities: {len(cert.evidence)}, failing: {len(cert.failures())}",
    ]
    for q in cert.failures():
        text.append(f"  FAILS {q.label}: {format_ext(q.lhs)} {q.op} {format_ext(q.rhs)}")
    text += [f"note: {n}" for n in cert.notes]
    return {"input_digest": dig, "results": results}, code, text


def cmd_demo(args) -> tuple[dict, int, list[str]]:
    phi0 = None
    dig = None
    if args.table:
        doc = load_spec_file(args.table)
        if not isinstance(doc, dict) or doc.get("kind") != "table":
            raise UsageError("--table expects a spec of kind 'table'")
        phi0 = build_spec(doc)
        dig = digest(doc)
    claims = run_demo(phi0)
    ok = demo_ok(claims)
    counts = {s: sum(c.status == s for c in claims) for s in ("PASS", "FAIL", "FLAGGED")}
    width = max(len(c.name) for c in claims)
    text = [f"{c.status:<7}  {c.name:<{width}}  claimed {c.claimed}  computed {c.computed}"
            + (f"  [{c.detail}]" if c.detail and c.status != "PASS" else "") for c in claims]
    text.append(f"{counts['PASS']} PASS, {counts['FAIL']} FAIL, {counts['FLAGGED']} FLAGGED")
    results = {"claims": [c.to_json() for c in claims], "counts": counts, "ok": ok}
    return {"input_digest": dig, "results": results}, EXIT_OK if ok else EXIT_FAIL, text


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="submeasures", description="Exact computations with submeasures on N.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable report")
    common.add_argument("--approx", action="store_true", help="add decimal approximations")
    common.add_argument("--budget", type=int, help="search budget (default: SUBM_BUDGET or 10000)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a spec on a finite set")
    p.add_argument("--spec", required=True)
    p.add_argument("--set", default="", help='comma-separated naturals, e.g. "0,1,2"')
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pathology", parents=[common], help="exact pathology degree over a finite family")
    p.add_argument("--spec", required=True)
    p.add_argument("--universe", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--set", help="also run the integer criterion on this set")
    p.set_defaults(func=cmd_pathology)

    p = sub.add_parser("select", parents=[common], help="run a selector and print its certificate")
    p.add_argument("--selector", choices=SELECTORS, required=True)
    p.add_argument("--spec")
    p.add_argument("--instance", choices=INSTANCE_NAMES)
    p.add_argument("--scheme", default="arith-v1", choices=("arith-v1", "segments-v1"))
    p.add_argument("--stream", default="default", choices=STREAMS)
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--p", type=int, default=0, help="threshold for the Schreier selector")
    p.add_argument("--alpha", default="1", help="lower norm bound for block selection")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("demo", parents=[common], help="check every example claim")
    p.add_argument("--table", help="replace the built-in phi0 table by this table spec")
    p.set_defaults(func=cmd_demo)
    return parser


def _emit(report: dict, text: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    echo = ["submeasures", *argv]
    try:
        payload, code, text = args.func(args)
    except (UsageError, SpecError, CapExceeded, PreconditionError, UniverseError) as exc:
        payload, code, text = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_USAGE, []
    except (SelectorFailure, CertificateError) as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, SelectorFailure) and exc.report:
            err["report"] = exc.report
        payload, code, text = {"error": err}, EXIT_FAIL, []
    except BudgetExhausted as exc:
        err = {"type": "BudgetExhausted", "message": str(exc)}
        if exc.progress is not None:
            err["progress"] = _jsonable(exc.progress)
        payload, code, text = {"error": err}, EXIT_BUDGET, []
    report = {"command": echo, "exit_code": code, **payload}
    if "error" in payload:
        if args.json:
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print(f"error ({payload['error']['type']}): {payload['error']['message']}", file=sys.stderr)
            for k, v in payload["error"].get("report", {}).items():
                print(f"  {k}: {v}", file=sys.stderr)
        return code
    _emit(report, text, args.json)
    return code


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_ext(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
