"""``vk``: command-line access to the diagram engine.

Every command prints one JSON object (``batch`` prints one per input line)::

    {"command": [...], "input": "<canonical code>", "status": "...",
     "result": {...}, "budget": {...}, "timing": {"seconds": ...}}

Exit status is 0 on success, 2 when a search was inconclusive or ran out of
budget, and 1 on bad input, a failed replay or a theorem mismatch.  Search
limits come from ``--budget key=value,...`` or the ``VK_BUDGET`` environment
variable (same syntax, or a JSON object).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from typing import Sequence

from .families import PARAMETERS, FamilySpec, generate
from .gauss import GaussCodeError, GaussDiagram, parse_gauss_code, serialize, to_json
from .invariants import (
    affine_index_polynomial,
    component_writhe_vectors,
    ell_invariant,
    indices,
    linking_number,
    lower_bound_knot,
    lower_bound_link,
    minimal_crossing_check,
    span_total,
    writhe_vector,
)
from .moves import Budget, StaleMoveError, trace_from_json
from .unknotting import (
    SEARCH_BUDGET,
    TheoremMismatch,
    UnknottingCertificate,
    UnknottingPlan,
    certify,
    search_min,
    verify_theorem,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


def parse_budget(text: str | None, base: Budget | None = None) -> Budget:
    """``"frontier_cap=500,r3_cap=10"`` or a JSON object, applied over ``base``."""
    base = base or Budget()
    if not text:
        return base
    text = text.strip()
    if text.startswith("{"):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"budget is not valid JSON: {exc}") from exc
    else:
        values = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, val = part.partition("=")
            if not sep:
                raise CliError(f"budget entry {part!r} is not key=value")
            values[key.strip()] = val.strip()
    unknown = set(values) - set(Budget.__dataclass_fields__)
    if unknown:
        raise CliError(f"unknown budget keys: {', '.join(sorted(unknown))}")
    merged = asdict(base)
    try:
        merged.update({k: int(v) for k, v in values.items()})
    except (TypeError, ValueError) as exc:
        raise CliError(f"budget values must be integers: {exc}") from exc
    return Budget(**merged)


def _budget(args, base: Budget | None = None) -> Budget:
    b = parse_budget(os.environ.get("VK_BUDGET"), base)
    return parse_budget(getattr(args, "budget", None), b)


def _diagram(code: str) -> GaussDiagram:
    try:
        return parse_gauss_code(code)
    except GaussCodeError as exc:
        raise CliError(str(exc), position=exc.position) from exc


def _spec(name: str, args) -> FamilySpec:
    values = {k: getattr(args, k) for k in PARAMETERS.get(name, ()) if getattr(args, k, None) is not None}
    try:
        return FamilySpec(name, values)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


# ---------------------------------------------------------------------------
# payloads
# ---------------------------------------------------------------------------


def invariants_payload(d: GaussDiagram) -> dict:
    out: dict = {"crossings": d.num_chords, "components": d.num_components}
    if d.num_components == 1:
        canon = d.canonical
        w = writhe_vector(canon)
        mc = minimal_crossing_check(canon)
        out.update(
            {
                "indices": {str(c): k for c, k in sorted(indices(canon).items())},
                "writhe": w.to_json(),
                "affine_index_polynomial": str(affine_index_polynomial(canon)),
                "lower_bound": lower_bound_knot(canon).to_json(),
                "minimal_crossing": {"minimal": mc.minimal, "crossing_number": mc.crossing_number},
            }
        )
        return out
    canon = d.canonical
    span = span_total(canon)
    ell = ell_invariant(canon)
    n = canon.num_components
    out.update(
        {
            "component_writhe": [w.to_json() for w in component_writhe_vectors(canon)],
            "span": {"total": span.total, "pairs": {f"{i},{j}": v for (i, j), v in span.per_pair.items()}},
            "ell": {"total": ell.total, "pairs": {f"{i},{j}": v for (i, j), v in ell.per_pair.items()}},
            "linking": {f"{i},{j}": linking_number(canon, i, j) for i in range(n) for j in range(n) if i != j},
            "lower_bound": lower_bound_link(canon).to_json(),
        }
    )
    return out


def _report(argv: Sequence[str], code: str | None, status: str, result: dict, budget: Budget | None,
            started: float, timing: bool) -> dict:
    rep = {"command": list(argv), "input": code, "status": status, "result": result,
           "budget": asdict(budget) if budget else None}
    if timing:
        rep["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return rep


# ---------------------------------------------------------------------------
# commands; each returns (status, exit code, canonical input, result, budget)
# ---------------------------------------------------------------------------


def cmd_parse(args):
    d = _diagram(args.code)
    code = serialize(d)
    return "ok", EXIT_OK, code, {"canonical": code, "json": to_json(d), "crossings": d.num_chords,
                                 "components": d.num_components}, None


def cmd_invariants(args):
    d = _diagram(args.code)
    return "ok", EXIT_OK, serialize(d), invariants_payload(d), None


def cmd_family(args):
    spec = _spec(args.name, args)
    d, prof = generate(spec)
    code = serialize(d, canonical=False)
    return "ok", EXIT_OK, code, {"code": code, "profile": prof.to_json()}, None


def cmd_search(args):
    d = _diagram(args.code)
    budget = _budget(args, SEARCH_BUDGET)
    rep = search_min(d, budget, max_n=args.max_n, max_m=args.max_m, cap=args.cap, threads=args.threads)
    payload = rep.to_json()
    if rep.cap_exceeded:
        return "budget_exceeded", EXIT_INCONCLUSIVE, serialize(d), payload, budget
    if rep.certificate is None:
        return "inconclusive", EXIT_INCONCLUSIVE, serialize(d), payload, budget
    status = "ok" if rep.conclusive else "inconclusive"
    return status, (EXIT_OK if rep.conclusive else EXIT_INCONCLUSIVE), serialize(d), payload, budget


def _ids(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise CliError(f"chord list {text!r} is not comma-separated integers") from exc


def cmd_certify(args):
    d = _diagram(args.code)
    budget = _budget(args)
    try:
        plan = UnknottingPlan(_ids(args.virtualize), _ids(args.change))
        plan.check(d)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    cert = certify(d, plan, budget)
    code = serialize(d, canonical=False)
    if cert is None:
        return "inconclusive", EXIT_INCONCLUSIVE, code, {"plan": plan.to_json(), "certificate": None}, budget
    return "ok", EXIT_OK, code, {"plan": plan.to_json(), "cost": cert.cost.to_json(),
                                 "certificate": cert.to_json()}, budget


def cmd_verify(args):
    spec = _spec(args.name, args)
    budget = _budget(args)
    try:
        report = verify_theorem(spec, budget, strict=True)
    except TheoremMismatch as exc:
        return "mismatch", EXIT_ERROR, None, exc.report.to_json(), budget
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    return "pass", EXIT_OK, None, report.to_json(), budget


def cmd_replay(args):
    try:
        with open(args.file, encoding="utf-8") if args.file != "-" else sys.stdin as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {args.file}: {exc}") from exc
    try:
        if isinstance(obj, dict) and "certificate" in obj and isinstance(obj["certificate"], dict):
            obj = obj["certificate"]
        if isinstance(obj, dict) and "result" in obj and isinstance(obj["result"], dict):
            obj = obj["result"].get("certificate") or obj["result"]
        if "plan" in obj:
            cert = UnknottingCertificate.from_json(obj)
            ok = cert.verify()
            kind = "certificate"
        else:
            trace = trace_from_json(obj)
            ok = trace.replays()
            kind = "trace"
    except (KeyError, TypeError, ValueError, StaleMoveError, GaussCodeError) as exc:
        return "invalid", EXIT_ERROR, None, {"valid": False, "reason": str(exc)}, None
    return ("valid" if ok else "invalid"), (EXIT_OK if ok else EXIT_ERROR), None, {"kind": kind, "valid": ok}, None


def cmd_batch(args):
    """JSON lines: each line a Gauss code or ``{"code": ..., "op": "invariants"|"search"}``."""
    fh = sys.stdin if args.file == "-" else open(args.file, encoding="utf-8")
    worst = EXIT_OK
    lines_out = []
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                item = json.loads(line) if line.lstrip().startswith("{") else {"code": line.strip().strip('"')}
                op = item.get("op", "invariants")
                d = _diagram(item["code"])
                if op == "invariants":
                    res, status, code = invariants_payload(d), "ok", EXIT_OK
                elif op == "search":
                    rep = search_min(d, _budget(args, SEARCH_BUDGET), threads=args.threads)
                    res = rep.to_json()
                    status = "ok" if rep.conclusive else "inconclusive"
                    code = EXIT_OK if rep.conclusive else EXIT_INCONCLUSIVE
                else:
                    raise CliError(f"unknown op {op!r}")
                out = {"line": lineno, "input": serialize(d), "status": status, "result": res}
            except (CliError, json.JSONDecodeError, KeyError) as exc:
                code = EXIT_ERROR
                out = {"line": lineno, "status": "error", "error": str(exc)}
            worst = max(worst, code, key=lambda c: {EXIT_OK: 0, EXIT_INCONCLUSIVE: 1, EXIT_ERROR: 2}[c])
            lines_out.append(out)
    return "batch", worst, None, {"lines": lines_out}, None


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_family_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("name", choices=sorted(PARAMETERS), help="family name")
    for key in ("k", "n", "m", "p", "q", "r", "t"):
        p.add_argument(f"--{key}", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vk", description="Gauss-diagram engine for virtual knots and links.")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for plan search")
    parser.add_argument("--no-timing", action="store_true", help="omit the timing field")
    parser.add_argument("--compact", action="store_true", help="print JSON on one line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate and canonicalize a Gauss code")
    p.add_argument("code")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("invariants", help="writhe vector, polynomial, span and bounds")
    p.add_argument("code")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("family", help="generate a family member and its expected profile")
    _add_family_params(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", help="dictionary-order search for the unknotting index")
    p.add_argument("code")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--cap", type=int, default=14, help="largest chord count to enumerate")
    p.add_argument("--budget")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("certify", help="certify a specific plan")
    p.add_argument("code")
    p.add_argument("--virtualize", default="")
    p.add_argument("--change", default="")
    p.add_argument("--budget")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-theorem", help="check a family's claimed unknotting index")
    _add_family_params(p)
    p.add_argument("--budget")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="replay a certificate or move trace JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("batch", help="JSON-lines batch over Gauss codes")
    p.add_argument("file", help="input file, or - for stdin")
    p.add_argument("--budget")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    dump = (lambda o: json.dumps(o, sort_keys=True)) if args.compact else (
        lambda o: json.dumps(o, indent=2, sort_keys=True))
    try:
        status, code, canon, result, budget = args.func(args)
    except CliError as exc:
        err = {"command": argv, "status": "error", "error": str(exc), **exc.details}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return EXIT_ERROR
    if args.command == "batch":
        for line in result["lines"]:
            print(json.dumps(line, sort_keys=True))
        return code
    print(dump(_report(argv, canon, status, result, budget, started, not args.no_timing)))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
