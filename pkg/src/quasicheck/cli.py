"""Command-line front door.

Exit codes: 0 success, 1 semantic failure (identity fails, theorem
violation, witness found), 2 input or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .collapse import collapse_check, generated_partition, left_translations, right_translations
from .identities import (
    IdentitySyntaxError,
    builtin_n1,
    format_identity,
    holds,
    parse_identity,
)
from .kunen import KunenReport, exhaustive_scan, verify_kunen
from .magma import Quasigroup, check_latin, j_map
from .search import SearchSpec, count_models, enumerate_tables, find_witness
from .tableio import (
    TableFormatError,
    format_table,
    format_table_stream,
    parse_table_stream,
    read_table,
)

CACHE_ENV = "QUASICHECK_CACHE_DIR"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quasicheck",
        description="Finite-model engine for quasigroup identities.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("check", help="decide an identity over a table")
    c.add_argument("--table", required=True)
    c.add_argument("--identity", required=True)
    c.add_argument("--format", choices=["table", "structured"], default="table")

    k = sub.add_parser("kunen", help="run the per-lemma verification pipeline")
    k.add_argument("--table")
    k.add_argument("--order", type=int)
    k.add_argument("--exhaustive", action="store_true")
    k.add_argument("--force-n1", action="store_true")
    k.add_argument("--format", choices=["table", "structured"], default="table")

    def add_search_args(sp, with_identity=True):
        sp.add_argument("--order", type=int, required=True)
        if with_identity:
            sp.add_argument("--identity", action="append", default=[])
        sp.add_argument("--no-latin", action="store_true")
        sp.add_argument("--reduced", action="store_true")
        sp.add_argument("--up-to-iso", action="store_true")
        sp.add_argument("--limit", type=int)
        sp.add_argument("--cache-dir")
        sp.add_argument("--parallel", type=int, default=1)

    e = sub.add_parser("enumerate", help="stream matching Cayley tables")
    add_search_args(e)

    n = sub.add_parser("count", help="count matching Cayley tables")
    add_search_args(n)

    o = sub.add_parser("collapse", help="collapse-check j over a translation family")
    o.add_argument("--table", required=True)
    o.add_argument("--family", choices=["left", "right"], default="left")
    o.add_argument("--format", choices=["table", "structured"], default="table")

    w = sub.add_parser("witness", help="search for a model matching constraints")
    w.add_argument("--order", type=int, required=True)
    w.add_argument("--require", action="append", default=[])
    w.add_argument("--forbid", action="append", default=[])
    w.add_argument("--no-latin", action="store_true")
    w.add_argument("--forbid-unit", action="store_true",
                   help="require the model to lack a two-sided identity element")
    return p


def _render_kunen_human(report: KunenReport) -> str:
    lines = [f"order {report.model_order}"]
    if not report.is_quasigroup:
        w = report.latin_witness
        lines.append(
            f"NOT A QUASIGROUP: {w['kind']} {w['index']} duplicates value {w['value']}"
        )
        if report.n1_holds is not None:
            lines.append(f"N1 (forced): {'HOLDS' if report.n1_holds else 'FAILS'}")
            lines.append(f"identity element: {report.identity_element}")
        return "\n".join(lines)
    if report.n1_holds:
        lines.append("N1: HOLDS")
    else:
        w = " ".join(f"{k}={v}" for k, v in report.n1_witness.items())
        lines.append(f"N1: FAILS at {w}")
    for step in report.steps:
        mark = "pass" if step.passed else "FAIL"
        extra = ""
        if step.witness:
            extra = "  witness " + " ".join(f"{k}={v}" for k, v in step.witness.items())
        lines.append(f"  {step.step_id:<18} {mark}{extra}")
    lines.append(f"identity element: {report.identity_element}")
    lines.append(f"is loop: {report.is_loop}")
    return "\n".join(lines)


def _cmd_check(args) -> int:
    t = read_table(args.table)
    ident = parse_identity(args.identity)
    verdict = holds(t, ident)
    if args.format == "structured":
        print(json.dumps({"holds": verdict.holds, "witness": verdict.witness}, indent=2))
    elif verdict.holds:
        print("HOLDS")
    else:
        print("FAILS at " + " ".join(f"{k}={v}" for k, v in verdict.witness.items()))
    return 0 if verdict.holds else 1


def _cmd_kunen(args) -> int:
    if args.exhaustive:
        if args.order is None:
            raise ValueError("--exhaustive requires --order")
        summary = exhaustive_scan(args.order)
        for r in summary.n1_reports:
            status = "ok" if (r.all_steps_passed and r.is_loop) else "VIOLATION"
            print(f"N1 model: identity={r.identity_element} {status}")
        print(
            f"Latin squares: {summary.latin_total}, "
            f"N1 models: {summary.n1_total}, loops: {summary.loop_total}, "
            f"violations: {len(summary.violations)}"
        )
        return 0 if not summary.violations else 1
    if args.table is None:
        raise ValueError("kunen needs --table or --order with --exhaustive")
    t = read_table(args.table)
    report = verify_kunen(t, force_n1=args.force_n1)
    if args.format == "structured":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(_render_kunen_human(report))
    ok = report.is_quasigroup and report.n1_holds and report.all_steps_passed
    return 0 if ok else 1


def _spec_from_args(args, required=(), forbidden=(), forbid_unit=False) -> SearchSpec:
    return SearchSpec(
        order=args.order,
        require_latin=not args.no_latin,
        required_identities=tuple(required),
        forbidden_identities=tuple(forbidden),
        forbid_identity_element=forbid_unit,
        reduced_only=getattr(args, "reduced", False),
        up_to_iso=getattr(args, "up_to_iso", False),
        limit=getattr(args, "limit", None),
    )


def _parse_identity_arg(text: str):
    # the CLI accepts "N1" as shorthand for the builtin Moufang-type law
    if text.strip().upper() == "N1":
        return builtin_n1()
    return parse_identity(text)


def _cache_path(cache_dir: str, spec: SearchSpec) -> Path:
    sig = repr((
        spec.order, spec.require_latin,
        tuple(format_identity(i) for i in spec.required_identities),
        tuple(format_identity(i) for i in spec.forbidden_identities),
        spec.forbid_identity_element, spec.reduced_only, spec.up_to_iso,
        spec.limit,
    ))
    digest = hashlib.sha256(sig.encode()).hexdigest()[:16]
    return Path(cache_dir) / f"enum-{spec.order}-{digest}.tables"


def _load_cache(path: Path, spec: SearchSpec):
    if not path.is_file():
        return None
    try:
        tables = parse_table_stream(path.read_text())
    except TableFormatError:
        return None
    if spec.require_latin:
        # trust-but-verify: a corrupt cache must never poison results
        if not all(check_latin(t).is_quasigroup for t in tables):
            return None
    return tables


def _resolved_cache_dir(args):
    return args.cache_dir or os.environ.get(CACHE_ENV)


def _cmd_enumerate(args) -> int:
    required = [_parse_identity_arg(s) for s in args.identity]
    spec = _spec_from_args(args, required=required)
    cache_dir = _resolved_cache_dir(args)
    tables = None
    if cache_dir:
        tables = _load_cache(_cache_path(cache_dir, spec), spec)
    if tables is None:
        tables = list(enumerate_tables(spec, workers=args.parallel))
        if cache_dir:
            path = _cache_path(cache_dir, spec)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(format_table_stream(tables))
    sys.stdout.write(format_table_stream(tables))
    return 0


def _cmd_count(args) -> int:
    required = [_parse_identity_arg(s) for s in args.identity]
    spec = _spec_from_args(args, required=required)
    cache_dir = _resolved_cache_dir(args)
    result = None
    if cache_dir:
        cached = _load_cache(_cache_path(cache_dir, spec), spec)
        if cached is not None:
            from .search import CountResult, canonical_form
            iso = (
                sum(1 for t in cached if canonical_form(t) == t)
                if spec.up_to_iso else None
            )
            result = CountResult(len(cached), iso)
    if result is None:
        result = count_models(spec)
    record = {"order": spec.order, "raw": result.raw}
    if result.iso_classes is not None:
        record["iso_classes"] = result.iso_classes
    print(json.dumps(record))
    return 0


def _cmd_collapse(args) -> int:
    t = read_table(args.table)
    q = Quasigroup.from_table(t)
    fam = left_translations(q) if args.family == "left" else right_translations(q)
    verdict = collapse_check(j_map(q), fam)
    part = generated_partition(q.order, fam)
    if args.format == "structured":
        print(json.dumps({
            "family": args.family,
            "idempotent_ok": verdict.idempotent_ok,
            "transitivity_ok": verdict.transitivity_ok,
            "transitivity_witness": verdict.transitivity_witness,
            "coequalization_ok": verdict.coequalization_ok,
            "coequalization_witness": verdict.coequalization_witness,
            "is_constant": verdict.is_constant,
            "constant_value": verdict.constant_value,
            "partition_blocks": part.blocks(),
        }, indent=2))
    else:
        print(f"family: {args.family}")
        print(f"idempotent: {verdict.idempotent_ok}")
        print(f"transitivity: {verdict.transitivity_ok}")
        print(f"coequalization: {verdict.coequalization_ok}")
        print(f"constant: {verdict.is_constant}"
              + (f" (value {verdict.constant_value})" if verdict.is_constant else ""))
        print("partition: " + " | ".join(
            "{" + ",".join(map(str, b)) + "}" for b in part.blocks()))
    return 0


def _cmd_witness(args) -> int:
    required = [_parse_identity_arg(s) for s in args.require]
    forbidden = [_parse_identity_arg(s) for s in args.forbid]
    spec = SearchSpec(
        order=args.order,
        require_latin=not args.no_latin,
        required_identities=tuple(required),
        forbidden_identities=tuple(forbidden),
        forbid_identity_element=args.forbid_unit,
    )
    t = find_witness(spec)
    if t is None:
        print("no witness")
        return 0
    sys.stdout.write(format_table(t))
    return 1


_DISPATCH = {
    "check": _cmd_check,
    "kunen": _cmd_kunen,
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "collapse": _cmd_collapse,
    "witness": _cmd_witness,
}


def run(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.subcommand](args)
    except (TableFormatError, IdentitySyntaxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
