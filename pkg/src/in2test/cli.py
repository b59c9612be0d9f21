"""Command-line interface.

Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import code_metrics
from .evaluator import InvalidRunError, evaluate_run, trend
from .model import Part, PartKind
from .monitor import load_monitor_config, monitor_inspection
from .prioritizer import RuleNotApplicableError, prioritize
from .reports import emit_reports, evaluation_rows, EVALUATION_COLUMNS, TREND_COLUMNS, trend_rows
from .rules import ALL_FAMILIES, PERCENT_FAMILIES, TOPN_FAMILY, RuleSetConfig, describe_rule, generate_rule_set
from .serialize import LoadError, csv_text, load_run, parts_to_csv, rules_from_json, rules_to_json, ruleset_digest
from .store import RunStore, atomic_write

DEFAULT_STORE = ".in2test"
EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _store(args) -> RunStore:
    root = args.store or os.environ.get("IN2TEST_STORE") or DEFAULT_STORE
    return RunStore(root)


def _load_rules(path: str):
    p = Path(path)
    return rules_from_json(p.read_text(encoding="utf-8"), p.name)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def cmd_add_run(args) -> int:
    run = load_run(args.parts, args.defects, args.run_json)
    d = _store(args).put_run(run)
    print(f"stored run {run.id} ({len(run.parts)} parts, {len(run.defects)} defect records) in {d}")
    return EXIT_OK


def cmd_extract_metrics(args) -> int:
    manifest = Path(args.manifest)
    base = manifest.parent
    parts = []
    with open(manifest, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {"path", "part_id"} <= set(reader.fieldnames):
            raise LoadError("manifest needs columns path,part_id", manifest.name, 1)
        for i, row in enumerate(reader, start=2):
            src = base / row["path"]
            text = src.read_text(encoding="utf-8", errors="replace")
            try:
                m = code_metrics.extract_part_metrics(text, args.aggregate)
            except code_metrics.StructuralParseError as exc:
                raise LoadError(f"{row['path']}: {exc}", manifest.name, i) from None
            parts.append(Part(
                id=row["part_id"],
                name=row.get("name") or Path(row["path"]).stem,
                kind=PartKind(row.get("kind") or "class"),
                loc=m.loc,
                mean_method_length=m.mean_method_length,
                mccabe=m.mccabe,
            ))
    _emit(parts_to_csv(parts), args.output)
    return EXIT_OK


def cmd_generate_rules(args) -> int:
    families = set(PERCENT_FAMILIES)
    if args.families:
        families = {f.strip() for f in args.families.split(",") if f.strip()}
    top_n = (3, 5, 8, 10)
    if args.top_n:
        top_n = tuple(int(x) for x in args.top_n.split(","))
        if not args.families:
            families.add(TOPN_FAMILY)
    config = RuleSetConfig(args.percent, top_n, frozenset(families))
    rules = generate_rule_set(config)
    meta = {"percent": config.percent, "top_n_list": list(config.top_n_list),
            "include_families": sorted(config.include_families)}
    _emit(rules_to_json(rules, meta), args.output)
    if args.output:
        print(f"wrote {len(rules)} rules to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_prioritize(args) -> int:
    rules = _load_rules(args.rules)
    run = _store(args).get_run(args.run)
    rows = []
    for rule in sorted(rules, key=lambda r: r.rule_id):
        try:
            p = prioritize(rule, run)
        except RuleNotApplicableError as exc:
            rows.append([rule.rule_id, describe_rule(rule), "", "", str(exc)])
            continue
        thresholds = ";".join(f"{label}>{t:g}" if "large" in label else f"{label}<{t:g}"
                              for label, t in p.thresholds_used)
        undefined = ";".join(pid for pid, _ in p.undefined)
        rows.append([rule.rule_id, describe_rule(rule), ";".join(sorted(p.selected)), thresholds, undefined])
    _emit(csv_text(["rule_id", "description", "selected", "thresholds", "undefined"], rows), args.output)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    store = _store(args)
    rules = _load_rules(args.rules)
    run = store.get_run(args.run)
    digest = store.put_ruleset(rules)
    prior = store.rules_with_history(rules, before=run.id)
    results = evaluate_run(prior, run)
    path = store.put_evaluation(digest, run.id, results)
    by_id = {r.rule_id: r for r in rules}
    _emit(csv_text(EVALUATION_COLUMNS, evaluation_rows(results, by_id)), args.output)
    print(f"rule set {digest}: {len(results)} evaluations stored in {path}", file=sys.stderr)
    return EXIT_OK


def cmd_trend(args) -> int:
    store = _store(args)
    rules = _load_rules(args.rules)
    digest = ruleset_digest(rules)
    history = store.rules_with_history(rules)
    tr = trend([r for r in history if r.history])
    store.put_trend(digest, tr)
    _emit(csv_text(TREND_COLUMNS, trend_rows(tr)), args.output)
    return EXIT_OK


def cmd_monitor(args) -> int:
    store = _store(args)
    run = store.get_run(args.run)
    config = load_monitor_config(args.config) if args.config else None
    result = monitor_inspection(run, config)
    store.put_monitor(run.id, result)
    for w in result.warnings:
        print(f"WARNING: {w}")
    for n in result.notes:
        print(f"note: {n}")
    if not result.warnings:
        print("no warnings")
    return EXIT_OK


def cmd_report(args) -> int:
    store = _store(args)
    if args.rules:
        rules = _load_rules(args.rules)
        digest = ruleset_digest(rules)
    else:
        digests = store.rulesets_for_run(args.run)
        if len(digests) != 1:
            raise LoadError(
                f"run {args.run} has {len(digests)} evaluated rule sets; pass --rules to choose"
            )
        digest = digests[0]
        rules = store.get_ruleset(digest)
    results = store.get_evaluation(digest, args.run)
    history = store.rules_with_history(rules)
    tr = trend([r for r in history if r.history])
    out_dir = Path(args.output) if args.output else store.report_dir(args.run)
    for path in emit_reports(results, tr, args.format, out_dir, rules, args.run, store.get_monitor(args.run)):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    store_help = f"run store directory (default: $IN2TEST_STORE or {DEFAULT_STORE})"
    parser = _Parser(prog="in2test", description="Calibrate inspection-based test focusing rules.")
    parser.add_argument("--store", default=None, help=store_help)
    # accepted after the subcommand too; SUPPRESS keeps it from clobbering the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--store", default=argparse.SUPPRESS, help=store_help)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("add-run", parents=[common], help="import a QA run into the store")
    p.add_argument("--parts", required=True)
    p.add_argument("--defects", required=True)
    p.add_argument("--run-json", required=True)
    p.set_defaults(func=cmd_add_run)

    p = sub.add_parser("extract-metrics", parents=[common], help="compute parts.csv from source files")
    p.add_argument("manifest", help="CSV with columns path,part_id[,name,kind]")
    p.add_argument("-o", "--output")
    p.add_argument("--aggregate", choices=("max", "sum", "mean"), default="max")
    p.set_defaults(func=cmd_extract_metrics)

    p = sub.add_parser("generate-rules", parents=[common], help="emit a systematic rule set")
    p.add_argument("--percent", type=float, default=0.8)
    p.add_argument("--top-n", help="comma-separated N values; adds the top-N family")
    p.add_argument("--families", help=f"comma-separated subset of: {', '.join(ALL_FAMILIES)}")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate_rules)

    for name, func, text in (
        ("prioritize", cmd_prioritize, "apply rules to a stored run"),
        ("evaluate", cmd_evaluate, "evaluate rules against a stored run"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--rules", required=True)
        p.add_argument("--run", required=True)
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("trend", parents=[common], help="classify rules across evaluated runs")
    p.add_argument("--rules", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("monitor", parents=[common], help="check inspection quality of a run")
    p.add_argument("--run", required=True)
    p.add_argument("--config", help="TOML or JSON file with reference ranges")
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("report", parents=[common], help="write evaluation reports for a run")
    p.add_argument("--run", required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--rules")
    p.add_argument("-o", "--output", help="output directory (default: <store>/reports/<run>)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    try:
        return args.func(args)
    except (LoadError, InvalidRunError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
