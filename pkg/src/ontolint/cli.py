"""``ontolint`` command line.

Exit codes: 0 no findings, 1 warnings only, 2 at least one error,
3 parse, I/O or usage failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from ontolint.lint import LintConfig, lint
from ontolint.refactor import extract_backbone, suggest_all
from ontolint.report import emit_report
from ontolint.syntax import OntoDocument, OntoSyntaxError, import_edges, parse_onto
from ontolint.worlds import cross_validate

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontolint", description="Lint meta-property annotated taxonomies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("lint", help="lint an .onto file or an imported edge list")
    p.add_argument("file", nargs="?", help=".onto source file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--backbone", action="store_true", help="lint only the type/category backbone")
    p.add_argument("--hide-roles", action="store_true", help="with --backbone, drop roles too")
    p.add_argument("--suggest", action="store_true", help="append refactoring suggestions")
    p.add_argument("--disable", default="", metavar="CODES", help="comma-separated codes to skip")
    p.add_argument("--import-edges", metavar="EDGES", help="child<TAB>parent edge file")
    p.add_argument("--sidecar", metavar="FILE", help="profile sidecar for --import-edges")
    return parser


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def load(args: argparse.Namespace) -> OntoDocument:
    if args.import_edges:
        if args.file:
            raise UsageError("give either a file or --import-edges, not both")
        if not args.sidecar:
            raise UsageError("--import-edges needs --sidecar")
        return import_edges(_read(args.import_edges), _read(args.sidecar), args.import_edges, args.sidecar)
    if args.sidecar:
        raise UsageError("--sidecar is only valid with --import-edges")
    if not args.file:
        raise UsageError("missing input file")
    return parse_onto(_read(args.file), args.file)


def run_lint(args: argparse.Namespace) -> int:
    disabled = frozenset(c.strip() for c in args.disable.split(",") if c.strip())
    config = LintConfig(disabled)
    doc = load(args)
    lowered = doc.lower()
    taxonomy = lowered.taxonomy
    if args.backbone:
        taxonomy = extract_backbone(taxonomy, hide_roles=args.hide_roles)
    extra = list(doc.notes)
    for mid, model in lowered.models.items():
        binding = {n: p for n, p in lowered.bindings[mid].items() if n in taxonomy}
        extra.extend(cross_validate(taxonomy, model, binding, mid))
    report = lint(taxonomy, config).merged(d for d in extra if config.enabled(d.code))
    suggestions = suggest_all(taxonomy) if args.suggest else ()
    for note in taxonomy.notes:
        print(f"note: {note}", file=sys.stderr)
    sys.stdout.write(emit_report(report, args.format, doc.spans_for, suggestions))
    return report.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_lint(args)
    except UsageError as exc:
        print(f"ontolint: error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"ontolint: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
    except OntoSyntaxError as exc:
        for issue in exc.issues:
            print(f"{issue.span}: error: {issue.message}", file=sys.stderr)
    return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
