"""Text and JSON renderings of a lint report."""

from __future__ import annotations

import json
from typing import Callable, Iterable, Optional

from ontolint.lint import Diagnostic, DiagnosticReport
from ontolint.refactor import RefactorPlan

REPORT_VERSION = 1

SpanResolver = Callable[[Diagnostic], list]


def format_diagnostic(d: Diagnostic) -> str:
    line = f"{d.severity.value} {d.code} {'>'.join(d.nodes)}: {d.message}"
    if d.patterns:
        line += f" [{','.join(p.value for p in d.sorted_patterns)}]"
    return line


def format_plan(plan: RefactorPlan) -> str:
    parts = []
    if plan.new_nodes:
        parts.append("new " + ", ".join(n.name for n in plan.new_nodes))
    if plan.removed_links:
        parts.append("drop " + ", ".join(str(l) for l in plan.removed_links))
    if plan.added_links:
        parts.append("add " + ", ".join(str(l) for l in plan.added_links))
    return f"suggest {plan.kind.value} {plan.target}: {'; '.join(parts)}"


def _diagnostic_dict(d: Diagnostic, spans: Optional[SpanResolver]) -> dict:
    link = None
    if d.link is not None:
        link = {"kind": d.link.kind.value, "source": d.link.source, "target": d.link.target}
    return {
        "code": d.code,
        "severity": d.severity.value,
        "nodes": list(d.nodes),
        "link": link,
        "message": d.message,
        "patterns": [p.value for p in d.sorted_patterns],
        "spans": [s.to_dict() for s in spans(d)] if spans else [],
    }


def emit_report(
    report: DiagnosticReport,
    format: str = "text",
    spans: Optional[SpanResolver] = None,
    suggestions: Iterable[RefactorPlan] = (),
) -> str:
    suggestions = list(suggestions)
    if format == "text":
        lines = [format_diagnostic(d) for d in report.diagnostics]
        lines.extend(format_plan(p) for p in suggestions)
        return "".join(line + "\n" for line in lines)
    if format == "json":
        doc = {
            "version": REPORT_VERSION,
            "diagnostics": [_diagnostic_dict(d, spans) for d in report.diagnostics],
            "counts": {"codes": report.code_counts, "patterns": report.pattern_counts},
            "suggestions": [p.to_dict() for p in suggestions],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown report format {format!r}")
