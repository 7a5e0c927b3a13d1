"""Rule engine over taxonomies.

Every rule is a pure function ``rule_*(taxonomy) -> list[Diagnostic]``
returning unlabeled findings; :func:`lint` runs them all, drops disabled
codes, attaches overloading-pattern labels and sorts the result.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Optional

from ontolint.classify import PropertyKind, check_profile
from ontolint.model import Link, LinkKind, Taxonomy, ic_set, isa_ancestors


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"

    @property
    def rank(self) -> int:
        return _SEVERITY_RANK[self]


_SEVERITY_RANK = {Severity.ERROR: 0, Severity.WARNING: 1, Severity.INFO: 2}


class Pattern(str, Enum):
    """The five kinds of ISA overloading."""

    CONFUSION_OF_SENSES = "confusion_of_senses"
    REDUCTION_OF_SENSE = "reduction_of_sense"
    OVERGENERALIZATION = "overgeneralization"
    TYPE_TO_ROLE = "type_to_role"
    ORGANIZATIONAL_CONFUSION = "organizational_confusion"


_PATTERN_ORDER = {p: i for i, p in enumerate(Pattern)}

CATALOG: dict[str, tuple[Severity, str]] = {
    "E101": (Severity.ERROR, "anti-rigid node subsumes a rigid node"),
    "E102": (Severity.ERROR, "category has a type among its isa-parents"),
    "E103": (Severity.ERROR, "type has incomparable minimal type ancestors"),
    "E104": (Severity.ERROR, "isa link crosses ontological levels"),
    "E105": (Severity.ERROR, "dependence does not run from a higher to a lower level"),
    "E106": (Severity.ERROR, "anti-rigid node marked independent"),
    "E107": (Severity.ERROR, "isa link between nodes of different countability"),
    "W201": (Severity.WARNING, "attribution used as a taxon"),
    "W202": (Severity.WARNING, "isa-children span several levels"),
    "W203": (Severity.WARNING, "material role without a type ancestor"),
    "W204": (Severity.WARNING, "formal role subsumed by an IC-carrying node"),
    "W205": (Severity.WARNING, "unclassifiable meta-profile"),
    "W206": (Severity.WARNING, "category with several category parents"),
    "W207": (Severity.WARNING, "declared tags contradict a micro-model"),
    "I301": (Severity.INFO, "level rule skipped for an unleveled endpoint"),
}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    nodes: tuple[str, ...]
    message: str
    link: Optional[Link] = None
    patterns: frozenset[Pattern] = frozenset()

    def __post_init__(self):
        if self.code not in CATALOG:
            raise ValueError(f"unknown diagnostic code {self.code!r}")
        if not self.nodes:
            raise ValueError("a diagnostic needs at least one node")

    @property
    def severity(self) -> Severity:
        return CATALOG[self.code][0]

    @property
    def sorted_patterns(self) -> list[Pattern]:
        return sorted(self.patterns, key=_PATTERN_ORDER.__getitem__)

    def sort_key(self):
        link = (self.link.kind.value, self.link.source, self.link.target) if self.link else ()
        return (self.severity.rank, self.code, self.nodes[0], self.nodes, link, self.message)


@dataclass(frozen=True)
class LintConfig:
    disabled: frozenset[str] = frozenset()

    def enabled(self, code: str) -> bool:
        return code not in self.disabled


@dataclass(frozen=True)
class DiagnosticReport:
    diagnostics: tuple[Diagnostic, ...] = ()
    code_counts: dict[str, int] = field(default_factory=dict, compare=False)
    pattern_counts: dict[str, int] = field(default_factory=dict, compare=False)

    @classmethod
    def from_diagnostics(cls, diagnostics: Iterable[Diagnostic]) -> DiagnosticReport:
        ordered = tuple(sorted(diagnostics, key=Diagnostic.sort_key))
        codes = Counter(d.code for d in ordered)
        patterns = Counter(p.value for d in ordered for p in d.patterns)
        return cls(
            ordered,
            {c: codes[c] for c in sorted(codes)},
            {p.value: patterns[p.value] for p in Pattern if p.value in patterns},
        )

    def merged(self, extra: Iterable[Diagnostic]) -> DiagnosticReport:
        return DiagnosticReport.from_diagnostics([*self.diagnostics, *extra])

    def __len__(self) -> int:
        return len(self.diagnostics)

    def by_severity(self, severity: Severity) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity is severity]

    @property
    def findings(self) -> list[Diagnostic]:
        """Errors and warnings; info notes are not findings."""
        return [d for d in self.diagnostics if d.severity is not Severity.INFO]

    @property
    def exit_code(self) -> int:
        severities = {d.severity for d in self.diagnostics}
        if Severity.ERROR in severities:
            return 2
        if Severity.WARNING in severities:
            return 1
        return 0


def _isa(taxonomy: Taxonomy) -> list[Link]:
    return taxonomy.links_of(LinkKind.ISA)


def rule_profiles(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for name, node in taxonomy.nodes.items():
        for code in check_profile(node.meta):
            if code == "E106":
                msg = f"anti-rigid '{name}' is marked independent; a role profile needs +D"
            else:
                msg = f"meta-profile {node.meta} of '{name}' matches no kind of universal"
            out.append(Diagnostic(code, (name,), msg))
    return out


def rule_rigidity(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for link in _isa(taxonomy):
        child, parent = taxonomy.nodes[link.source], taxonomy.nodes[link.target]
        if child.meta.is_rigid and parent.meta.is_anti_rigid:
            msg = f"anti-rigid '{parent.name}' subsumes rigid '{child.name}'"
            out.append(Diagnostic("E101", (child.name, parent.name), msg, link))
    return out


def minimal_type_ancestors(taxonomy: Taxonomy, name: str) -> list[str]:
    """The most specific types above ``name`` in the isa order."""
    types = [a for a in isa_ancestors(taxonomy, name) if taxonomy.nodes[a].kind is PropertyKind.TYPE]
    type_set = set(types)
    covered = set()
    for t in types:
        covered.update(a for a in isa_ancestors(taxonomy, t) if a in type_set)
    return sorted(t for t in types if t not in covered)


def rule_identity_tree(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for name, node in taxonomy.nodes.items():
        if node.kind is not PropertyKind.TYPE:
            continue
        minimal = minimal_type_ancestors(taxonomy, name)
        ics = {m: ic_set(taxonomy, m) for m in minimal}
        clash = any(
            not (ics[a] <= ics[b] or ics[b] <= ics[a])
            for i, a in enumerate(minimal)
            for b in minimal[i + 1 :]
        )
        if clash:
            msg = (
                f"type '{name}' falls under {len(minimal)} types with distinct identity "
                f"criteria: {', '.join(minimal)}"
            )
            out.append(Diagnostic("E103", (name, *minimal), msg))
    for link in _isa(taxonomy):
        child, parent = taxonomy.nodes[link.source], taxonomy.nodes[link.target]
        if child.kind is PropertyKind.CATEGORY and parent.kind is PropertyKind.TYPE:
            msg = f"category '{child.name}' is subsumed by type '{parent.name}' and would inherit its identity criterion"
            out.append(Diagnostic("E102", (child.name, parent.name), msg, link))
    return out


def rule_levels(taxonomy: Taxonomy) -> list[Diagnostic]:
    """E104/E105 over isa and dep links.

    A link with exactly one leveled endpoint is skipped with an I301 note;
    links between two unleveled nodes are outside the level system and
    pass silently.
    """
    out = []
    for link in taxonomy.links:
        if link.kind not in (LinkKind.ISA, LinkKind.DEP):
            continue
        src, tgt = taxonomy.nodes[link.source], taxonomy.nodes[link.target]
        if src.level is None and tgt.level is None:
            continue
        if src.level is None or tgt.level is None:
            end = src if src.level is None else tgt
            msg = f"level check on '{link}' skipped: '{end.name}' has no level"
            out.append(Diagnostic("I301", (end.name,), msg, link))
            continue
        if link.kind is LinkKind.ISA and src.level != tgt.level:
            msg = (
                f"isa crosses levels: '{src.name}' is {src.level.token}, "
                f"'{tgt.name}' is {tgt.level.token}"
            )
            out.append(Diagnostic("E104", (src.name, tgt.name), msg, link))
        elif link.kind is LinkKind.DEP and src.level <= tgt.level:
            msg = (
                f"dependence must point to a lower level: '{src.name}' is {src.level.token}, "
                f"'{tgt.name}' is {tgt.level.token}"
            )
            out.append(Diagnostic("E105", (src.name, tgt.name), msg, link))
    return out


def rule_countability(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for link in _isa(taxonomy):
        child, parent = taxonomy.nodes[link.source], taxonomy.nodes[link.target]
        if child.countable is None or parent.countable is None:
            continue
        if child.countable != parent.countable:
            word = {True: "countable", False: "uncountable"}
            msg = f"{word[child.countable]} '{child.name}' under {word[parent.countable]} '{parent.name}'"
            out.append(Diagnostic("E107", (child.name, parent.name), msg, link))
    return out


def rule_attributions(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for name, node in taxonomy.nodes.items():
        children = taxonomy.children(name)
        if node.kind is PropertyKind.ATTRIBUTION and children:
            msg = f"attribution '{name}' is used as a taxon for {len(children)} node(s)"
            out.append(Diagnostic("W201", (name,), msg))
    return out


def rule_roles(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for name, node in taxonomy.nodes.items():
        if node.kind is PropertyKind.MATERIAL_ROLE:
            ancestors = isa_ancestors(taxonomy, name)
            if not any(taxonomy.nodes[a].kind is PropertyKind.TYPE for a in ancestors):
                msg = f"material role '{name}' has no type ancestor to inherit an identity criterion from"
                out.append(Diagnostic("W203", (name,), msg))
        elif node.kind is PropertyKind.FORMAL_ROLE:
            carrier = next((a for a in isa_ancestors(taxonomy, name) if ic_set(taxonomy, a)), None)
            if carrier is not None:
                msg = f"formal role '{name}' is subsumed by '{carrier}', which carries an identity criterion"
                out.append(Diagnostic("W204", (name, carrier), msg))
    return out


def rule_overgeneralization(taxonomy: Taxonomy) -> list[Diagnostic]:
    out = []
    for name in taxonomy.nodes:
        levels = sorted({
            taxonomy.nodes[c].level for c in taxonomy.children(name) if taxonomy.nodes[c].level is not None
        })
        if len(levels) >= 2:
            msg = f"children of '{name}' span {len(levels)} levels: {', '.join(l.token for l in levels)}"
            out.append(Diagnostic("W202", (name,), msg))
    for name, node in taxonomy.nodes.items():
        if node.kind is not PropertyKind.CATEGORY:
            continue
        cat_parents = [p for p in taxonomy.parents(name) if taxonomy.nodes[p].kind is PropertyKind.CATEGORY]
        if len(cat_parents) >= 2:
            msg = f"category '{name}' has {len(cat_parents)} category parents: {', '.join(cat_parents)}"
            out.append(Diagnostic("W206", (name, *cat_parents), msg))
    return out


RULES: tuple[Callable[[Taxonomy], list[Diagnostic]], ...] = (
    rule_profiles,
    rule_rigidity,
    rule_identity_tree,
    rule_levels,
    rule_countability,
    rule_attributions,
    rule_roles,
    rule_overgeneralization,
)


def parent_levels(taxonomy: Taxonomy, name: str) -> set:
    return {taxonomy.nodes[p].level for p in taxonomy.parents(name) if taxonomy.nodes[p].level is not None}


def label_patterns(taxonomy: Taxonomy, finding: Diagnostic) -> frozenset[Pattern]:
    labels = set()
    code = finding.code
    if code == "E101":
        labels.add(Pattern.TYPE_TO_ROLE)
    elif code == "E104":
        child, parent = (taxonomy.nodes[n] for n in finding.nodes[:2])
        if child.level > parent.level:
            labels.add(Pattern.REDUCTION_OF_SENSE)
        else:
            labels.add(Pattern.OVERGENERALIZATION)
    elif code in ("W202", "E107"):
        labels.add(Pattern.OVERGENERALIZATION)
    elif code == "W201":
        labels.add(Pattern.ORGANIZATIONAL_CONFUSION)
    if code in ("E103", "E104") and len(parent_levels(taxonomy, finding.nodes[0])) >= 2:
        labels.add(Pattern.CONFUSION_OF_SENSES)
    return frozenset(labels)


def run_rules(taxonomy: Taxonomy) -> list[Diagnostic]:
    """Unlabeled findings of every rule, in rule order."""
    return [d for rule in RULES for d in rule(taxonomy)]


def label(taxonomy: Taxonomy, findings: Iterable[Diagnostic]) -> list[Diagnostic]:
    return [replace(d, patterns=label_patterns(taxonomy, d)) for d in findings]


def lint(taxonomy: Taxonomy, config: Optional[LintConfig] = None) -> DiagnosticReport:
    config = config or LintConfig()
    kept = [d for d in run_rules(taxonomy) if config.enabled(d.code)]
    return DiagnosticReport.from_diagnostics(label(taxonomy, kept))
