"""Backbone extraction and refactoring plans.

Plans are computed against one taxonomy value and record its digest in
``notes``; :func:`apply_plan` refuses to apply a plan to anything else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ontolint.classify import PropertyKind
from ontolint.lint import Severity, lint
from ontolint.model import (
    IsaCycle,
    Link,
    LinkKind,
    PropertyNode,
    Taxonomy,
    TaxonomyError,
    _Builder,
)


class NotSplittable(TaxonomyError):
    pass


class NotApplicable(TaxonomyError):
    pass


class StalePlan(TaxonomyError):
    pass


class PlanKind(str, Enum):
    LEVEL_SPLIT = "level_split"
    ATTRIBUTE_DEMOTION = "attribute_demotion"
    ROLE_TAGGING = "role_tagging"


_BASE = re.compile(r"base=([0-9a-f]{64})")


@dataclass(frozen=True)
class RefactorPlan:
    kind: PlanKind
    target: str
    new_nodes: tuple[PropertyNode, ...] = ()
    removed_links: tuple[Link, ...] = ()
    added_links: tuple[Link, ...] = ()
    notes: str = ""

    @property
    def base(self) -> Optional[str]:
        m = _BASE.search(self.notes)
        return m.group(1) if m else None

    @property
    def is_empty(self) -> bool:
        return not (self.new_nodes or self.removed_links or self.added_links)

    def to_dict(self) -> dict:
        def link(l: Link) -> dict:
            return {"kind": l.kind.value, "source": l.source, "target": l.target}

        return {
            "kind": self.kind.value,
            "target": self.target,
            "new_nodes": [
                {
                    "name": n.name,
                    "meta": str(n.meta),
                    "level": n.level.token if n.level is not None else None,
                }
                for n in self.new_nodes
            ],
            "removed_links": [link(l) for l in self.removed_links],
            "added_links": [link(l) for l in self.added_links],
            "notes": self.notes,
        }


def extract_backbone(taxonomy: Taxonomy, hide_roles: bool = True) -> Taxonomy:
    """Sub-taxonomy induced by types and categories.

    Roles survive only when ``hide_roles`` is false; attributions and
    unclassifiable nodes never do.
    """
    keep_kinds = {PropertyKind.TYPE, PropertyKind.CATEGORY}
    if not hide_roles:
        keep_kinds |= {PropertyKind.MATERIAL_ROLE, PropertyKind.FORMAL_ROLE}
    kept = [n for n in taxonomy.nodes.values() if n.kind in keep_kinds]
    names = {n.name for n in kept}
    links = [l for l in taxonomy.links if l.source in names and l.target in names]
    return Taxonomy.build(kept, links)


def _notes(taxonomy: Taxonomy, *lines: str) -> str:
    return "; ".join((f"base={taxonomy.digest()}", *lines))


def _error_count(taxonomy: Taxonomy) -> int:
    return len(lint(taxonomy).by_severity(Severity.ERROR))


def _checked(taxonomy: Taxonomy, plan: RefactorPlan, refuse: type[TaxonomyError]) -> RefactorPlan:
    # dropping isa links can expose a hidden E103 and splitting copies the
    # node's profile, so a plan is only offered if it adds no errors
    if _error_count(apply_plan(taxonomy, plan)) > _error_count(taxonomy):
        raise refuse(f"{plan.kind.value} on '{plan.target}' would add lint errors")
    return plan


def suggest_level_split(taxonomy: Taxonomy, name: str) -> RefactorPlan:
    """Split a node whose isa-parents sit at several levels.

    One ``<name>@<level>`` node is created per parent level and takes over
    the parents at that level.  Dependence runs down the chain of new nodes
    from the highest level to the lowest.
    """
    node = taxonomy.node(name)
    by_level: dict = {}
    for parent in taxonomy.parents(name):
        level = taxonomy.nodes[parent].level
        if level is not None:
            by_level.setdefault(level, []).append(parent)
    if len(by_level) < 2:
        raise NotSplittable(f"'{name}' has isa-parents at fewer than 2 levels")

    levels = sorted(by_level, reverse=True)
    new_nodes = []
    added = []
    for level in levels:
        split_name = f"{name}@{level.token}"
        if split_name in taxonomy:
            raise NotSplittable(f"'{split_name}' already exists")
        new_nodes.append(PropertyNode(split_name, node.meta, level, node.countable))
        added.extend(Link(LinkKind.ISA, split_name, p) for p in by_level[level])
    for higher, lower in zip(new_nodes, new_nodes[1:]):
        added.append(Link(LinkKind.DEP, higher.name, lower.name))
    split_parents = {p for ps in by_level.values() for p in ps}
    removed = [
        l for l in taxonomy.links
        if l.kind is LinkKind.ISA and l.source == name and l.target in split_parents
    ]
    notes = _notes(
        taxonomy,
        f"alias {name} = {new_nodes[0].name}",
        "co-located: " + ", ".join(n.name for n in new_nodes),
    )
    plan = RefactorPlan(PlanKind.LEVEL_SPLIT, name, tuple(new_nodes), tuple(removed), tuple(added), notes)
    return _checked(taxonomy, plan, NotSplittable)


def suggest_attribute_demotion(taxonomy: Taxonomy, name: str) -> RefactorPlan:
    """Turn isa links into an attribution into ``attr`` links."""
    node = taxonomy.node(name)
    if node.kind is not PropertyKind.ATTRIBUTION:
        raise NotApplicable(f"'{name}' is not an attribution")
    removed = [l for l in taxonomy.links if l.kind is LinkKind.ISA and l.target == name]
    if not removed:
        raise NotApplicable(f"attribution '{name}' has no isa-children")
    added = [Link(LinkKind.ATTR, l.source, name) for l in removed]
    notes = _notes(taxonomy, f"'{name}' becomes an attribute value of {len(added)} node(s)")
    plan = RefactorPlan(PlanKind.ATTRIBUTE_DEMOTION, name, (), tuple(removed), tuple(added), notes)
    return _checked(taxonomy, plan, NotApplicable)


def suggest_role_tagging(taxonomy: Taxonomy, name: str) -> RefactorPlan:
    """Detach rigid nodes placed under an anti-rigid role."""
    node = taxonomy.node(name)
    if not node.meta.is_anti_rigid:
        raise NotApplicable(f"'{name}' is not anti-rigid")
    removed = [
        l for l in taxonomy.links
        if l.kind is LinkKind.ISA and l.target == name and taxonomy.nodes[l.source].meta.is_rigid
    ]
    if not removed:
        raise NotApplicable(f"role '{name}' subsumes no rigid node")
    players = ", ".join(l.source for l in removed)
    notes = _notes(taxonomy, f"role '{name}' may be played by: {players}")
    plan = RefactorPlan(PlanKind.ROLE_TAGGING, name, (), tuple(removed), (), notes)
    return _checked(taxonomy, plan, NotApplicable)


_SUGGESTERS = (
    (PlanKind.LEVEL_SPLIT, suggest_level_split, NotSplittable),
    (PlanKind.ATTRIBUTE_DEMOTION, suggest_attribute_demotion, NotApplicable),
    (PlanKind.ROLE_TAGGING, suggest_role_tagging, NotApplicable),
)


def suggest_all(taxonomy: Taxonomy) -> list[RefactorPlan]:
    """Every applicable plan, ordered by kind then target."""
    plans = []
    for _, suggest, skip in _SUGGESTERS:
        for name in sorted(taxonomy.nodes):
            try:
                plans.append(suggest(taxonomy, name))
            except skip:
                pass
    return plans


def apply_plan(taxonomy: Taxonomy, plan: RefactorPlan) -> Taxonomy:
    if plan.is_empty:
        return taxonomy
    if plan.base != taxonomy.digest():
        raise StalePlan(f"plan for '{plan.target}' was computed against a different taxonomy")
    builder = _Builder(taxonomy.without_links(plan.removed_links))
    for node in plan.new_nodes:
        builder.add_node(node)
    for link in plan.added_links:
        try:
            builder.add_link(link)
        except IsaCycle as exc:
            raise AssertionError(f"plan produced an isa cycle: {exc}") from exc
    return builder.freeze()
