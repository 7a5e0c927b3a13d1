"""Property nodes and the immutable taxonomy graph."""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from ontolint.classify import PropertyKind, classify_profile
from ontolint.meta import Level, MetaProfile

ICSet = frozenset  # frozenset[str] of IC tokens


class TaxonomyError(Exception):
    """Base class for construction and lookup failures."""


class DuplicateName(TaxonomyError):
    def __init__(self, name: str):
        super().__init__(f"duplicate property {name!r}")
        self.name = name


class UnknownNode(TaxonomyError):
    def __init__(self, name: str):
        super().__init__(f"unknown node {name!r}")
        self.name = name


class IsaCycle(TaxonomyError):
    """Adding an isa link would close a cycle.

    ``path`` runs from the new link's parent back down to its child along
    existing isa links; the rejected link closes it.
    """

    def __init__(self, path: tuple[str, ...]):
        shown = " -> ".join(path + path[:1])
        super().__init__(f"isa cycle: {shown}")
        self.path = path


class InvalidLink(TaxonomyError):
    pass


class LinkKind(str, Enum):
    ISA = "isa"
    DEP = "dep"
    ANTONYM = "antonym"
    ATTR = "attr"


@dataclass(frozen=True)
class Link:
    kind: LinkKind
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.kind.value} {self.source} {self.target}"


@dataclass(frozen=True)
class PropertyNode:
    name: str
    meta: MetaProfile
    level: Optional[Level] = None
    countable: Optional[bool] = None

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"invalid property name {self.name!r}")

    @property
    def kind(self) -> PropertyKind:
        return classify_profile(self.meta)

    @property
    def own_ic(self) -> Optional[str]:
        """Synthetic identity-criterion token; only types introduce one."""
        if self.kind is PropertyKind.TYPE:
            return f"ic:{self.name}"
        return None


@dataclass(frozen=True)
class Taxonomy:
    """Nodes plus typed links.  The isa sub-graph is always acyclic.

    Values are never mutated; the module-level construction functions
    return new taxonomies.  ``notes`` collects authoring remarks such as
    ignored duplicate links and does not take part in equality.
    """

    nodes: Mapping[str, PropertyNode] = field(default_factory=lambda: MappingProxyType({}))
    links: tuple[Link, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(
        cls,
        nodes: Iterable[PropertyNode] = (),
        links: Iterable[Link] = (),
        notes: Iterable[str] = (),
    ) -> Taxonomy:
        builder = _Builder(cls())
        for node in nodes:
            builder.add_node(node)
        for link in links:
            builder.add_link(link)
        return builder.freeze(extra_notes=notes)

    def __contains__(self, name: object) -> bool:
        return name in self.nodes

    def node(self, name: str) -> PropertyNode:
        try:
            return self.nodes[name]
        except KeyError:
            raise UnknownNode(name) from None

    def links_of(self, kind: LinkKind) -> list[Link]:
        return [link for link in self.links if link.kind is kind]

    @cached_property
    def _isa_parents(self) -> dict[str, tuple[str, ...]]:
        parents: dict[str, list[str]] = {name: [] for name in self.nodes}
        for link in self.links:
            if link.kind is LinkKind.ISA:
                parents[link.source].append(link.target)
        return {name: tuple(sorted(ps)) for name, ps in parents.items()}

    @cached_property
    def _isa_children(self) -> dict[str, tuple[str, ...]]:
        children: dict[str, list[str]] = {name: [] for name in self.nodes}
        for link in self.links:
            if link.kind is LinkKind.ISA:
                children[link.target].append(link.source)
        return {name: tuple(sorted(cs)) for name, cs in children.items()}

    @cached_property
    def _ancestor_cache(self) -> dict[str, list[str]]:
        return {}

    def parents(self, name: str) -> tuple[str, ...]:
        """Direct isa-parents, sorted by name."""
        self.node(name)
        return self._isa_parents[name]

    def children(self, name: str) -> tuple[str, ...]:
        """Direct isa-children, sorted by name."""
        self.node(name)
        return self._isa_children[name]

    def digest(self) -> str:
        """Content hash over nodes (name order) and links (link order)."""
        h = hashlib.sha256()
        for name in sorted(self.nodes):
            n = self.nodes[name]
            level = n.level.token if n.level is not None else "-"
            countable = {None: "-", True: "yes", False: "no"}[n.countable]
            h.update(f"prop {name} {n.meta} {level} {countable}\n".encode())
        for link in self.links:
            h.update(f"{link}\n".encode())
        return h.hexdigest()

    def without_links(self, links: Iterable[Link]) -> Taxonomy:
        drop = set(links)
        missing = drop.difference(self.links)
        if missing:
            raise InvalidLink(f"link not present: {sorted(map(str, missing))[0]}")
        return Taxonomy(self.nodes, tuple(l for l in self.links if l not in drop), self.notes)


class _Builder:
    """Mutable staging area used to validate links incrementally."""

    def __init__(self, base: Taxonomy):
        self.nodes = dict(base.nodes)
        self.links = list(base.links)
        self.seen = set(base.links)
        self.notes = list(base.notes)
        self.parents: dict[str, list[str]] = {name: [] for name in self.nodes}
        for link in self.links:
            if link.kind is LinkKind.ISA:
                self.parents[link.source].append(link.target)

    def add_node(self, node: PropertyNode) -> None:
        if node.name in self.nodes:
            raise DuplicateName(node.name)
        self.nodes[node.name] = node
        self.parents[node.name] = []

    def add_link(self, link: Link) -> None:
        for end in (link.source, link.target):
            if end not in self.nodes:
                raise UnknownNode(end)
        if link in self.seen:
            self.notes.append(f"duplicate link ignored: {link}")
            return
        if link.source == link.target:
            if link.kind is LinkKind.ISA:
                raise IsaCycle((link.source,))
            if link.kind is LinkKind.DEP:
                raise InvalidLink(f"self dependence on {link.source!r}")
        if link.kind is LinkKind.ISA:
            path = self._upward_path(link.target, link.source)
            if path is not None:
                raise IsaCycle(path)
            self.parents[link.source].append(link.target)
        self.links.append(link)
        self.seen.add(link)

    def _upward_path(self, start: str, goal: str) -> Optional[tuple[str, ...]]:
        # DFS over isa-parents; taxonomies are shallow so this stays cheap
        stack = [(start, (start,))]
        visited = {start}
        while stack:
            name, path = stack.pop()
            if name == goal:
                return path
            for parent in sorted(self.parents[name], reverse=True):
                if parent not in visited:
                    visited.add(parent)
                    stack.append((parent, path + (parent,)))
        return None

    def freeze(self, extra_notes: Iterable[str] = ()) -> Taxonomy:
        return Taxonomy(
            MappingProxyType(dict(self.nodes)),
            tuple(self.links),
            tuple(self.notes) + tuple(extra_notes),
        )


def add_property(taxonomy: Taxonomy, node: PropertyNode) -> Taxonomy:
    builder = _Builder(taxonomy)
    builder.add_node(node)
    return builder.freeze()


def add_link(taxonomy: Taxonomy, link: Link) -> Taxonomy:
    """Return ``taxonomy`` plus ``link``.

    Raises UnknownNode for unresolved endpoints and IsaCycle when an isa
    link would close a cycle.  A link already present is ignored and a note
    is recorded instead.
    """
    builder = _Builder(taxonomy)
    builder.add_link(link)
    return builder.freeze()


def isa_ancestors(taxonomy: Taxonomy, name: str) -> list[str]:
    """Transitive isa-parents ordered by (shortest distance, name)."""
    taxonomy.node(name)
    cache = taxonomy._ancestor_cache
    if name in cache:
        return list(cache[name])
    dist = {name: 0}
    queue = deque([name])
    while queue:
        current = queue.popleft()
        for parent in taxonomy._isa_parents[current]:
            if parent not in dist:
                dist[parent] = dist[current] + 1
                queue.append(parent)
    del dist[name]
    result = sorted(dist, key=lambda n: (dist[n], n))
    cache[name] = result
    return list(result)


def ic_set(taxonomy: Taxonomy, name: str) -> frozenset[str]:
    """IC tokens of ``name``: its own plus every one inherited along isa."""
    tokens = set()
    for n in [name, *isa_ancestors(taxonomy, name)]:
        token = taxonomy.nodes[n].own_ic
        if token is not None:
            tokens.add(token)
    return frozenset(tokens)
