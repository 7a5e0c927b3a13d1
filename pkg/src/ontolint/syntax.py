"""The line-oriented ``.onto`` format and the tab-separated edge importer.

Grammar (``#`` starts a comment, names are case-sensitive)::

    prop <Name> meta=<I><R><D> [level=<level>] [countable=yes|no]
    isa <Child> <Parent>
    dep <Higher> <Lower>
    antonym <A> <B>
    attr <Node> <Attribution>
    model <id>
      world <id> exists=<a,b,...> [<Prop>=<a,b,...>]*
      bind <node> <Prop>
    end
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ontolint.lint import Diagnostic
from ontolint.meta import Level, MetaError, MetaProfile
from ontolint.model import (
    Link,
    LinkKind,
    PropertyNode,
    Taxonomy,
    TaxonomyError,
    _Builder,
)
from ontolint.worlds import MicroModel, WorldsError

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.@-]*\Z")
IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
_LINK_WORDS = {k.value: k for k in LinkKind}
PLACEHOLDER = MetaProfile.parse("-I+R-D")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    start: int
    end: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.start}"

    def to_dict(self) -> dict:
        return {"file": self.file, "line": self.line, "start": self.start, "end": self.end}


@dataclass(frozen=True)
class Issue:
    span: SourceSpan
    message: str

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


class OntoSyntaxError(Exception):
    def __init__(self, issues: list[Issue]):
        self.issues = issues
        super().__init__("\n".join(map(str, issues)))


@dataclass(frozen=True)
class PropDecl:
    node: PropertyNode
    span: SourceSpan


@dataclass(frozen=True)
class LinkDecl:
    link: Link
    span: SourceSpan


@dataclass(frozen=True)
class WorldDecl:
    id: str
    exists: tuple[str, ...]
    extensions: Mapping[str, tuple[str, ...]]
    span: SourceSpan


@dataclass(frozen=True)
class BindDecl:
    node: str
    prop: str
    span: SourceSpan


@dataclass(frozen=True)
class ModelDecl:
    id: str
    worlds: tuple[WorldDecl, ...]
    binds: tuple[BindDecl, ...]
    span: SourceSpan

    def to_model(self) -> MicroModel:
        return MicroModel.of((w.id, w.exists, w.extensions) for w in self.worlds)


@dataclass(frozen=True)
class Lowered:
    taxonomy: Taxonomy
    models: dict[str, MicroModel]
    bindings: dict[str, dict[str, str]]


@dataclass(frozen=True)
class OntoDocument:
    file: str
    props: tuple[PropDecl, ...] = ()
    links: tuple[LinkDecl, ...] = ()
    models: tuple[ModelDecl, ...] = ()
    notes: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def lower(self) -> Lowered:
        taxonomy = Taxonomy.build((p.node for p in self.props), (l.link for l in self.links))
        models = {m.id: m.to_model() for m in self.models}
        bindings = {m.id: {b.node: b.prop for b in m.binds} for m in self.models}
        return Lowered(taxonomy, models, bindings)

    def spans_for(self, diagnostic: Diagnostic) -> list[SourceSpan]:
        spans = []
        if diagnostic.link is not None:
            spans.extend(l.span for l in self.links if l.link == diagnostic.link)
        by_name = {p.node.name: p.span for p in self.props}
        spans.extend(by_name[n] for n in diagnostic.nodes if n in by_name)
        return list(dict.fromkeys(spans))


def _tokens(line: str) -> list[tuple[str, int, int]]:
    return [(m.group(0), m.start() + 1, m.end()) for m in re.finditer(r"\S+", line)]


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(v for v in value.split(",") if v) if value else ()


class _Parser:
    def __init__(self, file: str):
        self.file = file
        self.issues: list[Issue] = []
        self.props: list[PropDecl] = []
        self.names: set[str] = set()
        self.links: list[LinkDecl] = []
        self.models: list[ModelDecl] = []
        self._model: Optional[tuple[str, SourceSpan, list[WorldDecl], list[BindDecl]]] = None
        self._world_lines = 0

    def error(self, span: SourceSpan, message: str) -> None:
        self.issues.append(Issue(span, message))

    def name(self, token: str, span: SourceSpan, what: str = "name") -> bool:
        if NAME.match(token):
            return True
        self.error(span, f"invalid {what} {token!r}")
        return False

    def feed(self, lineno: int, raw: str) -> None:
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            return
        span = SourceSpan(self.file, lineno, toks[0][1], toks[-1][2])
        head, args = toks[0][0], [t[0] for t in toks[1:]]
        if self._model is not None:
            self.model_line(head, args, span)
        elif head == "prop":
            self.prop(args, span)
        elif head in _LINK_WORDS:
            self.link(_LINK_WORDS[head], args, span)
        elif head == "model":
            if len(args) != 1 or not IDENT.match(args[0]):
                self.error(span, "expected 'model <id>'")
                args = ["?"]
            self._model = (args[0], span, [], [])
            self._world_lines = 0
        elif head == "end":
            self.error(span, "'end' outside a model block")
        else:
            self.error(span, f"unknown statement {head!r}")

    def prop(self, args: list[str], span: SourceSpan) -> None:
        if not args:
            self.error(span, "expected 'prop <Name> meta=...'")
            return
        name, options = args[0], args[1:]
        if not self.name(name, span, "property name"):
            return
        values: dict[str, str] = {}
        for opt in options:
            key, eq, value = opt.partition("=")
            if not eq or key not in ("meta", "level", "countable"):
                self.error(span, f"unexpected option {opt!r}")
                return
            if key in values:
                self.error(span, f"option {key!r} given twice")
                return
            values[key] = value
        if "meta" not in values:
            self.error(span, f"property {name!r} lacks meta=")
            return
        try:
            meta = MetaProfile.parse(values["meta"])
        except MetaError as exc:
            self.error(span, str(exc))
            return
        level = None
        if "level" in values:
            try:
                level = Level.from_token(values["level"])
            except ValueError as exc:
                self.error(span, str(exc))
                return
        countable = None
        if "countable" in values:
            if values["countable"] not in ("yes", "no"):
                self.error(span, f"countable must be yes or no, not {values['countable']!r}")
                return
            countable = values["countable"] == "yes"
        if name in self.names:
            self.error(span, f"duplicate property {name!r}")
            return
        self.names.add(name)
        self.props.append(PropDecl(PropertyNode(name, meta, level, countable), span))

    def link(self, kind: LinkKind, args: list[str], span: SourceSpan) -> None:
        if len(args) != 2:
            self.error(span, f"expected '{kind.value} <A> <B>'")
            return
        if all(self.name(a, span) for a in args):
            self.links.append(LinkDecl(Link(kind, args[0], args[1]), span))

    def model_line(self, head: str, args: list[str], span: SourceSpan) -> None:
        mid, mspan, worlds, binds = self._model
        if head == "end":
            if args:
                self.error(span, "unexpected text after 'end'")
            if not self._world_lines:
                self.error(mspan, f"model {mid!r} has no worlds")
            self.models.append(ModelDecl(mid, tuple(worlds), tuple(binds), mspan))
            self._model = None
        elif head == "world":
            self._world_lines += 1
            self.world(args, span, worlds)
        elif head == "bind":
            if len(args) != 2:
                self.error(span, "expected 'bind <node> <Prop>'")
            else:
                binds.append(BindDecl(args[0], args[1], span))
        else:
            self.error(span, f"unexpected {head!r} inside model {mid!r}")

    def world(self, args: list[str], span: SourceSpan, worlds: list[WorldDecl]) -> None:
        if not args or not IDENT.match(args[0]):
            self.error(span, "expected 'world <id> exists=...'")
            return
        wid, exists, ext = args[0], None, {}
        for opt in args[1:]:
            key, eq, value = opt.partition("=")
            if not eq:
                self.error(span, f"expected key=value, got {opt!r}")
                return
            members = _split_list(value)
            bad = [m for m in members if not IDENT.match(m)]
            if bad:
                self.error(span, f"invalid individual {bad[0]!r}")
                return
            if key == "exists":
                if exists is not None:
                    self.error(span, "exists= given twice")
                    return
                exists = members
            elif not self.name(key, span, "property"):
                return
            elif key in ext:
                self.error(span, f"property {key!r} given twice")
                return
            else:
                ext[key] = members
        if exists is None:
            self.error(span, f"world {wid!r} lacks exists=")
            return
        if any(w.id == wid for w in worlds):
            self.error(span, f"duplicate world {wid!r}")
            return
        for prop, members in ext.items():
            outside = [m for m in members if m not in exists]
            if outside:
                self.error(span, f"{prop} holds of {outside[0]!r}, which does not exist in {wid!r}")
                return
        worlds.append(WorldDecl(wid, exists, ext, span))

    def finish(self) -> None:
        if self._model is not None:
            self.error(self._model[1], f"model {self._model[0]!r} is missing 'end'")
            self._model = None


def _resolve(doc: OntoDocument) -> list[Issue]:
    """Name resolution and graph checks, so that lowering cannot fail."""
    issues = []
    builder = _Builder(Taxonomy())
    for p in doc.props:
        builder.add_node(p.node)
    for l in doc.links:
        try:
            builder.add_link(l.link)
        except TaxonomyError as exc:
            issues.append(Issue(l.span, str(exc)))
    for m in doc.models:
        vocabulary = {p for w in m.worlds for p in w.extensions}
        try:
            m.to_model()
        except WorldsError as exc:
            issues.append(Issue(m.span, str(exc)))
        seen = set()
        for b in m.binds:
            if b.node not in builder.nodes:
                issues.append(Issue(b.span, f"unknown node {b.node!r}"))
            if b.prop not in vocabulary:
                issues.append(Issue(b.span, f"unknown property {b.prop!r} in model {m.id!r}"))
            if b.node in seen:
                issues.append(Issue(b.span, f"node {b.node!r} bound twice"))
            seen.add(b.node)
    return issues


def parse_onto(text: str, file: str = "<string>") -> OntoDocument:
    """Parse ``.onto`` source; raise OntoSyntaxError listing every problem."""
    parser = _Parser(file)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parser.feed(lineno, raw)
    parser.finish()
    doc = OntoDocument(file, tuple(parser.props), tuple(parser.links), tuple(parser.models))
    issues = parser.issues or _resolve(doc)
    if issues:
        raise OntoSyntaxError(issues)
    return doc


def _prop_line(node: PropertyNode) -> str:
    parts = ["prop", node.name, f"meta={node.meta}"]
    if node.level is not None:
        parts.append(f"level={node.level.token}")
    if node.countable is not None:
        parts.append(f"countable={'yes' if node.countable else 'no'}")
    return " ".join(parts)


def emit_onto(
    taxonomy: Taxonomy,
    models: Optional[Mapping[str, MicroModel]] = None,
    bindings: Optional[Mapping[str, Mapping[str, str]]] = None,
) -> str:
    """Serialize back to ``.onto``; parsing the result gives an equal taxonomy."""
    lines = [_prop_line(n) for n in taxonomy.nodes.values()]
    lines.extend(str(l) for l in taxonomy.links)
    for mid, model in (models or {}).items():
        lines.append(f"model {mid}")
        for w in model.worlds:
            parts = [f"world {w.id}", "exists=" + ",".join(sorted(w.exists))]
            parts.extend(f"{p}={','.join(sorted(w.ext(p)))}" for p in sorted(model.vocabulary))
            lines.append("  " + " ".join(parts))
        for node, prop in (bindings or {}).get(mid, {}).items():
            lines.append(f"  bind {node} {prop}")
        lines.append("end")
    return "\n".join(lines) + "\n" if lines else ""


def import_edges(
    edge_text: str,
    sidecar_text: str,
    edge_file: str = "<edges>",
    sidecar_file: str = "<sidecar>",
) -> OntoDocument:
    """Build a document from ``child<TAB>parent`` edges plus a profile sidecar.

    Sidecar lines are ``name<TAB>meta[<TAB>level][<TAB>countable]``.  Names
    that only occur in the edge file get the placeholder profile ``-I+R-D``
    and an import note.
    """
    issues: list[Issue] = []
    props: dict[str, PropDecl] = {}
    for lineno, raw in _data_lines(sidecar_text):
        span = SourceSpan(sidecar_file, lineno, 1, len(raw))
        fields = raw.split("\t")
        if not 2 <= len(fields) <= 4:
            issues.append(Issue(span, "expected name<TAB>meta[<TAB>level][<TAB>countable]"))
            continue
        name, meta_text, *rest = (f.strip() for f in fields)
        level_text = rest[0] if rest else ""
        countable_text = rest[1] if len(rest) > 1 else ""
        try:
            if not NAME.match(name):
                raise ValueError(f"invalid name {name!r}")
            if name in props:
                raise ValueError(f"duplicate property {name!r}")
            meta = MetaProfile.parse(meta_text)
            level = Level.from_token(level_text) if level_text else None
            if countable_text not in ("", "yes", "no"):
                raise ValueError(f"countable must be yes or no, not {countable_text!r}")
        except ValueError as exc:
            issues.append(Issue(span, str(exc)))
            continue
        countable = None if not countable_text else countable_text == "yes"
        props[name] = PropDecl(PropertyNode(name, meta, level, countable), span)

    links: list[LinkDecl] = []
    notes: list[Diagnostic] = []
    for lineno, raw in _data_lines(edge_text):
        span = SourceSpan(edge_file, lineno, 1, len(raw))
        fields = [f.strip() for f in raw.split("\t")]
        if len(fields) != 2 or not all(NAME.match(f) for f in fields):
            issues.append(Issue(span, "expected child<TAB>parent"))
            continue
        for name in fields:
            if name not in props:
                props[name] = PropDecl(PropertyNode(name, PLACEHOLDER), span)
                notes.append(Diagnostic(
                    "W205", (name,),
                    f"no sidecar entry for '{name}'; placeholder profile {PLACEHOLDER} assigned",
                ))
        links.append(LinkDecl(Link(LinkKind.ISA, fields[0], fields[1]), span))

    doc = OntoDocument(edge_file, tuple(props.values()), tuple(links), (), tuple(notes))
    issues = issues or _resolve(doc)
    if issues:
        raise OntoSyntaxError(issues)
    return doc


def _data_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() and not raw.lstrip().startswith("#"):
            yield lineno, raw.rstrip("\r\n")
