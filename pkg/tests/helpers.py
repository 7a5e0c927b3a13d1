"""Shared builders and brute-force oracles for the test suite."""

from __future__ import annotations

import random
import textwrap
from itertools import product

from ontolint.meta import Level, MetaProfile
from ontolint.model import Link, LinkKind, PropertyNode, Taxonomy
from ontolint.syntax import parse_onto

TYPE = "+I+R-D"
CATEGORY = "-I+R-D"
MATERIAL_ROLE = "+I~R+D"
FORMAL_ROLE = "-I~R+D"
ATTRIBUTION = "-I-R-D"


def onto(text: str) -> Taxonomy:
    return parse_onto(textwrap.dedent(text)).lower().taxonomy


def node(name: str, meta: str = TYPE, level: str | None = None, countable: bool | None = None):
    lvl = Level.from_token(level) if level else None
    return PropertyNode(name, MetaProfile.parse(meta), lvl, countable)


def isa(child: str, parent: str) -> Link:
    return Link(LinkKind.ISA, child, parent)


def dep(src: str, tgt: str) -> Link:
    return Link(LinkKind.DEP, src, tgt)


def closure(names, edges) -> dict[str, set[str]]:
    """Floyd-Warshall reachability over (child, parent) pairs, excluding self."""
    names = list(names)
    reach = {a: {b: False for b in names} for a in names}
    for a, b in edges:
        reach[a][b] = True
    for k in names:
        for i in names:
            if reach[i][k]:
                for j in names:
                    if reach[k][j]:
                        reach[i][j] = True
    return {a: {b for b in names if reach[a][b] and b != a} for a in names}


def random_dag(rng: random.Random, max_nodes: int = 12, metas=None, levels: bool = False):
    """Random annotated DAG: edges only point from higher to lower index."""
    metas = metas or [str(m) for m in MetaProfile.all()]
    n = rng.randint(1, max_nodes)
    names = [f"n{i:02d}" for i in range(n)]
    nodes = []
    for name in names:
        lvl = rng.choice([None, *Level]) if levels else None
        nodes.append(PropertyNode(name, MetaProfile.parse(rng.choice(metas)), lvl))
    p = rng.uniform(0.05, 0.45)
    edges = [(names[i], names[j]) for i in range(n) for j in range(i) if rng.random() < p]
    return Taxonomy.build(nodes, [isa(a, b) for a, b in edges]), edges


def all_edge_sets(n: int):
    """Every directed graph (no self loops) on ``n`` labelled nodes."""
    names = [chr(ord("A") + i) for i in range(n)]
    pairs = [(a, b) for a in names for b in names if a != b]
    for mask in product((False, True), repeat=len(pairs)):
        yield names, [p for p, on in zip(pairs, mask) if on]


def is_acyclic(names, edges) -> bool:
    reach = closure(names, edges)
    return all(a not in reach[b] for a, b in edges) and all(a != b for a, b in edges)


def type_forest_oracle(taxonomy: Taxonomy) -> bool:
    """True when the type order, reduced to minimal ancestors, is a forest.

    Works from a Floyd-Warshall closure of the raw isa edges, independent
    of the model's ancestor search.
    """
    names = list(taxonomy.nodes)
    edges = [(l.source, l.target) for l in taxonomy.links if l.kind is LinkKind.ISA]
    reach = closure(names, edges)
    types = {n for n in names if taxonomy.nodes[n].meta.identity.value == "+I"
             and taxonomy.nodes[n].meta.rigidity.value == "+R"}
    for t in types:
        above = reach[t] & types
        reduced = [a for a in above if not any(a in reach[b] for b in above if b != a)]
        if len(reduced) > 1:
            return False
    return True


def key(d) -> tuple:
    return (d.code, d.nodes, tuple(sorted(p.value for p in d.patterns)))


def fixture(name: str) -> Taxonomy:
    from ontolint import fixtures

    return parse_onto(fixtures.read(name), f"{name}.onto").lower().taxonomy
