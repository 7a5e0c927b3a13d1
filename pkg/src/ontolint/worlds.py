"""Finite possible-worlds models for the modal meta-properties.

A :class:`MicroModel` is a list of worlds, each with the set of individuals
that actually exist there and the extension of every vocabulary property.
Extensions must be subsets of the existence set, so a property never holds
of an individual in a world where it does not exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ontolint.lint import Diagnostic
from ontolint.meta import Dependence, Rigidity
from ontolint.model import Taxonomy


class WorldsError(ValueError):
    pass


class UnknownProperty(WorldsError):
    def __init__(self, name: str):
        super().__init__(f"unknown property {name!r}")
        self.name = name


class UnknownIndividual(WorldsError):
    def __init__(self, name: str):
        super().__init__(f"unknown individual {name!r}")
        self.name = name


@dataclass(frozen=True)
class World:
    id: str
    exists: frozenset[str]
    extensions: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        # an empty extension and an absent one mean the same thing
        object.__setattr__(
            self, "extensions", {p: frozenset(e) for p, e in sorted(self.extensions.items()) if e}
        )

    def ext(self, prop: str) -> frozenset[str]:
        return self.extensions.get(prop, frozenset())


@dataclass(frozen=True)
class MicroModel:
    worlds: tuple[World, ...]
    vocabulary: frozenset[str]
    individuals: frozenset[str]

    def __post_init__(self):
        if not self.worlds:
            raise WorldsError("a micro-model needs at least one world")
        ids = [w.id for w in self.worlds]
        if len(set(ids)) != len(ids):
            raise WorldsError("duplicate world id")
        for w in self.worlds:
            if not w.exists <= self.individuals:
                raise WorldsError(f"world {w.id!r} mentions undeclared individuals")
            for prop, ext in w.extensions.items():
                if prop not in self.vocabulary:
                    raise UnknownProperty(prop)
                extra = ext - w.exists
                if extra:
                    raise WorldsError(
                        f"{prop} holds of non-existent {sorted(extra)[0]!r} in world {w.id!r}"
                    )

    @classmethod
    def of(
        cls,
        worlds: Iterable[tuple[str, Iterable[str], Mapping[str, Iterable[str]]]],
        vocabulary: Optional[Iterable[str]] = None,
        individuals: Optional[Iterable[str]] = None,
    ) -> MicroModel:
        """Build from plain ``(id, exists, {prop: members})`` triples.

        Vocabulary and individuals default to whatever the worlds mention.
        """
        worlds = [(wid, frozenset(ex), dict(ext)) for wid, ex, ext in worlds]
        built = tuple(World(wid, ex, ext) for wid, ex, ext in worlds)
        if vocabulary is None:
            vocabulary = {p for _, _, ext in worlds for p in ext}
        if individuals is None:
            individuals = {x for w in built for x in w.exists}
        return cls(built, frozenset(vocabulary), frozenset(individuals))

    def _require(self, prop: str) -> None:
        if prop not in self.vocabulary:
            raise UnknownProperty(prop)

    def instances(self, prop: str) -> frozenset[str]:
        """Individuals that have ``prop`` in at least one world."""
        self._require(prop)
        return frozenset().union(*(w.ext(prop) for w in self.worlds))


def is_degenerate(model: MicroModel, prop: str) -> bool:
    """True when ``prop`` holds of nothing in any world."""
    return not model.instances(prop)


def is_rigid(model: MicroModel, prop: str) -> bool:
    # whoever has prop somewhere has it everywhere; vacuous for empty props
    everywhere = frozenset.intersection(*(w.ext(prop) for w in model.worlds))
    return model.instances(prop) <= everywhere


def is_anti_rigid(model: MicroModel, prop: str) -> bool:
    instances = model.instances(prop)
    if not instances:
        return False
    return all(any(x not in w.ext(prop) for w in model.worlds) for x in instances)


def rigid_dependence(model: MicroModel, x: str, y: str) -> bool:
    """In every world where ``x`` exists, ``y`` exists too."""
    for ind in (x, y):
        if ind not in model.individuals:
            raise UnknownIndividual(ind)
    return all(y in w.exists for w in model.worlds if x in w.exists)


def generic_dependence(model: MicroModel, x: str, prop: str) -> bool:
    """In every world where ``x`` exists, something has ``prop``."""
    if x not in model.individuals:
        raise UnknownIndividual(x)
    model._require(prop)
    return all(w.ext(prop) for w in model.worlds if x in w.exists)


def class_dependence(model: MicroModel, prop: str, other: str) -> bool:
    """Every instance of ``prop`` coexists with a different instance of ``other``."""
    model._require(prop)
    model._require(other)
    for w in model.worlds:
        q = w.ext(other)
        for x in w.ext(prop):
            if not q - {x}:
                return False
    return True


_MODES = {
    "rigid": rigid_dependence,
    "generic": generic_dependence,
    "class": class_dependence,
}


def check_dependence(model: MicroModel, mode: str, args: tuple[str, str]) -> bool:
    """Dispatch on ``mode``: ``rigid(x, y)``, ``generic(x, Q)`` or ``class(P, Q)``."""
    try:
        fn = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown dependence mode {mode!r}") from None
    return fn(model, *args)


@dataclass(frozen=True)
class PartialProfile:
    """Rigidity and dependence recovered from extensions.

    Identity is not recoverable from extensions and stays ``None``.
    """

    rigidity: Rigidity
    dependence: Dependence
    identity: None = None


def infer_profile(model: MicroModel, prop: str) -> PartialProfile:
    if is_rigid(model, prop):
        rigidity = Rigidity.RIGID
    elif is_anti_rigid(model, prop):
        rigidity = Rigidity.ANTI_RIGID
    else:
        rigidity = Rigidity.NON_RIGID
    dependent = any(
        class_dependence(model, prop, other) for other in sorted(model.vocabulary) if other != prop
    )
    return PartialProfile(rigidity, Dependence.DEPENDENT if dependent else Dependence.INDEPENDENT)


def rigidity_compatible(declared: Rigidity, inferred: Rigidity) -> bool:
    """Anti-rigid extensions also satisfy a plain non-rigid declaration."""
    if declared is Rigidity.NON_RIGID:
        return inferred is not Rigidity.RIGID
    return declared is inferred


def cross_validate(
    taxonomy: Taxonomy, model: MicroModel, binding: Mapping[str, str], model_id: str = "model"
) -> list[Diagnostic]:
    """W207 findings for bound nodes whose declared tags the model refutes."""
    out = []
    for name in sorted(binding):
        prop = binding[name]
        node = taxonomy.node(name)
        inferred = infer_profile(model, prop)
        problems = []
        if not rigidity_compatible(node.meta.rigidity, inferred.rigidity):
            problems.append(f"rigidity {node.meta.rigidity.value} vs {inferred.rigidity.value}")
        if node.meta.dependence is not inferred.dependence:
            problems.append(f"dependence {node.meta.dependence.value} vs {inferred.dependence.value}")
        if problems:
            msg = (
                f"'{name}' declares tags refuted by property {prop} in model {model_id}: "
                + "; ".join(problems)
            )
            out.append(Diagnostic("W207", (name,), msg))
    return out
