"""Meta-property tags and ontological levels.

The tag spelling follows the printed notation used for kinds of universals:
``+I``/``-I`` for identity, ``+R``/``-R``/``~R`` for rigidity and
``+D``/``-D`` for dependence.  Only ASCII ``-`` is accepted.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterator, NamedTuple


class Identity(str, Enum):
    CARRIES = "+I"
    LACKS = "-I"


class Rigidity(str, Enum):
    RIGID = "+R"
    NON_RIGID = "-R"
    ANTI_RIGID = "~R"


class Dependence(str, Enum):
    DEPENDENT = "+D"
    INDEPENDENT = "-D"


_AXES = {"I": ("identity", Identity), "R": ("rigidity", Rigidity), "D": ("dependence", Dependence)}
_TAG = re.compile(r"[+~-][A-Za-z]")


class MetaError(ValueError):
    """Malformed meta-profile triple."""


@dataclass(frozen=True)
class MetaProfile:
    identity: Identity
    rigidity: Rigidity
    dependence: Dependence

    def __str__(self) -> str:
        return f"{self.identity.value}{self.rigidity.value}{self.dependence.value}"

    @property
    def is_rigid(self) -> bool:
        return self.rigidity is Rigidity.RIGID

    @property
    def is_anti_rigid(self) -> bool:
        return self.rigidity is Rigidity.ANTI_RIGID

    @property
    def is_non_rigid(self) -> bool:
        # anti-rigid properties are also non-rigid
        return self.rigidity is not Rigidity.RIGID

    @classmethod
    def parse(cls, text: str) -> MetaProfile:
        """Parse a tag triple such as ``+I~R+D``.

        Tags may appear in any order but each axis exactly once.  The error
        message names the first missing axis, if any.
        """
        pos = 0
        found: dict[str, Enum] = {}
        while pos < len(text):
            m = _TAG.match(text, pos)
            if m is None:
                raise MetaError(f"malformed meta tag at {text[pos:]!r} in {text!r}")
            tag = m.group(0)
            axis = tag[1]
            if axis not in _AXES:
                raise MetaError(f"unknown meta axis {axis!r} in {text!r}")
            name, enum_cls = _AXES[axis]
            if name in found:
                raise MetaError(f"{name} given twice in {text!r}")
            try:
                found[name] = enum_cls(tag)
            except ValueError:
                raise MetaError(f"invalid {name} tag {tag!r}") from None
            pos = m.end()
        for axis, (name, enum_cls) in _AXES.items():
            if name not in found:
                options = "/".join(e.value for e in enum_cls)
                raise MetaError(f"missing {name} tag ({options}) in {text!r}")
        return cls(**found)  # type: ignore[arg-type]

    @classmethod
    def all(cls) -> Iterator[MetaProfile]:
        """Every one of the 12 possible profiles, in declaration order."""
        for i, r, d in itertools.product(Identity, Rigidity, Dependence):
            yield cls(i, r, d)


class Level(IntEnum):
    """Ontological levels, totally ordered.

    ``TOPOLOGICAL`` and ``MORPHOLOGICAL`` are the two layers of the
    physical level.
    """

    ATOMIC = 0
    STATIC = 1
    MEREOLOGICAL = 2
    TOPOLOGICAL = 3
    MORPHOLOGICAL = 4
    FUNCTIONAL = 5
    BIOLOGICAL = 6
    INTENTIONAL = 7
    SOCIAL = 8

    @property
    def token(self) -> str:
        return self.name.lower()

    @classmethod
    def from_token(cls, token: str) -> Level:
        try:
            if not token.islower():
                raise KeyError(token)
            return cls[token.upper()]
        except KeyError:
            raise ValueError(f"unknown level {token!r}") from None

    @property
    def conditions(self) -> Conditions:
        return LEVEL_CONDITIONS[self]


class Conditions(NamedTuple):
    individuation: str
    persistence: str


# necessary (not sufficient) identity conditions per level
LEVEL_CONDITIONS: dict[Level, Conditions] = {
    Level.ATOMIC: Conditions("minimal size", "spatio-temporal continuity"),
    Level.STATIC: Conditions("mereological sum of atoms", "same properties"),
    Level.MEREOLOGICAL: Conditions("mereological sum of entities", "same parts"),
    Level.TOPOLOGICAL: Conditions("self-connection", "similar topology"),
    Level.MORPHOLOGICAL: Conditions("proximity", "similar shape"),
    Level.FUNCTIONAL: Conditions("purpose", "persistence of functionality"),
    Level.BIOLOGICAL: Conditions("presence of life", "persistence of life"),
    Level.INTENTIONAL: Conditions("intentional behavior", "persistence of intentional behavior"),
    Level.SOCIAL: Conditions("inter-agent connections", "persistence of inter-agent connections"),
}
