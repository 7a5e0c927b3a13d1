"""Kinds of universals derived from meta-profiles."""

from __future__ import annotations

from enum import Enum

from ontolint.meta import Dependence, Identity, MetaProfile, Rigidity


class PropertyKind(str, Enum):
    TYPE = "type"
    CATEGORY = "category"
    MATERIAL_ROLE = "material_role"
    FORMAL_ROLE = "formal_role"
    ATTRIBUTION = "attribution"
    UNCLASSIFIABLE = "unclassifiable"

    @property
    def is_role(self) -> bool:
        return self in (PropertyKind.MATERIAL_ROLE, PropertyKind.FORMAL_ROLE)


def classify_profile(meta: MetaProfile) -> PropertyKind:
    """Map a profile onto a kind of universal.

    Rigidity and identity alone decide types and categories; roles need
    strict anti-rigidity plus dependence.  Anything else is unclassifiable.
    """
    carries = meta.identity is Identity.CARRIES
    if meta.rigidity is Rigidity.RIGID:
        return PropertyKind.TYPE if carries else PropertyKind.CATEGORY
    if meta.rigidity is Rigidity.ANTI_RIGID and meta.dependence is Dependence.DEPENDENT:
        return PropertyKind.MATERIAL_ROLE if carries else PropertyKind.FORMAL_ROLE
    if (
        meta.rigidity is Rigidity.NON_RIGID
        and meta.dependence is Dependence.INDEPENDENT
        and not carries
    ):
        return PropertyKind.ATTRIBUTION
    return PropertyKind.UNCLASSIFIABLE


def check_profile(meta: MetaProfile) -> list[str]:
    """Diagnostic codes raised by a profile on its own."""
    codes = []
    if meta.rigidity is Rigidity.ANTI_RIGID and meta.dependence is Dependence.INDEPENDENT:
        codes.append("E106")
    if classify_profile(meta) is PropertyKind.UNCLASSIFIABLE:
        codes.append("W205")
    return codes
