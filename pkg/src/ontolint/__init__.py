"""Taxonomy linter for meta-property annotated ontologies."""

from ontolint.classify import PropertyKind, check_profile, classify_profile
from ontolint.lint import Diagnostic, DiagnosticReport, LintConfig, Pattern, Severity, lint
from ontolint.meta import Dependence, Identity, Level, MetaProfile, Rigidity
from ontolint.model import (
    DuplicateName,
    IsaCycle,
    Link,
    LinkKind,
    PropertyNode,
    Taxonomy,
    TaxonomyError,
    UnknownNode,
    add_link,
    add_property,
    ic_set,
    isa_ancestors,
)

__version__ = "0.1.0"

__all__ = [
    "Dependence",
    "Diagnostic",
    "DiagnosticReport",
    "DuplicateName",
    "Identity",
    "IsaCycle",
    "Level",
    "LintConfig",
    "Link",
    "LinkKind",
    "MetaProfile",
    "Pattern",
    "PropertyKind",
    "PropertyNode",
    "Rigidity",
    "Severity",
    "Taxonomy",
    "TaxonomyError",
    "UnknownNode",
    "add_link",
    "add_property",
    "check_profile",
    "classify_profile",
    "ic_set",
    "isa_ancestors",
    "lint",
]
