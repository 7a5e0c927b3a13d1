"""Bundled example ontologies."""

from importlib import resources
from pathlib import Path

NAMES = ("particulars", "universals", "roles", "overloading", "dependence")


def path(name: str) -> Path:
    """Filesystem path of the bundled ``<name>.onto``."""
    return Path(str(resources.files(__name__).joinpath(f"{name}.onto")))


def read(name: str) -> str:
    return path(name).read_text(encoding="utf-8")
