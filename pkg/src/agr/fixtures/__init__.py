"""Bundled example graphs: a connected manufacturing system with two attack
vectors, the matching defense-update document, and a six-vertex sample used
in tests and documentation."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

MANUFACTURING = "manufacturing.json"
MANUFACTURING_DEFENSES = "manufacturing_defenses.json"
SAMPLE_SMALL = "sample_small.json"


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture."""
    return Path(str(resources.files(__name__).joinpath(name)))


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")
