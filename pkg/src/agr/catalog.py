"""Taxonomy catalog of threat attributes used to tag and validate graph
vertices: threat actors, attack vectors, attack locations, system
vulnerabilities, and attack consequences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping

from .errors import CatalogError, SpecParseError
from .graph import AttackGraph, VertexKind


class Dimension(str, Enum):
    THREAT_ACTOR = "threat_actor"
    ATTACK_VECTOR = "attack_vector"
    ATTACK_LOCATION = "attack_location"
    VULNERABILITY = "vulnerability"
    CONSEQUENCE = "consequence"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dimension: Dimension
    name: str
    parent: str | None = None
    description: str = ""


@dataclass(frozen=True)
class ThreatCatalog:
    entries: dict[str, CatalogEntry]

    def lookup(self, entry_id: str) -> CatalogEntry | None:
        return self.entries.get(entry_id)

    def children(self, entry_id: str) -> list[CatalogEntry]:
        return [e for e in self.entries.values() if e.parent == entry_id]


def _actor(eid: str, name: str) -> CatalogEntry:
    return CatalogEntry(eid, Dimension.THREAT_ACTOR, name)


def _vector(eid: str, name: str, parent: str | None = None) -> CatalogEntry:
    return CatalogEntry(eid, Dimension.ATTACK_VECTOR, name, parent)


def _location(eid: str, name: str) -> CatalogEntry:
    return CatalogEntry(eid, Dimension.ATTACK_LOCATION, name)


def _vuln(eid: str, name: str) -> CatalogEntry:
    return CatalogEntry(eid, Dimension.VULNERABILITY, name)


def _consequence(eid: str, name: str) -> CatalogEntry:
    return CatalogEntry(eid, Dimension.CONSEQUENCE, name)


_BUILTIN_ENTRIES: tuple[CatalogEntry, ...] = (
    # Threat actors
    _actor("nation_state", "Nation-state actor"),
    _actor("terrorist_group", "Terrorist group"),
    _actor("rival_organization", "Rival organization"),
    _actor("cybercriminal", "Cybercriminal"),
    _actor("thrill_seeker", "Thrill seeker"),
    _actor("hacktivist", "Hacktivist"),
    _actor("insider", "Insider threat"),
    # Attack vector classes and members
    _vector("cyber", "Cyber domain attack vector"),
    _vector("physical", "Physical attack vector"),
    _vector("cyber_physical", "Cyber-physical attack vector"),
    _vector("denial_of_service", "Denial of service", "cyber"),
    _vector("malware", "Malware", "cyber"),
    _vector("eavesdropping", "Eavesdropping", "cyber"),
    _vector("web_attack", "Web attack", "cyber"),
    _vector("buffer_overflow", "Buffer overflow", "cyber"),
    _vector("man_in_the_middle", "Man-in-the-middle attack", "cyber"),
    _vector("replay", "Replay attack", "cyber"),
    _vector("zero_day", "Zero-day attack", "cyber"),
    _vector("false_data_injection", "False data injection", "cyber"),
    _vector("hardware_backdoor", "Hardware backdoor implant", "physical"),
    _vector("physical_tampering", "Physical tampering", "physical"),
    _vector("social_engineering", "Social engineering", "cyber_physical"),
    # Attack locations
    _location("os_software", "Operating systems and software"),
    _location("firmware", "Firmware"),
    _location("network_communication", "Network communication system"),
    _location("cloud_storage", "Cloud storage"),
    _location("sensors", "Sensors"),
    _location("machines", "Machines"),
    _location("products", "Products"),
    _location("production_process", "Production process"),
    _location("inspection_system", "Inspection system"),
    _location("human_operator", "Human operator"),
    _location("supply_chain_entity", "Supply chain entity"),
    # System vulnerabilities
    _vuln("software_network_vuln", "Software and network vulnerability"),
    _vuln("production_process_vuln", "Production process vulnerability"),
    _vuln("inspection_system_vuln", "Inspection system vulnerability"),
    _vuln("human_element_vuln", "Human element vulnerability"),
    # Consequences
    _consequence("lost_sales", "Lost sales"),
    _consequence("production_waste", "Increased production waste"),
    _consequence("sabotage_recovery", "Recovery costs from sabotage or system damage"),
    _consequence("operational_downtime", "Cost of operational downtime"),
    _consequence("machine_breakdown", "Repair costs from machine breakdown"),
    _consequence("safety_hazard", "Safety hazard to personnel"),
    _consequence("product_damage", "Product-related damages"),
)


def builtin_catalog() -> ThreatCatalog:
    """The built-in catalog. Repeated calls return equal catalogs."""
    return ThreatCatalog(entries={e.id: e for e in _BUILTIN_ENTRIES})


def _check_hierarchy(entries: Mapping[str, CatalogEntry]) -> None:
    for entry in entries.values():
        if entry.parent is None:
            continue
        parent = entries.get(entry.parent)
        if parent is None:
            raise CatalogError(
                f"entry {entry.id!r}: parent {entry.parent!r} does not exist"
            )
        if parent.dimension != entry.dimension:
            raise CatalogError(
                f"entry {entry.id!r} ({entry.dimension.value}) cannot have parent "
                f"{parent.id!r} of dimension {parent.dimension.value}"
            )
    # Walk parent chains to reject cycles.
    for entry in entries.values():
        seen = {entry.id}
        cursor = entry.parent
        while cursor is not None:
            if cursor in seen:
                raise CatalogError(f"parent cycle involving entry {cursor!r}")
            seen.add(cursor)
            cursor = entries[cursor].parent


_ENTRY_KEYS = {"id", "dimension", "name", "parent", "description"}


def load_catalog(document: Any | str | bytes) -> ThreatCatalog:
    """Merge a catalog document over the built-in catalog.

    Document entries win on id collision. The merged hierarchy must be
    closed, acyclic, and dimension-consistent.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise SpecParseError("catalog document must be a JSON object")
    unknown = set(document) - {"entries"}
    if unknown:
        raise SpecParseError(f"unknown key(s) {sorted(unknown)} in catalog document")
    raw_entries = document.get("entries", [])
    if not isinstance(raw_entries, list):
        raise SpecParseError("entries must be an array")

    merged = dict(builtin_catalog().entries)
    for i, raw in enumerate(raw_entries):
        if not isinstance(raw, Mapping):
            raise SpecParseError(f"catalog entry #{i} must be an object")
        unknown = set(raw) - _ENTRY_KEYS
        if unknown:
            raise SpecParseError(f"unknown key(s) {sorted(unknown)} in catalog entry #{i}")
        for key in ("id", "dimension", "name"):
            if key not in raw or not isinstance(raw[key], str):
                raise SpecParseError(f"catalog entry #{i} needs string field {key!r}")
        try:
            dimension = Dimension(raw["dimension"])
        except ValueError:
            raise SpecParseError(
                f"catalog entry {raw['id']!r}: unknown dimension {raw['dimension']!r}"
            ) from None
        parent = raw.get("parent")
        if parent is not None and not isinstance(parent, str):
            raise SpecParseError(f"catalog entry {raw['id']!r}: parent must be a string")
        description = raw.get("description", "")
        if not isinstance(description, str):
            raise SpecParseError(f"catalog entry {raw['id']!r}: description must be a string")
        merged[raw["id"]] = CatalogEntry(
            id=raw["id"],
            dimension=dimension,
            name=raw["name"],
            parent=parent,
            description=description,
        )

    _check_hierarchy(merged)
    return ThreatCatalog(entries=merged)


# Which catalog dimensions each vertex kind may be tagged with. Locations
# additionally accept vulnerability tags: vulnerabilities live in attack
# locations and are carried for reporting only.
_KIND_DIMENSIONS = {
    VertexKind.ATTACK_VECTOR: {Dimension.ATTACK_VECTOR},
    VertexKind.LOCATION: {Dimension.ATTACK_LOCATION, Dimension.VULNERABILITY},
    VertexKind.CONSEQUENCE: {Dimension.CONSEQUENCE},
}


def validate_tags(graph: AttackGraph, catalog: ThreatCatalog) -> list[str]:
    """Check every vertex tag against the catalog.

    Returns violation descriptions (empty when the graph is clean);
    violations are data for reporting, not errors.
    """
    violations: list[str] = []
    for vertex in graph.vertices.values():
        allowed = _KIND_DIMENSIONS[vertex.kind]
        for tag in vertex.taxonomy_tags:
            entry = catalog.lookup(tag)
            if entry is None:
                violations.append(
                    f"vertex {vertex.id!r}: unresolved taxonomy tag {tag!r}"
                )
            elif entry.dimension not in allowed:
                violations.append(
                    f"vertex {vertex.id!r} ({vertex.kind.value}) tagged with "
                    f"{tag!r} of dimension {entry.dimension.value}"
                )
    return violations
