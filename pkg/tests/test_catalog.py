"""Taxonomy catalog: builtin content, document merging, tag validation."""

from __future__ import annotations

import pytest

from agr import (
    CatalogError,
    Dimension,
    SpecParseError,
    build_graph,
    builtin_catalog,
    load_catalog,
    validate_tags,
)


class TestBuiltinCatalog:
    def test_man_in_the_middle_is_cyber_vector(self):
        entry = builtin_catalog().lookup("man_in_the_middle")
        assert entry is not None
        assert entry.dimension is Dimension.ATTACK_VECTOR
        assert entry.parent == "cyber"

    def test_inspection_system_is_location(self):
        entry = builtin_catalog().lookup("inspection_system")
        assert entry is not None
        assert entry.dimension is Dimension.ATTACK_LOCATION

    def test_unknown_id_not_found(self):
        assert builtin_catalog().lookup("nonexistent") is None

    def test_stable_across_calls(self):
        assert builtin_catalog().entries == builtin_catalog().entries

    @pytest.mark.parametrize(
        "entry_id,parent",
        [
            ("denial_of_service", "cyber"),
            ("malware", "cyber"),
            ("eavesdropping", "cyber"),
            ("replay", "cyber"),
            ("zero_day", "cyber"),
            ("false_data_injection", "cyber"),
            ("hardware_backdoor", "physical"),
            ("physical_tampering", "physical"),
            ("social_engineering", "cyber_physical"),
        ],
    )
    def test_vector_families(self, entry_id, parent):
        entry = builtin_catalog().lookup(entry_id)
        assert entry is not None and entry.parent == parent

    def test_location_classes_present(self):
        catalog = builtin_catalog()
        for entry_id in (
            "os_software",
            "firmware",
            "network_communication",
            "cloud_storage",
            "sensors",
            "machines",
            "products",
            "production_process",
            "inspection_system",
            "human_operator",
            "supply_chain_entity",
        ):
            entry = catalog.lookup(entry_id)
            assert entry is not None and entry.dimension is Dimension.ATTACK_LOCATION

    def test_consequence_classes_present(self):
        catalog = builtin_catalog()
        consequences = [
            e for e in catalog.entries.values() if e.dimension is Dimension.CONSEQUENCE
        ]
        assert len(consequences) == 7
        assert catalog.lookup("lost_sales") is not None
        assert catalog.lookup("production_waste") is not None

    def test_vulnerability_and_actor_classes_present(self):
        catalog = builtin_catalog()
        assert sum(
            e.dimension is Dimension.VULNERABILITY for e in catalog.entries.values()
        ) == 4
        assert sum(
            e.dimension is Dimension.THREAT_ACTOR for e in catalog.entries.values()
        ) == 7


class TestLoadCatalog:
    def test_empty_document_equals_builtin(self):
        assert load_catalog({"entries": []}).entries == builtin_catalog().entries
        assert load_catalog("{}").entries == builtin_catalog().entries

    def test_extension_under_existing_parent(self):
        catalog = load_catalog(
            {
                "entries": [
                    {
                        "id": "laser_cutting",
                        "dimension": "attack_location",
                        "name": "Laser cutting process",
                        "parent": "production_process",
                    }
                ]
            }
        )
        entry = catalog.lookup("laser_cutting")
        assert entry is not None and entry.parent == "production_process"

    def test_document_wins_on_collision(self):
        catalog = load_catalog(
            {
                "entries": [
                    {"id": "malware", "dimension": "attack_vector", "name": "Renamed"}
                ]
            }
        )
        assert catalog.lookup("malware").name == "Renamed"

    def test_merge_idempotent(self):
        doc = {
            "entries": [
                {
                    "id": "laser_cutting",
                    "dimension": "attack_location",
                    "name": "Laser cutting",
                    "parent": "production_process",
                }
            ]
        }
        assert load_catalog(doc).entries == load_catalog(doc).entries

    def test_cross_dimension_parent_rejected(self):
        with pytest.raises(CatalogError, match="dimension"):
            load_catalog(
                {
                    "entries": [
                        {
                            "id": "weird",
                            "dimension": "consequence",
                            "name": "Weird",
                            "parent": "cyber",
                        }
                    ]
                }
            )

    def test_missing_parent_rejected(self):
        with pytest.raises(CatalogError, match="does not exist"):
            load_catalog(
                {
                    "entries": [
                        {
                            "id": "orphan",
                            "dimension": "attack_vector",
                            "name": "Orphan",
                            "parent": "ghost",
                        }
                    ]
                }
            )

    def test_parent_cycle_rejected(self):
        with pytest.raises(CatalogError, match="cycle"):
            load_catalog(
                {
                    "entries": [
                        {"id": "a", "dimension": "attack_vector", "name": "a", "parent": "b"},
                        {"id": "b", "dimension": "attack_vector", "name": "b", "parent": "a"},
                    ]
                }
            )

    def test_malformed_document_rejected(self):
        with pytest.raises(SpecParseError):
            load_catalog("[1, 2]")
        with pytest.raises(SpecParseError):
            load_catalog({"entries": [{"id": "x"}]})
        with pytest.raises(SpecParseError):
            load_catalog({"entries": [], "extra": True})


class TestValidateTags:
    def test_bundled_fixture_is_clean(self, manufacturing_graph, small_graph):
        catalog = builtin_catalog()
        assert validate_tags(manufacturing_graph, catalog) == []
        assert validate_tags(small_graph, catalog) == []

    def test_dimension_mismatch_flagged(self):
        graph = build_graph(
            {
                "vertices": [
                    {
                        "id": "l",
                        "kind": "location",
                        "label": "l",
                        "taxonomy": ["lost_sales"],
                    }
                ],
                "edges": [],
            }
        )
        violations = validate_tags(graph, builtin_catalog())
        assert len(violations) == 1
        assert "lost_sales" in violations[0]

    def test_unresolved_tag_flagged(self):
        graph = build_graph(
            {
                "vertices": [
                    {
                        "id": "a",
                        "kind": "attack_vector",
                        "label": "a",
                        "taxonomy": ["quantum_attack"],
                    }
                ],
                "edges": [],
            }
        )
        violations = validate_tags(graph, builtin_catalog())
        assert len(violations) == 1
        assert "quantum_attack" in violations[0]

    def test_vulnerability_tags_allowed_on_locations(self):
        graph = build_graph(
            {
                "vertices": [
                    {
                        "id": "l",
                        "kind": "location",
                        "label": "l",
                        "taxonomy": ["inspection_system", "inspection_system_vuln"],
                    }
                ],
                "edges": [],
            }
        )
        assert validate_tags(graph, builtin_catalog()) == []
