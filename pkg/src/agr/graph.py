"""Attack-graph data model: classed vertices, weighted directed edges,
exploitation-probability scoring, and document ingestion.

Graphs are immutable values. Every operation that changes a graph returns a
new one, so instances can be shared freely across threads and what-if
sessions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, Mapping

from .errors import (
    DomainError,
    GraphValidationError,
    SpecParseError,
    UnknownEdgeError,
)


class VertexKind(str, Enum):
    ATTACK_VECTOR = "attack_vector"
    LOCATION = "location"
    CONSEQUENCE = "consequence"


# Directed edges may only connect these (source kind, target kind) pairs.
# attack_vector -> consequence is additionally allowed when the graph spec
# sets allow_direct_consequence.
_ALLOWED_KIND_PAIRS = frozenset(
    {
        (VertexKind.ATTACK_VECTOR, VertexKind.LOCATION),
        (VertexKind.LOCATION, VertexKind.LOCATION),
        (VertexKind.LOCATION, VertexKind.CONSEQUENCE),
    }
)
_DIRECT_CONSEQUENCE_PAIR = (VertexKind.ATTACK_VECTOR, VertexKind.CONSEQUENCE)


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    label: str
    taxonomy_tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExploitMetrics:
    """Scoring quintuple for vector-to-location edges.

    av, ac, pr and ui are normalized to (0, 1] with higher values meaning
    the attack is easier to carry out (remote reach, low complexity, little
    privilege, no user interaction). rl is >= 1 and grows with the strength
    of deployed defenses, so it divides the final probability.
    """

    av: float
    ac: float
    pr: float
    ui: float
    rl: float

    def __post_init__(self) -> None:
        for name in ("av", "ac", "pr", "ui"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise DomainError(f"metric {name}={value!r} must be in (0, 1]")
        if self.rl < 1.0:
            raise DomainError(f"metric rl={self.rl!r} must be >= 1")


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    probability: float
    weight: float
    metrics: ExploitMetrics | None = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class EdgeUpdate:
    """One probability patch: either a direct probability or fresh metrics."""

    source: str
    target: str
    probability: float | None = None
    metrics: ExploitMetrics | None = None


@dataclass(frozen=True, eq=True)
class AttackGraph:
    """Weighted directed attack graph.

    adjacency holds, per vertex, its outgoing (target id, weight) pairs in
    ascending weight order (ties broken by target id) so that traversals are
    reproducible run to run.
    """

    vertices: dict[str, Vertex]
    edges: dict[tuple[str, str], Edge]
    adjacency: dict[str, tuple[tuple[str, float], ...]]
    consequence_costs: dict[str, float | None] = field(default_factory=dict)
    allow_direct_consequence: bool = False

    def vertex(self, vertex_id: str) -> Vertex:
        return self.vertices[vertex_id]

    def edge(self, source: str, target: str) -> Edge:
        try:
            return self.edges[(source, target)]
        except KeyError:
            raise UnknownEdgeError(f"no edge {source} -> {target}") from None

    def has_edge(self, source: str, target: str) -> bool:
        return (source, target) in self.edges

    def neighbors(self, vertex_id: str) -> tuple[tuple[str, float], ...]:
        return self.adjacency[vertex_id]

    def vertices_of_kind(self, kind: VertexKind) -> list[Vertex]:
        return [v for v in self.vertices.values() if v.kind == kind]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def exploitation_probability(metrics: ExploitMetrics) -> float:
    """Probability that an attack vector compromises a location.

    Product of the reach, complexity, privilege and interaction scores,
    divided by the remediation level. The metric ranges guarantee a result
    in (0, 1].
    """
    return metrics.av * metrics.ac * metrics.pr * metrics.ui / metrics.rl


def edge_weight(probability: float) -> float:
    """Edge weight as the reciprocal of its probability, at full precision.

    Probability 0 is rejected rather than mapped to an infinite weight: an
    impossible transition is expressed by omitting the edge entirely.
    """
    if not 0.0 < probability <= 1.0:
        if probability == 0:
            raise DomainError(
                "probability 0 is not a valid edge; omit the edge instead"
            )
        raise DomainError(f"probability {probability!r} must be in (0, 1]")
    return 1.0 / probability


def _sorted_adjacency(
    vertices: Mapping[str, Vertex], edges: Mapping[tuple[str, str], Edge]
) -> dict[str, tuple[tuple[str, float], ...]]:
    out: dict[str, list[tuple[str, float]]] = {vid: [] for vid in vertices}
    for edge in edges.values():
        out[edge.source].append((edge.target, edge.weight))
    return {
        vid: tuple(sorted(pairs, key=lambda p: (p[1], p[0])))
        for vid, pairs in out.items()
    }


_VERTEX_KEYS = {"id", "kind", "label", "taxonomy", "cost"}
_EDGE_KEYS = {"from", "to", "probability", "metrics"}
_METRIC_KEYS = {"av", "ac", "pr", "ui", "rl"}
_TOP_KEYS = {"allow_direct_consequence", "vertices", "edges"}


def _require_keys(obj: Mapping[str, Any], allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SpecParseError(
            f"unknown key(s) {sorted(unknown)} in {context}; allowed: {sorted(allowed)}"
        )


def _as_document(spec: Mapping[str, Any] | str | bytes) -> Mapping[str, Any]:
    if isinstance(spec, (str, bytes)):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(spec, Mapping):
        raise SpecParseError("graph spec must be a JSON object")
    return spec


def _parse_metrics(raw: Any, context: str) -> dict[str, float]:
    """Shape-check a metrics object; range checks happen on construction."""
    if not isinstance(raw, Mapping):
        raise SpecParseError(f"metrics of {context} must be an object")
    _require_keys(raw, _METRIC_KEYS, f"metrics of {context}")
    missing = _METRIC_KEYS - set(raw)
    if missing:
        raise SpecParseError(f"metrics of {context} missing {sorted(missing)}")
    for key in _METRIC_KEYS:
        if not isinstance(raw[key], (int, float)) or isinstance(raw[key], bool):
            raise SpecParseError(f"metric {key} of {context} must be a number")
    return {k: float(raw[k]) for k in _METRIC_KEYS}


def build_graph(
    spec: Mapping[str, Any] | str | bytes,
    catalog: "Any | None" = None,
) -> AttackGraph:
    """Parse and validate a GraphSpec document into an AttackGraph.

    Edges declared with metrics get their probability from
    exploitation_probability; edges declared with an explicit probability
    take it verbatim. Weights are the exact reciprocals.

    When a ThreatCatalog is supplied, vertex taxonomy tags must resolve in
    it; without one, tag checking is left to validate_tags.

    Raises SpecParseError for malformed documents and GraphValidationError
    (listing every violation found) for semantic problems.
    """
    doc = _as_document(spec)
    _require_keys(doc, _TOP_KEYS, "graph spec")

    allow_direct = doc.get("allow_direct_consequence", False)
    if not isinstance(allow_direct, bool):
        raise SpecParseError("allow_direct_consequence must be a boolean")

    raw_vertices = doc.get("vertices", [])
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise SpecParseError("vertices and edges must be arrays")

    violations: list[str] = []
    vertices: dict[str, Vertex] = {}
    costs: dict[str, float | None] = {}

    for i, raw in enumerate(raw_vertices):
        if not isinstance(raw, Mapping):
            raise SpecParseError(f"vertex #{i} must be an object")
        _require_keys(raw, _VERTEX_KEYS, f"vertex #{i}")
        for key in ("id", "kind", "label"):
            if key not in raw or not isinstance(raw[key], str):
                raise SpecParseError(f"vertex #{i} needs string field {key!r}")
        vid = raw["id"]
        try:
            kind = VertexKind(raw["kind"])
        except ValueError:
            raise SpecParseError(
                f"vertex {vid!r}: unknown kind {raw['kind']!r}"
            ) from None
        tags = raw.get("taxonomy", [])
        if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
            raise SpecParseError(f"vertex {vid!r}: taxonomy must be a string array")

        if not vid:
            violations.append("vertex with empty id")
            continue
        if vid in vertices:
            violations.append(f"duplicate vertex id {vid!r}")
            continue
        vertices[vid] = Vertex(id=vid, kind=kind, label=raw["label"], taxonomy_tags=tuple(tags))

        if "cost" in raw:
            cost = raw["cost"]
            if not isinstance(cost, (int, float)) or isinstance(cost, bool):
                raise SpecParseError(f"vertex {vid!r}: cost must be a number")
            if kind is not VertexKind.CONSEQUENCE:
                violations.append(
                    f"vertex {vid!r}: cost is only valid on consequence vertices"
                )
            else:
                costs[vid] = float(cost)
        elif kind is VertexKind.CONSEQUENCE:
            costs[vid] = None

    if catalog is not None:
        for vertex in vertices.values():
            for tag in vertex.taxonomy_tags:
                if catalog.lookup(tag) is None:
                    violations.append(
                        f"vertex {vertex.id!r}: unresolved taxonomy tag {tag!r}"
                    )

    edges: dict[tuple[str, str], Edge] = {}
    for i, raw in enumerate(raw_edges):
        if not isinstance(raw, Mapping):
            raise SpecParseError(f"edge #{i} must be an object")
        _require_keys(raw, _EDGE_KEYS, f"edge #{i}")
        for key in ("from", "to"):
            if key not in raw or not isinstance(raw[key], str):
                raise SpecParseError(f"edge #{i} needs string field {key!r}")
        src, dst = raw["from"], raw["to"]
        name = f"edge {src}->{dst}"

        has_p = "probability" in raw
        has_m = "metrics" in raw
        if has_p and has_m:
            violations.append(f"{name}: declares both probability and metrics")
            continue
        if not has_p and not has_m:
            violations.append(f"{name}: must declare probability or metrics")
            continue

        metrics: ExploitMetrics | None = None
        if has_m:
            values = _parse_metrics(raw["metrics"], name)
            try:
                metrics = ExploitMetrics(**values)
            except DomainError as exc:
                violations.append(f"{name}: {exc}")
                continue
            probability = exploitation_probability(metrics)
        else:
            p_raw = raw["probability"]
            if not isinstance(p_raw, (int, float)) or isinstance(p_raw, bool):
                raise SpecParseError(f"{name}: probability must be a number")
            probability = float(p_raw)

        structural_ok = True
        if src not in vertices:
            violations.append(f"{name}: unknown vertex {src!r}")
            structural_ok = False
        if dst not in vertices:
            violations.append(f"{name}: unknown vertex {dst!r}")
            structural_ok = False
        if structural_ok:
            if src == dst:
                violations.append(f"{name}: self-loops are not allowed")
                structural_ok = False
            elif (src, dst) in edges:
                violations.append(f"{name}: duplicate edge for ordered pair")
                structural_ok = False
            else:
                pair = (vertices[src].kind, vertices[dst].kind)
                if pair == _DIRECT_CONSEQUENCE_PAIR and allow_direct:
                    pass
                elif pair not in _ALLOWED_KIND_PAIRS:
                    violations.append(
                        f"{name}: forbidden kind pair {pair[0].value} -> {pair[1].value}"
                    )
                    structural_ok = False
            if metrics is not None and structural_ok:
                pair = (vertices[src].kind, vertices[dst].kind)
                if pair != (VertexKind.ATTACK_VECTOR, VertexKind.LOCATION):
                    violations.append(
                        f"{name}: metrics are only valid on attack_vector -> location edges"
                    )
                    structural_ok = False

        try:
            weight = edge_weight(probability)
        except DomainError as exc:
            violations.append(f"{name}: {exc}")
            continue
        if not structural_ok:
            continue
        edges[(src, dst)] = Edge(
            source=src, target=dst, probability=probability, weight=weight, metrics=metrics
        )

    if violations:
        raise GraphValidationError(violations)

    return AttackGraph(
        vertices=vertices,
        edges=edges,
        adjacency=_sorted_adjacency(vertices, edges),
        consequence_costs=costs,
        allow_direct_consequence=allow_direct,
    )


def parse_updates(doc: Any | str | bytes) -> list[EdgeUpdate]:
    """Parse an update document: a JSON array of per-edge patches."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise SpecParseError("update document must be a JSON array")
    updates: list[EdgeUpdate] = []
    for i, raw in enumerate(doc):
        if not isinstance(raw, Mapping):
            raise SpecParseError(f"update #{i} must be an object")
        _require_keys(raw, _EDGE_KEYS, f"update #{i}")
        for key in ("from", "to"):
            if key not in raw or not isinstance(raw[key], str):
                raise SpecParseError(f"update #{i} needs string field {key!r}")
        has_p = "probability" in raw
        has_m = "metrics" in raw
        if has_p == has_m:
            raise SpecParseError(
                f"update #{i} must declare exactly one of probability/metrics"
            )
        name = f"update {raw['from']}->{raw['to']}"
        if has_m:
            values = _parse_metrics(raw["metrics"], name)
            updates.append(
                EdgeUpdate(source=raw["from"], target=raw["to"], metrics=ExploitMetrics(**values))
            )
        else:
            p_raw = raw["probability"]
            if not isinstance(p_raw, (int, float)) or isinstance(p_raw, bool):
                raise SpecParseError(f"{name}: probability must be a number")
            updates.append(
                EdgeUpdate(source=raw["from"], target=raw["to"], probability=float(p_raw))
            )
    return updates


def apply_update(graph: AttackGraph, updates: Iterable[EdgeUpdate]) -> AttackGraph:
    """Return a new graph with the given edge probabilities replaced.

    The input graph is never modified. All updates are validated before any
    is applied, so a failing list leaves no partial state behind. Updating
    an edge with a direct probability discards any stored metrics (the
    probability no longer derives from them); updating with metrics
    recomputes the probability.

    Raises UnknownEdgeError or DomainError; both imply the returned graph
    was never constructed.
    """
    updates = list(updates)
    new_edges = dict(graph.edges)
    for update in updates:
        key = (update.source, update.target)
        if key not in new_edges:
            raise UnknownEdgeError(f"no edge {update.source} -> {update.target}")
        current = new_edges[key]
        if update.metrics is not None:
            pair = (
                graph.vertex(update.source).kind,
                graph.vertex(update.target).kind,
            )
            if pair != (VertexKind.ATTACK_VECTOR, VertexKind.LOCATION):
                raise DomainError(
                    f"edge {update.source}->{update.target}: metrics are only valid "
                    "on attack_vector -> location edges"
                )
            probability = exploitation_probability(update.metrics)
            new_edges[key] = replace(
                current,
                probability=probability,
                weight=edge_weight(probability),
                metrics=update.metrics,
            )
        else:
            assert update.probability is not None
            new_edges[key] = replace(
                current,
                probability=update.probability,
                weight=edge_weight(update.probability),
                metrics=None,
            )
    return AttackGraph(
        vertices=graph.vertices,
        edges=new_edges,
        adjacency=_sorted_adjacency(graph.vertices, new_edges),
        consequence_costs=graph.consequence_costs,
        allow_direct_consequence=graph.allow_direct_consequence,
    )


def degree_profile(graph: AttackGraph) -> dict[str, tuple[int, int]]:
    """Per-vertex (in-degree, out-degree) counts."""
    in_deg = {vid: 0 for vid in graph.vertices}
    out_deg = {vid: 0 for vid in graph.vertices}
    for source, target in graph.edges:
        out_deg[source] += 1
        in_deg[target] += 1
    return {vid: (in_deg[vid], out_deg[vid]) for vid in graph.vertices}


def graph_to_spec(graph: AttackGraph) -> dict[str, Any]:
    """Serialize a graph back into its GraphSpec document form.

    The result re-ingests through build_graph into an equal graph: metrics
    edges keep their metrics (probability recomputes identically), explicit
    edges keep their probability verbatim.
    """
    vertices = []
    for vertex in graph.vertices.values():
        entry: dict[str, Any] = {
            "id": vertex.id,
            "kind": vertex.kind.value,
            "label": vertex.label,
        }
        if vertex.taxonomy_tags:
            entry["taxonomy"] = list(vertex.taxonomy_tags)
        cost = graph.consequence_costs.get(vertex.id)
        if cost is not None:
            entry["cost"] = cost
        vertices.append(entry)

    edges = []
    for edge in graph.edges.values():
        entry = {"from": edge.source, "to": edge.target}
        if edge.metrics is not None:
            entry["metrics"] = {
                "av": edge.metrics.av,
                "ac": edge.metrics.ac,
                "pr": edge.metrics.pr,
                "ui": edge.metrics.ui,
                "rl": edge.metrics.rl,
            }
        else:
            entry["probability"] = edge.probability
        edges.append(entry)

    spec: dict[str, Any] = {"vertices": vertices, "edges": edges}
    if graph.allow_direct_consequence:
        spec["allow_direct_consequence"] = True
    return spec
