"""Presentation helpers: analyst-facing text tables, stable JSON payloads,
and DOT export for graph visualization.

Display conventions: probabilities print as given, weights to 2 decimals,
risk coefficients to 4 decimals. All computation stays at full precision;
rounding happens only here.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .analysis import PropagationResult, RiskReport
from .graph import AttackGraph, VertexKind, degree_profile, graph_to_spec


def format_probability(p: float) -> str:
    return f"{p:g}"


def format_weight(w: float) -> str:
    return f"{w:.2f}"


def format_risk(coefficient: float) -> str:
    text = f"{coefficient:.4f}".rstrip("0")
    return text.rstrip(".") or "0"


def format_risk_cell(coefficient: float, value: float | None) -> str:
    """Cumulative-risk cell: symbolic "<coeff> x C" without a cost, the
    monetary value with one."""
    if value is None:
        return f"{format_risk(coefficient)} × C"
    return f"{format_risk(coefficient)} × C = {value:,.2f}"


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def path_arrow(vertices: Iterable[str]) -> str:
    return " -> ".join(vertices)


def edges_table(graph: AttackGraph) -> str:
    rows = [
        [f"{e.source}->{e.target}", format_probability(e.probability), format_weight(e.weight)]
        for e in graph.edges.values()
    ]
    return _table(["Edge", "Probability", "Weight"], rows)


def report_table(report: RiskReport) -> str:
    if report.unreachable:
        return (
            f"No attack path from {report.start} to {report.target}: "
            "target unreachable."
        )
    rows = []
    for i, entry in enumerate(report.entries):
        marker = "*" if i == report.shortest_index else ""
        rows.append(
            [
                f"{i + 1}{marker}",
                path_arrow(entry.path.vertices),
                str(entry.path.hop_length),
                format_weight(entry.path.cumulative_weight),
                format_risk_cell(entry.risk_coefficient, entry.risk_value),
            ]
        )
    table = _table(
        ["#", "Attack path", "Hops", "Cum. weight", "Cumulative risk"], rows
    )
    notes = ["* shortest attack path (lowest cumulative weight)"]
    if not report.shortest_is_max_risk and report.entries:
        notes.append(
            "note: the maximum-probability path (row 1) differs from the "
            "shortest-weight path"
        )
    if report.truncated:
        notes.append("warning: enumeration truncated by limits; ranking may be partial")
    return table + "\n" + "\n".join(notes)


def propagation_text(result: PropagationResult) -> str:
    lines = [
        f"start: {result.start}",
        f"visited ({len(result.visited)}): {', '.join(result.visited)}",
        "tree edges:",
    ]
    lines += [f"  {parent} -> {child}" for parent, child in result.tree_edges]
    return "\n".join(lines)


def report_payload(report: RiskReport) -> dict[str, Any]:
    return {
        "start": report.start,
        "target": report.target,
        "consequence_cost": report.consequence_cost,
        "shortest_index": report.shortest_index,
        "truncated": report.truncated,
        "unreachable": report.unreachable,
        "paths": [
            {
                "vertices": list(entry.path.vertices),
                "hop_length": entry.path.hop_length,
                "cumulative_weight": entry.path.cumulative_weight,
                "risk_coefficient": entry.risk_coefficient,
                "risk_value": entry.risk_value,
                "shortest": i == report.shortest_index,
            }
            for i, entry in enumerate(report.entries)
        ],
    }


def propagation_payload(result: PropagationResult) -> dict[str, Any]:
    return {
        "start": result.start,
        "visited": list(result.visited),
        "tree_edges": [list(edge) for edge in result.tree_edges],
    }


def graph_payload(graph: AttackGraph) -> dict[str, Any]:
    """Enriched graph view: spec-shaped vertices/edges plus derived weights
    and the degree profile. The "spec" entry re-ingests via build_graph."""
    profile = degree_profile(graph)
    return {
        "allow_direct_consequence": graph.allow_direct_consequence,
        "vertices": [
            {
                "id": v.id,
                "kind": v.kind.value,
                "label": v.label,
                "taxonomy": list(v.taxonomy_tags),
                "cost": graph.consequence_costs.get(v.id),
            }
            for v in graph.vertices.values()
        ],
        "edges": [
            {
                "from": e.source,
                "to": e.target,
                "probability": e.probability,
                "weight": e.weight,
                "metrics": None
                if e.metrics is None
                else {
                    "av": e.metrics.av,
                    "ac": e.metrics.ac,
                    "pr": e.metrics.pr,
                    "ui": e.metrics.ui,
                    "rl": e.metrics.rl,
                },
            }
            for e in graph.edges.values()
        ],
        "degree_profile": {
            vid: {"in": d[0], "out": d[1]} for vid, d in profile.items()
        },
        "spec": graph_to_spec(graph),
    }


def stable_json(payload: Any) -> str:
    """Deterministic serialization: identical payloads give identical bytes."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


_KIND_SHAPES = {
    VertexKind.ATTACK_VECTOR: "diamond",
    VertexKind.LOCATION: "box",
    VertexKind.CONSEQUENCE: "ellipse",
}


def _dot_quote(text: str) -> str:
    escaped = (
        text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    )
    return f'"{escaped}"'


def to_dot(
    graph: AttackGraph,
    *,
    highlight_edges: set[tuple[str, str]] | None = None,
    tree_edges: set[tuple[str, str]] | None = None,
    visited: set[str] | None = None,
    start: str | None = None,
) -> str:
    """Render the graph in DOT.

    Vertex shapes follow kind; edge labels show the probability. Optional
    highlight_edges get emphasized (shortest-path view); tree_edges render
    dashed against solid unexplored edges, with visited vertices filled
    (propagation view).
    """
    highlight_edges = highlight_edges or set()
    tree_edges = tree_edges or set()
    visited = visited or set()
    lines = ["digraph attack_graph {", "  rankdir=LR;"]
    for vertex in graph.vertices.values():
        label = vertex.id + "\n" + vertex.label
        attrs = [
            f"shape={_KIND_SHAPES[vertex.kind]}",
            f"label={_dot_quote(label)}",
        ]
        if vertex.id in visited:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgrey")
        if vertex.id == start:
            attrs.append("peripheries=2")
        lines.append(f"  {_dot_quote(vertex.id)} [{', '.join(attrs)}];")
    for edge in graph.edges.values():
        attrs = [f"label={_dot_quote(format_probability(edge.probability))}"]
        if (edge.source, edge.target) in highlight_edges:
            attrs.append("color=red")
            attrs.append("penwidth=2.5")
        if (edge.source, edge.target) in tree_edges:
            attrs.append("style=dashed")
        lines.append(
            f"  {_dot_quote(edge.source)} -> {_dot_quote(edge.target)} "
            f"[{', '.join(attrs)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
