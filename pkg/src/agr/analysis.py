"""Attack propagation, exhaustive simple-path enumeration, shortest-path
search, and risk scoring over attack graphs.

All functions here are pure: they never modify the input graph, so analyses
for different (start, target) pairs can run in parallel.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import (
    AttackGraphError,
    PathNotInGraphError,
    UnknownVertexError,
    UnreachableTargetError,
    WrongKindError,
)
from .graph import AttackGraph, VertexKind

DEFAULT_MAX_HOPS = 32
DEFAULT_MAX_PATHS = 10_000

# Relative tolerance for the runtime cross-check between Dijkstra and
# exhaustive enumeration.
_CROSS_CHECK_RTOL = 1e-9


@dataclass(frozen=True)
class PropagationResult:
    """Depth-first discovery from one attack vector."""

    start: str
    visited: tuple[str, ...]
    tree_edges: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class AttackPath:
    """A simple vector -> locations -> consequence path."""

    vertices: tuple[str, ...]
    cumulative_weight: float
    success_probability: float

    @property
    def hop_length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class PathEnumeration:
    paths: tuple[AttackPath, ...]
    truncated: bool


@dataclass(frozen=True)
class RankedPath:
    path: AttackPath
    risk_coefficient: float
    risk_value: float | None


@dataclass(frozen=True)
class RiskReport:
    """Ranked attack paths for one (vector, consequence) pair.

    entries are sorted by descending risk coefficient, so entry 0 is the
    maximum-probability path; shortest_index marks the minimum-cumulative-
    weight path found by Dijkstra, which need not be the same entry.
    """

    start: str
    target: str
    entries: tuple[RankedPath, ...]
    shortest_index: int | None
    consequence_cost: float | None
    truncated: bool
    unreachable: bool

    @property
    def shortest(self) -> RankedPath | None:
        if self.shortest_index is None:
            return None
        return self.entries[self.shortest_index]

    @property
    def max_risk(self) -> RankedPath | None:
        return self.entries[0] if self.entries else None

    @property
    def shortest_is_max_risk(self) -> bool:
        return self.shortest_index == 0


def _require_vertex(graph: AttackGraph, vertex_id: str, kind: VertexKind, role: str):
    if vertex_id not in graph.vertices:
        raise UnknownVertexError(f"unknown vertex {vertex_id!r}")
    vertex = graph.vertex(vertex_id)
    if vertex.kind != kind:
        raise WrongKindError(
            f"{role} {vertex_id!r} has kind {vertex.kind.value}, expected {kind.value}"
        )
    return vertex


def _ordered_neighbors(graph: AttackGraph, vertex_id: str) -> list[tuple[str, float]]:
    """Adjacency order (ascending weight, then id), except that an attack
    vector explores its location neighbors before any direct-consequence
    neighbors."""
    pairs = graph.adjacency[vertex_id]
    if graph.vertex(vertex_id).kind is not VertexKind.ATTACK_VECTOR:
        return list(pairs)
    locations = [p for p in pairs if graph.vertex(p[0]).kind is VertexKind.LOCATION]
    others = [p for p in pairs if graph.vertex(p[0]).kind is not VertexKind.LOCATION]
    return locations + others


def propagate(graph: AttackGraph, start: str) -> PropagationResult:
    """Depth-first attack propagation from one attack vector.

    Neighbors are explored nearest first (smallest edge weight, ties by
    id), each vertex is visited at most once, and the discovery edges form
    a tree spanning everything reachable from the start. Runs in
    O(|V| + |E|).
    """
    _require_vertex(graph, start, VertexKind.ATTACK_VECTOR, "start")

    visited = [start]
    seen = {start}
    tree: list[tuple[str, str]] = []
    stack = [(start, iter(_ordered_neighbors(graph, start)))]
    while stack:
        vertex_id, neighbor_iter = stack[-1]
        for neighbor, _weight in neighbor_iter:
            if neighbor in seen:
                continue
            seen.add(neighbor)
            visited.append(neighbor)
            tree.append((vertex_id, neighbor))
            stack.append((neighbor, iter(_ordered_neighbors(graph, neighbor))))
            break
        else:
            stack.pop()
    return PropagationResult(start=start, visited=tuple(visited), tree_edges=tuple(tree))


def _make_path(graph: AttackGraph, vertices: Sequence[str]) -> AttackPath:
    weights = []
    probabilities = []
    for src, dst in zip(vertices, vertices[1:]):
        edge = graph.edge(src, dst)
        weights.append(edge.weight)
        probabilities.append(edge.probability)
    return AttackPath(
        vertices=tuple(vertices),
        cumulative_weight=sum(weights),
        success_probability=prod(probabilities),
    )


def enumerate_paths(
    graph: AttackGraph,
    start: str,
    target: str,
    *,
    max_hops: int = DEFAULT_MAX_HOPS,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> PathEnumeration:
    """All simple paths from an attack vector to a consequence.

    Paths are returned in lexicographic order of their vertex-id sequence.
    When either limit cuts the search short the result is flagged truncated
    instead of raising.
    """
    _require_vertex(graph, start, VertexKind.ATTACK_VECTOR, "start")
    _require_vertex(graph, target, VertexKind.CONSEQUENCE, "target")

    paths: list[AttackPath] = []
    truncated = False
    on_path = {start}
    path = [start]

    def walk(vertex_id: str) -> bool:
        # Returns False once the path budget is exhausted.
        nonlocal truncated
        if vertex_id == target:
            if len(paths) >= max_paths:
                truncated = True
                return False
            paths.append(_make_path(graph, path))
            return True
        if len(path) - 1 >= max_hops:
            if graph.adjacency[vertex_id]:
                truncated = True
            return True
        for neighbor, _weight in sorted(graph.adjacency[vertex_id]):
            if neighbor in on_path:
                continue
            on_path.add(neighbor)
            path.append(neighbor)
            keep_going = walk(neighbor)
            path.pop()
            on_path.discard(neighbor)
            if not keep_going:
                return False
        return True

    walk(start)
    return PathEnumeration(paths=tuple(paths), truncated=truncated)


def shortest_path(graph: AttackGraph, start: str, target: str) -> AttackPath:
    """Minimum-cumulative-weight path from an attack vector to a consequence.

    Dijkstra over the reciprocal-probability weights (all >= 1, so never
    negative). Ties on weight prefer fewer hops, then the lexicographically
    smallest vertex-id sequence, making the result deterministic.

    Raises UnreachableTargetError when no directed path exists.
    """
    _require_vertex(graph, start, VertexKind.ATTACK_VECTOR, "start")
    _require_vertex(graph, target, VertexKind.CONSEQUENCE, "target")

    # Heap keys are (distance, hops, vertex sequence); every edge strictly
    # increases all three components, so the first pop per vertex is final
    # under the composite order.
    heap: list[tuple[float, int, tuple[str, ...]]] = [(0.0, 0, (start,))]
    settled: set[str] = set()
    while heap:
        dist, hops, path = heapq.heappop(heap)
        vertex_id = path[-1]
        if vertex_id in settled:
            continue
        if vertex_id == target:
            return _make_path(graph, path)
        settled.add(vertex_id)
        for neighbor, weight in graph.adjacency[vertex_id]:
            if neighbor in settled:
                continue
            heapq.heappush(heap, (dist + weight, hops + 1, path + (neighbor,)))
    raise UnreachableTargetError(f"no attack path from {start!r} to {target!r}")


def path_risk(
    graph: AttackGraph,
    path: AttackPath | Sequence[str],
    cost: float | None = None,
) -> tuple[float, float | None]:
    """Risk of one attack path: (coefficient, monetary value or None).

    The coefficient is the product of all edge probabilities along the
    path: the entry-exploitation probability times every transition
    probability. When a consequence cost is known the monetary risk is
    coefficient * cost; otherwise it stays symbolic (None).
    """
    vertices = path.vertices if isinstance(path, AttackPath) else tuple(path)
    if len(vertices) < 2:
        raise PathNotInGraphError("a path needs at least two vertices")
    coefficient = 1.0
    for src, dst in zip(vertices, vertices[1:]):
        if not graph.has_edge(src, dst):
            raise PathNotInGraphError(f"path uses missing edge {src} -> {dst}")
        coefficient *= graph.edge(src, dst).probability
    return coefficient, (coefficient * cost if cost is not None else None)


def rank_paths(
    graph: AttackGraph,
    start: str,
    target: str,
    cost: float | None = None,
    *,
    max_hops: int = DEFAULT_MAX_HOPS,
    max_paths: int = DEFAULT_MAX_PATHS,
    cross_check: bool = True,
) -> RiskReport:
    """Enumerate, score, and rank every attack path for one pair.

    Combines enumerate_paths, path_risk, and shortest_path into a single
    report sorted by descending risk coefficient. With cross_check enabled
    (the default) the Dijkstra result is verified against the enumeration
    minimum whenever enumeration completed untruncated.

    An unreachable target yields an empty, flagged report rather than an
    error.
    """
    if cost is None:
        cost = graph.consequence_costs.get(target)
    enumeration = enumerate_paths(
        graph, start, target, max_hops=max_hops, max_paths=max_paths
    )
    if not enumeration.paths:
        return RiskReport(
            start=start,
            target=target,
            entries=(),
            shortest_index=None,
            consequence_cost=cost,
            truncated=enumeration.truncated,
            unreachable=True,
        )

    ranked = sorted(
        (
            RankedPath(path, *path_risk(graph, path, cost))
            for path in enumeration.paths
        ),
        key=lambda r: (-r.risk_coefficient, r.path.hop_length, r.path.vertices),
    )

    dijkstra_path = shortest_path(graph, start, target)
    if cross_check and not enumeration.truncated:
        best = min(p.cumulative_weight for p in enumeration.paths)
        if abs(dijkstra_path.cumulative_weight - best) > _CROSS_CHECK_RTOL * max(
            best, 1.0
        ):
            raise AttackGraphError(
                "internal cross-check failed: shortest-path weight "
                f"{dijkstra_path.cumulative_weight!r} != enumeration minimum {best!r}"
            )

    shortest_index = None
    for i, entry in enumerate(ranked):
        if entry.path.vertices == dijkstra_path.vertices:
            shortest_index = i
            break
    if shortest_index is None:
        # Only possible when truncation dropped the Dijkstra path from the
        # enumeration; splice it into ranking order.
        entry = RankedPath(dijkstra_path, *path_risk(graph, dijkstra_path, cost))
        ranked.append(entry)
        ranked.sort(
            key=lambda r: (-r.risk_coefficient, r.path.hop_length, r.path.vertices)
        )
        shortest_index = ranked.index(entry)

    return RiskReport(
        start=start,
        target=target,
        entries=tuple(ranked),
        shortest_index=shortest_index,
        consequence_cost=cost,
        truncated=enumeration.truncated,
        unreachable=False,
    )


def vector_consequence_pairs(graph: AttackGraph) -> list[tuple[str, str]]:
    """Every (attack vector, consequence) pair, in id order."""
    vectors = sorted(v.id for v in graph.vertices_of_kind(VertexKind.ATTACK_VECTOR))
    consequences = sorted(v.id for v in graph.vertices_of_kind(VertexKind.CONSEQUENCE))
    return [(av, c) for av in vectors for c in consequences]
