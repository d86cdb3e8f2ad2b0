"""Shared fixtures and independent oracles.

The oracles deliberately avoid the library's analysis code paths: BFS over
the raw edge set checks DFS propagation, and a stack-based exhaustive
search over the raw edge set checks recursive enumeration and Dijkstra.
"""

from __future__ import annotations

import json
import random
from collections import deque

import pytest

from agr import AttackGraph, build_graph, parse_updates
from agr.fixtures import fixture_text


@pytest.fixture(scope="session")
def manufacturing_spec() -> dict:
    return json.loads(fixture_text("manufacturing.json"))


@pytest.fixture(scope="session")
def manufacturing_graph(manufacturing_spec) -> AttackGraph:
    return build_graph(manufacturing_spec)


@pytest.fixture(scope="session")
def defense_updates():
    return parse_updates(fixture_text("manufacturing_defenses.json"))


@pytest.fixture(scope="session")
def small_graph() -> AttackGraph:
    return build_graph(fixture_text("sample_small.json"))


def bfs_reachable(graph: AttackGraph, start: str) -> set[str]:
    """Breadth-first reachability over the raw edge set."""
    successors: dict[str, list[str]] = {}
    for src, dst in graph.edges:
        successors.setdefault(src, []).append(dst)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for nxt in successors.get(current, []):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def brute_force_paths(
    graph: AttackGraph, start: str, target: str, max_hops: int = 32
) -> set[tuple[str, ...]]:
    """Exhaustive simple-path search, iterative, over the raw edge set."""
    successors: dict[str, list[str]] = {}
    for src, dst in graph.edges:
        successors.setdefault(src, []).append(dst)
    found: set[tuple[str, ...]] = set()
    stack: list[tuple[str, ...]] = [(start,)]
    while stack:
        path = stack.pop()
        current = path[-1]
        if current == target:
            found.add(path)
            continue
        if len(path) - 1 >= max_hops:
            continue
        for nxt in successors.get(current, []):
            if nxt not in path:
                stack.append(path + (nxt,))
    return found


def oracle_path_weight(graph: AttackGraph, path: tuple[str, ...]) -> float:
    """Cumulative weight recomputed as bare reciprocals of probabilities."""
    return sum(
        1.0 / graph.edges[(a, b)].probability for a, b in zip(path, path[1:])
    )


def oracle_path_probability(graph: AttackGraph, path: tuple[str, ...]) -> float:
    out = 1.0
    for a, b in zip(path, path[1:]):
        out *= graph.edges[(a, b)].probability
    return out


def random_graph_spec(rng: random.Random, max_vertices: int = 12) -> dict:
    """Random GraphSpec respecting the kind-pair whitelist.

    Probabilities are drawn from [0.05, 1] so weights stay bounded.
    """
    n_vectors = rng.randint(1, 2)
    n_consequences = rng.randint(1, 2)
    n_locations = rng.randint(1, max_vertices - n_vectors - n_consequences)
    vectors = [f"av{i}" for i in range(n_vectors)]
    locations = [f"l{i}" for i in range(n_locations)]
    consequences = [f"c{i}" for i in range(n_consequences)]

    vertices = (
        [{"id": v, "kind": "attack_vector", "label": v} for v in vectors]
        + [{"id": v, "kind": "location", "label": v} for v in locations]
        + [{"id": v, "kind": "consequence", "label": v} for v in consequences]
    )

    candidates = (
        [(av, loc) for av in vectors for loc in locations]
        + [(a, b) for a in locations for b in locations if a != b]
        + [(loc, c) for loc in locations for c in consequences]
    )
    edge_count = rng.randint(1, min(len(candidates), 3 * (n_locations + 1)))
    chosen = rng.sample(candidates, edge_count)
    edges = [
        {"from": a, "to": b, "probability": round(rng.uniform(0.05, 1.0), 6)}
        for a, b in chosen
    ]
    return {"vertices": vertices, "edges": edges}
