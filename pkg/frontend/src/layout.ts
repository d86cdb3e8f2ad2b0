import type { GraphView } from "./types";
import type { Position } from "./state";

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
}

/** Longest-path depth per vertex: vectors at 0, everything else one past
 * its deepest predecessor. Used to spread layers left to right. */
function layerDepths(graph: GraphView): Map<string, number> {
  const depths = new Map<string, number>();
  const incoming = new Map<string, string[]>();
  for (const edge of graph.edges) {
    const list = incoming.get(edge.to) ?? [];
    list.push(edge.from);
    incoming.set(edge.to, list);
  }
  const resolve = (id: string, trail: Set<string>): number => {
    const known = depths.get(id);
    if (known !== undefined) return known;
    if (trail.has(id)) return 0; // cycle guard
    trail.add(id);
    const sources = incoming.get(id) ?? [];
    const depth = sources.length
      ? Math.max(...sources.map((s) => resolve(s, trail))) + 1
      : 0;
    trail.delete(id);
    depths.set(id, depth);
    return depth;
  };
  for (const vertex of graph.vertices) resolve(vertex.id, new Set());
  // Consequences always sit on the last layer.
  const max = Math.max(0, ...depths.values());
  for (const vertex of graph.vertices) {
    if (vertex.kind === "consequence") depths.set(vertex.id, max);
  }
  return depths;
}

export function layeredLayout(graph: GraphView, options: LayoutOptions): Map<string, Position> {
  const depths = layerDepths(graph);
  const byLayer = new Map<number, string[]>();
  for (const vertex of graph.vertices) {
    const depth = depths.get(vertex.id) ?? 0;
    const bucket = byLayer.get(depth) ?? [];
    bucket.push(vertex.id);
    byLayer.set(depth, bucket);
  }
  const layers = [...byLayer.keys()].sort((a, b) => a - b);
  const positions = new Map<string, Position>();
  const stepX = options.width / (layers.length + 1);
  layers.forEach((layer, column) => {
    const ids = byLayer.get(layer)!;
    const stepY = options.height / (ids.length + 1);
    ids.forEach((id, row) => {
      positions.set(id, { x: stepX * (column + 1), y: stepY * (row + 1) });
    });
  });
  return positions;
}

/** Small force-directed layout: springs along edges, pairwise repulsion,
 * gentle pull toward the vertical center line of the vertex's layer.
 * Deterministic (seeded by vertex order), synchronous, good enough for
 * analyst-scale graphs. */
export function forceLayout(graph: GraphView, options: LayoutOptions): Map<string, Position> {
  const iterations = options.iterations ?? 250;
  const positions = layeredLayout(graph, options);
  const ids = graph.vertices.map((v) => v.id);
  // Nudge the layered seed so symmetric graphs do not collapse.
  ids.forEach((id, i) => {
    const p = positions.get(id)!;
    positions.set(id, { x: p.x + ((i * 37) % 11) - 5, y: p.y + ((i * 53) % 13) - 6 });
  });
  const springLength = Math.min(options.width, options.height) / 4;
  for (let step = 0; step < iterations; step += 1) {
    const force = new Map<string, Position>(ids.map((id) => [id, { x: 0, y: 0 }]));
    // Repulsion between every vertex pair.
    for (let i = 0; i < ids.length; i += 1) {
      for (let j = i + 1; j < ids.length; j += 1) {
        const a = positions.get(ids[i]!)!;
        const b = positions.get(ids[j]!)!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const distSq = Math.max(dx * dx + dy * dy, 1);
        const push = 9000 / distSq;
        const dist = Math.sqrt(distSq);
        const fa = force.get(ids[i]!)!;
        const fb = force.get(ids[j]!)!;
        fa.x += (dx / dist) * push;
        fa.y += (dy / dist) * push;
        fb.x -= (dx / dist) * push;
        fb.y -= (dy / dist) * push;
      }
    }
    // Springs along edges.
    for (const edge of graph.edges) {
      const a = positions.get(edge.from);
      const b = positions.get(edge.to);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = 0.02 * (dist - springLength);
      const fa = force.get(edge.from)!;
      const fb = force.get(edge.to)!;
      fa.x += (dx / dist) * pull;
      fa.y += (dy / dist) * pull;
      fb.x -= (dx / dist) * pull;
      fb.y -= (dy / dist) * pull;
    }
    const cooling = 1 - step / iterations;
    for (const id of ids) {
      const p = positions.get(id)!;
      const f = force.get(id)!;
      const x = p.x + Math.max(-20, Math.min(20, f.x)) * cooling;
      const y = p.y + Math.max(-20, Math.min(20, f.y)) * cooling;
      positions.set(id, {
        x: Math.max(30, Math.min(options.width - 30, x)),
        y: Math.max(30, Math.min(options.height - 30, y)),
      });
    }
  }
  return positions;
}

export function computeLayout(
  graph: GraphView,
  mode: "force" | "layered",
  options: LayoutOptions,
  manual: Map<string, Position>,
): Map<string, Position> {
  const computed =
    mode === "layered" ? layeredLayout(graph, options) : forceLayout(graph, options);
  for (const [id, position] of manual) {
    if (computed.has(id)) computed.set(id, position);
  }
  return computed;
}
