import { computeLayout } from "./layout";
import { formatProbability } from "./format";
import type { WhatIfStore } from "./state";
import { edgeKey, type GraphView, type VertexKind } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 900;
const HEIGHT = 560;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function vertexShape(kind: VertexKind, x: number, y: number): SVGElement {
  switch (kind) {
    case "attack_vector": {
      const r = 26;
      return svgEl("polygon", {
        points: `${x},${y - r} ${x + r},${y} ${x},${y + r} ${x - r},${y}`,
        class: "vertex-shape vector",
      });
    }
    case "location":
      return svgEl("rect", {
        x: String(x - 34),
        y: String(y - 20),
        width: "68",
        height: "40",
        rx: "4",
        class: "vertex-shape location",
      });
    case "consequence":
      return svgEl("ellipse", {
        cx: String(x),
        cy: String(y),
        rx: "38",
        ry: "24",
        class: "vertex-shape consequence",
      });
  }
}

function isGraphView(payload: unknown): payload is GraphView {
  const view = payload as GraphView;
  return (
    !!view &&
    Array.isArray(view.vertices) &&
    Array.isArray(view.edges) &&
    view.vertices.every((v) => typeof v?.id === "string" && typeof v?.kind === "string") &&
    view.edges.every(
      (e) => typeof e?.from === "string" && typeof e?.to === "string",
    )
  );
}

/** Render the attack graph onto `container` from the store's last server
 * payload. Highlighted (shortest-path) edges and staged edits get their
 * own styling; vertices are draggable and positions persist in the
 * store. */
export function renderGraph(container: HTMLElement, store: WhatIfStore): void {
  container.textContent = "";
  if (store.error && !store.graph) {
    const banner = document.createElement("div");
    banner.className = "banner error";
    banner.textContent = `could not render graph: ${store.error}`;
    container.appendChild(banner);
    return;
  }
  const graph = store.graph;
  if (!graph) return;
  if (!isGraphView(graph)) {
    const banner = document.createElement("div");
    banner.className = "banner error";
    banner.textContent = "could not render graph: malformed payload";
    container.appendChild(banner);
    return;
  }
  if (graph.vertices.length === 0) {
    const empty = document.createElement("div");
    empty.className = "banner empty";
    empty.textContent = "Nothing to show: the loaded graph has no vertices.";
    container.appendChild(empty);
    return;
  }

  const positions = computeLayout(
    graph,
    store.layoutMode,
    { width: WIDTH, height: HEIGHT },
    store.positions,
  );
  const highlight = store.highlight;
  const focus = new Set<string>();
  if (store.report && store.focusPathIndex !== null) {
    const path = store.report.paths[store.focusPathIndex];
    if (path) {
      for (let i = 0; i + 1 < path.vertices.length; i += 1) {
        focus.add(edgeKey(path.vertices[i]!, path.vertices[i + 1]!));
      }
    }
  }

  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "graph-canvas",
    role: "img",
  });
  const defs = svgEl("defs");
  for (const [id, cls] of [
    ["arrow", "arrow"],
    ["arrow-highlight", "arrow highlight"],
  ] as const) {
    const marker = svgEl("marker", {
      id,
      viewBox: "0 0 10 10",
      refX: "10",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", class: cls }));
    defs.appendChild(marker);
  }
  svg.appendChild(defs);

  const edgeLayer = svgEl("g");
  for (const edge of graph.edges) {
    const from = positions.get(edge.from);
    const to = positions.get(edge.to);
    if (!from || !to) continue;
    const key = edgeKey(edge.from, edge.to);
    const highlighted = highlight.has(key);
    const focused = focus.has(key);
    const staged = store.pendingEdits.get(key);
    const classes = ["edge"];
    if (highlighted) classes.push("shortest");
    if (focused) classes.push("focused");
    if (staged) classes.push("staged");
    const group = svgEl("g", { class: classes.join(" "), "data-edge": key });
    group.appendChild(
      svgEl("line", {
        x1: String(from.x),
        y1: String(from.y),
        x2: String(to.x),
        y2: String(to.y),
        "marker-end": highlighted ? "url(#arrow-highlight)" : "url(#arrow)",
      }),
    );
    const midX = (from.x + to.x) / 2;
    const midY = (from.y + to.y) / 2;
    const label = svgEl("text", {
      x: String(midX),
      y: String(midY - 6),
      class: "edge-label",
      "text-anchor": "middle",
    });
    label.textContent = staged
      ? `${formatProbability(edge.probability)} → ${formatProbability(staged.value)}`
      : formatProbability(edge.probability);
    group.appendChild(label);
    edgeLayer.appendChild(group);
  }
  svg.appendChild(edgeLayer);

  const vertexLayer = svgEl("g");
  for (const vertex of graph.vertices) {
    const position = positions.get(vertex.id);
    if (!position) continue;
    const group = svgEl("g", {
      class: `vertex ${vertex.kind}`,
      "data-vertex": vertex.id,
    });
    group.appendChild(vertexShape(vertex.kind, position.x, position.y));
    const idText = svgEl("text", {
      x: String(position.x),
      y: String(position.y + 1),
      class: "vertex-id",
      "text-anchor": "middle",
    });
    idText.textContent = vertex.id;
    group.appendChild(idText);
    const labelText = svgEl("text", {
      x: String(position.x),
      y: String(position.y + 38),
      class: "vertex-label",
      "text-anchor": "middle",
    });
    labelText.textContent = vertex.label;
    group.appendChild(labelText);
    attachDrag(group, svg, store, vertex.id);
    vertexLayer.appendChild(group);
  }
  svg.appendChild(vertexLayer);
  container.appendChild(svg);
}

function attachDrag(
  group: SVGElement,
  svg: SVGSVGElement,
  store: WhatIfStore,
  vertexId: string,
): void {
  group.addEventListener("pointerdown", (down: PointerEvent) => {
    down.preventDefault();
    const toLocal = (event: PointerEvent) => {
      const rect = svg.getBoundingClientRect();
      const scaleX = rect.width > 0 ? WIDTH / rect.width : 1;
      const scaleY = rect.height > 0 ? HEIGHT / rect.height : 1;
      return {
        x: (event.clientX - rect.left) * scaleX,
        y: (event.clientY - rect.top) * scaleY,
      };
    };
    const move = (event: PointerEvent) => {
      store.setPosition(vertexId, toLocal(event));
    };
    const up = () => {
      window.removeEventListener("pointermove", move);
      window.removeEventListener("pointerup", up);
    };
    window.addEventListener("pointermove", move);
    window.addEventListener("pointerup", up);
  });
}
