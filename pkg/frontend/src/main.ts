import { ApiClient } from "./api";
import { renderEditPanel, type DefensePackage } from "./editPanel";
import { renderGraph } from "./graphView";
import { renderRankTable } from "./rankTable";
import { WhatIfStore } from "./state";

declare global {
  interface Window {
    AGR_API_BASE?: string;
    AGR_PACKAGES?: DefensePackage[];
  }
}

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

async function boot(): Promise<void> {
  const api = new ApiClient(window.AGR_API_BASE ?? "");
  const store = new WhatIfStore(api);
  const packages = window.AGR_PACKAGES ?? [];

  const canvas = el("graph");
  const ranking = el("ranking");
  const editor = el("editor");
  const fromSelect = el("pair-from") as HTMLSelectElement;
  const toSelect = el("pair-to") as HTMLSelectElement;
  const layoutToggle = el("layout-mode") as HTMLSelectElement;
  const status = el("status");

  const renderAll = () => {
    renderGraph(canvas, store);
    renderRankTable(ranking, store);
    renderEditPanel(editor, store, packages);
    status.textContent = store.busy
      ? "working…"
      : store.error
        ? `error: ${store.error}`
        : store.session
          ? `session ${store.session}`
          : "no session";
  };
  store.subscribe(renderAll);

  layoutToggle.addEventListener("change", () => {
    store.setLayoutMode(layoutToggle.value === "layered" ? "layered" : "force");
  });

  const syncPairSelectors = () => {
    const graph = store.graph;
    if (!graph) return;
    const vectors = graph.vertices.filter((v) => v.kind === "attack_vector");
    const consequences = graph.vertices.filter((v) => v.kind === "consequence");
    fromSelect.textContent = "";
    toSelect.textContent = "";
    for (const [select, items] of [
      [fromSelect, vectors],
      [toSelect, consequences],
    ] as const) {
      for (const vertex of items) {
        const option = document.createElement("option");
        option.value = vertex.id;
        option.textContent = `${vertex.id} · ${vertex.label}`;
        select.appendChild(option);
      }
    }
    const pick = () => {
      if (fromSelect.value && toSelect.value) {
        void store.selectPair(fromSelect.value, toSelect.value);
      }
    };
    fromSelect.onchange = pick;
    toSelect.onchange = pick;
    pick();
  };

  try {
    const { sessions } = await api.listSessions();
    const first = sessions[0];
    if (!first) {
      status.textContent =
        "no sessions on the server; start it with a preloaded fixture";
      return;
    }
    await store.attach(first.session);
    syncPairSelectors();
  } catch (err) {
    status.textContent = `cannot reach the risk service: ${
      err instanceof Error ? err.message : String(err)
    }`;
  }
}

void boot();
