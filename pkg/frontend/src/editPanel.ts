import { formatProbability } from "./format";
import type { WhatIfStore } from "./state";
import { edgeKey, type EdgePatch } from "./types";

export interface DefensePackage {
  name: string;
  description?: string;
  patches: EdgePatch[];
}

/** Edge-probability editor: stage values per edge (validated inline),
 * toggle whole defense packages, then apply everything as one atomic
 * patch or discard without touching the server. */
export function renderEditPanel(
  container: HTMLElement,
  store: WhatIfStore,
  packages: DefensePackage[] = [],
): void {
  container.textContent = "";
  const graph = store.graph;
  if (!graph) return;

  const edgeKeys = new Set(graph.edges.map((e) => edgeKey(e.from, e.to)));
  // Offer only packages whose every patch targets an edge of this graph.
  const applicable = packages.filter((pkg) =>
    pkg.patches.every((patch) => edgeKeys.has(edgeKey(patch.from, patch.to))),
  );

  if (applicable.length > 0) {
    const packageBox = document.createElement("div");
    packageBox.className = "package-box";
    for (const pkg of applicable) {
      const allStaged = pkg.patches.every((patch) => {
        const staged = store.pendingEdits.get(edgeKey(patch.from, patch.to));
        return staged !== undefined && staged.value === patch.probability;
      });
      const button = document.createElement("button");
      button.type = "button";
      button.className = allStaged ? "package on" : "package";
      button.textContent = pkg.name;
      if (pkg.description) button.title = pkg.description;
      button.addEventListener("click", () => {
        if (allStaged) {
          for (const patch of pkg.patches) {
            store.unstageEdit(patch.from, patch.to);
          }
        } else {
          for (const patch of pkg.patches) {
            store.stageEdit(patch.from, patch.to, patch.probability);
          }
        }
      });
      packageBox.appendChild(button);
    }
    container.appendChild(packageBox);
  }

  const list = document.createElement("div");
  list.className = "edge-editor";
  for (const edge of graph.edges) {
    const key = edgeKey(edge.from, edge.to);
    const staged = store.pendingEdits.get(key);
    const row = document.createElement("div");
    row.className = staged ? "edge-row staged" : "edge-row";
    row.dataset.edge = key;

    const name = document.createElement("span");
    name.className = "edge-name";
    name.textContent = key;
    row.appendChild(name);

    const current = document.createElement("span");
    current.className = "edge-current";
    current.textContent = formatProbability(edge.probability);
    row.appendChild(current);

    const input = document.createElement("input");
    input.type = "number";
    input.step = "0.05";
    input.min = "0";
    input.max = "1";
    input.placeholder = "new p";
    if (staged) input.value = String(staged.value);
    row.appendChild(input);

    const error = document.createElement("span");
    error.className = "edge-error";
    row.appendChild(error);

    input.addEventListener("change", () => {
      if (input.value === "") {
        store.unstageEdit(edge.from, edge.to);
        return;
      }
      const result = store.stageEdit(edge.from, edge.to, Number(input.value));
      error.textContent = result.ok ? "" : result.error ?? "invalid";
      row.classList.toggle("invalid", !result.ok);
    });
    list.appendChild(row);
  }
  container.appendChild(list);

  const actions = document.createElement("div");
  actions.className = "edit-actions";

  const staging = document.createElement("span");
  staging.className = "staged-count";
  staging.textContent = store.pendingEdits.size
    ? `${store.pendingEdits.size} staged edit(s)`
    : "no staged edits";
  actions.appendChild(staging);

  const apply = document.createElement("button");
  apply.type = "button";
  apply.className = "apply";
  apply.textContent = "Apply";
  apply.disabled = store.busy || store.pendingEdits.size === 0;
  apply.addEventListener("click", () => void store.apply());
  actions.appendChild(apply);

  const discard = document.createElement("button");
  discard.type = "button";
  discard.className = "discard";
  discard.textContent = "Discard";
  discard.disabled = store.pendingEdits.size === 0;
  discard.addEventListener("click", () => store.discardEdits());
  actions.appendChild(discard);

  const reset = document.createElement("button");
  reset.type = "button";
  reset.className = "reset";
  reset.textContent = "Reset session";
  reset.disabled = store.busy;
  reset.addEventListener("click", () => void store.reset());
  actions.appendChild(reset);

  container.appendChild(actions);
}
