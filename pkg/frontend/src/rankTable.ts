import { formatRisk, formatRiskCell, formatWeight, pathArrow } from "./format";
import type { WhatIfStore } from "./state";
import type { RankedPathPayload } from "./types";

type SortKey = "risk" | "hops" | "weight";

export interface RankTableState {
  sortKey: SortKey;
  ascending: boolean;
}

const defaultSort: RankTableState = { sortKey: "risk", ascending: false };

function sortValue(path: RankedPathPayload, key: SortKey): number {
  switch (key) {
    case "risk":
      return path.risk_coefficient;
    case "hops":
      return path.hop_length;
    case "weight":
      return path.cumulative_weight;
  }
}

/** Render the ranking table from the last server report. Every number in
 * the table is a formatted server value; sorting only reorders rows. */
export function renderRankTable(
  container: HTMLElement,
  store: WhatIfStore,
  state: RankTableState = { ...defaultSort },
): void {
  container.textContent = "";
  const report = store.report;

  if (store.lastDelta && store.selected) {
    const pair = store.lastDelta.pairs.find(
      (p) => p.from === store.selected!.from && p.to === store.selected!.to,
    );
    if (pair && pair.before.max_risk_coefficient !== null) {
      const banner = document.createElement("div");
      banner.className = "banner delta";
      const after =
        pair.after.max_risk_coefficient === null
          ? "unreachable"
          : formatRisk(pair.after.max_risk_coefficient);
      banner.textContent =
        `max risk ${formatRisk(pair.before.max_risk_coefficient)} → ${after}`;
      container.appendChild(banner);
    }
  }

  if (!report) {
    const note = document.createElement("div");
    note.className = "banner empty";
    note.textContent = "Pick an attack vector and a consequence to rank paths.";
    container.appendChild(note);
    return;
  }
  if (report.unreachable || report.paths.length === 0) {
    const note = document.createElement("div");
    note.className = "banner empty";
    note.textContent = `No attack path from ${report.start} to ${report.target}.`;
    container.appendChild(note);
    return;
  }

  const indexed = report.paths.map((path, index) => ({ path, index }));
  indexed.sort((a, b) => {
    const diff = sortValue(a.path, state.sortKey) - sortValue(b.path, state.sortKey);
    return state.ascending ? diff : -diff;
  });

  const table = document.createElement("table");
  table.className = "rank-table";
  const head = table.createTHead().insertRow();
  const columns: { title: string; key: SortKey | null }[] = [
    { title: "Attack path", key: null },
    { title: "Hops", key: "hops" },
    { title: "Cum. weight", key: "weight" },
    { title: "Cumulative risk", key: "risk" },
  ];
  for (const column of columns) {
    const cell = document.createElement("th");
    cell.textContent = column.title;
    if (column.key) {
      const key = column.key;
      cell.classList.add("sortable");
      if (state.sortKey === key) {
        cell.classList.add(state.ascending ? "asc" : "desc");
      }
      cell.addEventListener("click", () => {
        const next: RankTableState =
          state.sortKey === key
            ? { sortKey: key, ascending: !state.ascending }
            : { sortKey: key, ascending: key !== "risk" };
        renderRankTable(container, store, next);
      });
    }
    head.appendChild(cell);
  }

  const body = table.createTBody();
  for (const { path, index } of indexed) {
    const row = body.insertRow();
    row.dataset.pathIndex = String(index);
    if (index === report.shortest_index) row.classList.add("shortest");
    if (index === store.focusPathIndex) row.classList.add("focused");
    const pathCell = row.insertCell();
    pathCell.textContent =
      (index === report.shortest_index ? "★ " : "") + pathArrow(path.vertices);
    row.insertCell().textContent = String(path.hop_length);
    row.insertCell().textContent = formatWeight(path.cumulative_weight);
    row.insertCell().textContent = formatRiskCell(
      path.risk_coefficient,
      path.risk_value,
    );
    row.addEventListener("click", () => {
      store.focusPath(store.focusPathIndex === index ? null : index);
    });
  }
  container.appendChild(table);

  if (report.truncated) {
    const warning = document.createElement("div");
    warning.className = "banner warning";
    warning.textContent = "Ranking may be partial: enumeration hit its limits.";
    container.appendChild(warning);
  }
}
