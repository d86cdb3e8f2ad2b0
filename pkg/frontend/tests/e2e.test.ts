// End-to-end what-if loop against a live risk service preloaded with the
// bundled manufacturing fixture: stage the defense deltas, apply, verify
// the rendered ranking and highlight move; reset and verify they return.

import { spawn, type ChildProcess } from "node:child_process";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { renderGraph } from "../src/graphView";
import { renderRankTable } from "../src/rankTable";
import { WhatIfStore } from "../src/state";
import { defensePatches } from "./fixtures";

const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const HERE = path.dirname(fileURLToPath(import.meta.url));
const REPO_ROOT = path.resolve(HERE, "..", "..");
const FIXTURE = path.join(
  REPO_ROOT,
  "src",
  "agr",
  "fixtures",
  "manufacturing.json",
);

let service: ChildProcess;

async function waitForService(): Promise<void> {
  const deadline = Date.now() + 20_000;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/health`);
      if (response.ok) return;
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`risk service did not come up on ${BASE}: ${lastError}`);
}

beforeAll(async () => {
  service = spawn(
    "python3",
    [
      "-m",
      "agr.cli",
      "serve",
      "--host",
      "127.0.0.1",
      "--port",
      String(PORT),
      "--fixture",
      FIXTURE,
    ],
    { cwd: REPO_ROOT, stdio: "ignore" },
  );
  await waitForService();
});

afterAll(() => {
  service?.kill("SIGTERM");
});

function riskCells(container: HTMLElement): string[] {
  return [...container.querySelectorAll("tbody tr")].map(
    (row) => row.querySelectorAll("td")[3]!.textContent ?? "",
  );
}

function starredPath(container: HTMLElement): string {
  const row = container.querySelector("tbody tr.shortest");
  return row?.querySelectorAll("td")[0]!.textContent ?? "";
}

function highlightedEdges(container: HTMLElement): Set<string> {
  return new Set(
    [...container.querySelectorAll(".edge.shortest")].map(
      (el) => el.getAttribute("data-edge") ?? "",
    ),
  );
}

describe("what-if loop against the live service", () => {
  it("applies the defense package and resets back", async () => {
    const api = new ApiClient(BASE);
    const { sessions } = await api.listSessions();
    expect(sessions.length).toBe(1);
    const descriptor = sessions[0]!;
    expect(descriptor.vertices).toBe(11);
    expect(descriptor.edges).toBe(13);

    const store = new WhatIfStore(api);
    const canvas = document.createElement("div");
    const ranking = document.createElement("div");
    document.body.append(canvas, ranking);
    const render = () => {
      renderGraph(canvas, store);
      renderRankTable(ranking, store);
    };
    store.subscribe(render);

    await store.attach(descriptor.session);
    await store.selectPair("AV2", "C1");

    // Baseline: the rendered ranking and emphasized path.
    expect(riskCells(ranking)).toEqual([
      "0.036 × C",
      "0.0105 × C",
      "0.0039 × C",
    ]);
    const baselineStar = starredPath(ranking);
    expect(baselineStar).toContain("AV2 → L2 → L3 → L5 → C1");
    const baselineHighlight = highlightedEdges(canvas);
    expect(baselineHighlight).toEqual(
      new Set(["AV2→L2", "L2→L3", "L3→L5", "L5→C1"]),
    );

    // Stage the six defense deltas and apply them as one atomic patch.
    for (const patch of defensePatches) {
      const result = store.stageEdit(patch.from, patch.to, patch.probability);
      expect(result.ok).toBe(true);
    }
    const delta = await store.apply();
    expect(delta).not.toBeNull();
    const pair = delta!.pairs.find((p) => p.from === "AV2" && p.to === "C1")!;
    expect(pair.before.max_risk_coefficient).toBeCloseTo(0.036, 5);
    expect(pair.after.max_risk_coefficient).toBeCloseTo(0.007776, 6);

    // Re-rendered ranking and highlight reflect the patched session.
    expect(riskCells(ranking)).toEqual([
      "0.0078 × C",
      "0.0012 × C",
      "0.0007 × C",
    ]);
    expect(starredPath(ranking)).toContain(
      "AV2 → L2 → L4 → L6 → L7 → L5 → C1",
    );
    expect(highlightedEdges(canvas)).toEqual(
      new Set([
        "AV2→L2",
        "L2→L4",
        "L4→L6",
        "L6→L7",
        "L7→L5",
        "L5→C1",
      ]),
    );
    const banner = ranking.querySelector(".banner.delta");
    expect(banner?.textContent).toBe("max risk 0.036 → 0.0078");

    // The canvas labels show the patched probabilities from the server.
    const labels = [...canvas.querySelectorAll(".edge-label")].map(
      (el) => el.textContent,
    );
    expect(labels).toContain("0.1"); // L4->L6 after the patch

    // Reset: everything returns to the baseline rendering.
    await store.reset();
    expect(riskCells(ranking)).toEqual([
      "0.036 × C",
      "0.0105 × C",
      "0.0039 × C",
    ]);
    expect(starredPath(ranking)).toBe(baselineStar);
    expect(highlightedEdges(canvas)).toEqual(baselineHighlight);
  });

  it("server rejects an invalid patch atomically and the UI surfaces it", async () => {
    const api = new ApiClient(BASE);
    const { sessions } = await api.listSessions();
    const store = new WhatIfStore(api);
    await store.attach(sessions[0]!.session);
    await store.selectPair("AV2", "C1");

    // The edge exists but the second patch refers to a missing edge, so
    // the whole batch must be rejected and the ranking stay put.
    store.pendingEdits.set("L1→L3", { from: "L1", to: "L3", value: 0.5 });
    store.pendingEdits.set("AV1→L1", { from: "AV1", to: "L1", value: 0.5 });
    const delta = await store.apply();
    expect(delta).toBeNull();
    expect(store.error).toContain("rejected");

    const report = await api.rank(sessions[0]!.session, "AV2", "C1");
    expect(report.paths[0]!.risk_coefficient).toBeCloseTo(0.036, 6);
  });
});
