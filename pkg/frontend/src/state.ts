import type { RiskServiceApi } from "./api";
import {
  edgeKey,
  type EdgePatch,
  type GraphView,
  type PatchResponse,
  type RiskReportPayload,
} from "./types";

export interface Position {
  x: number;
  y: number;
}

export type LayoutMode = "force" | "layered";

export interface StagedEdit {
  from: string;
  to: string;
  value: number;
}

/**
 * Client-side view state for the what-if loop.
 *
 * Invariants:
 * - `highlight` always mirrors the shortest path of the LAST server
 *   response; it is never computed locally.
 * - staged edits live only here until apply() sends one atomic PATCH;
 *   discarding them never talks to the server.
 * - at most one mutation (apply/reset) is in flight at a time.
 */
export class WhatIfStore {
  session: string | null = null;
  graph: GraphView | null = null;
  report: RiskReportPayload | null = null;
  selected: { from: string; to: string } | null = null;
  pendingEdits = new Map<string, StagedEdit>();
  lastDelta: PatchResponse | null = null;
  positions = new Map<string, Position>();
  layoutMode: LayoutMode = "force";
  focusPathIndex: number | null = null;
  error: string | null = null;
  busy = false;

  private listeners = new Set<() => void>();

  constructor(private api: RiskServiceApi) {}

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  /** Edge keys of the server-reported shortest path (empty when none). */
  get highlight(): Set<string> {
    const report = this.report;
    if (!report || report.shortest_index === null) return new Set();
    const path = report.paths[report.shortest_index];
    if (!path) return new Set();
    const keys = new Set<string>();
    for (let i = 0; i + 1 < path.vertices.length; i += 1) {
      keys.add(edgeKey(path.vertices[i]!, path.vertices[i + 1]!));
    }
    return keys;
  }

  async attach(session: string): Promise<void> {
    this.session = session;
    this.pendingEdits.clear();
    this.lastDelta = null;
    this.report = null;
    this.selected = null;
    await this.refreshGraph();
  }

  async refreshGraph(): Promise<void> {
    if (!this.session) return;
    try {
      this.graph = await this.api.graphView(this.session);
      this.error = null;
    } catch (err) {
      this.graph = null;
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.notify();
  }

  async selectPair(from: string, to: string): Promise<void> {
    this.selected = { from, to };
    this.focusPathIndex = null;
    await this.refreshRank();
  }

  async refreshRank(): Promise<void> {
    if (!this.session || !this.selected) return;
    try {
      this.report = await this.api.rank(
        this.session,
        this.selected.from,
        this.selected.to,
      );
      this.error = null;
    } catch (err) {
      this.report = null;
      this.error = err instanceof Error ? err.message : String(err);
    }
    this.notify();
  }

  /** Stage one probability edit; out-of-range values are rejected inline
   * and never reach the server. */
  stageEdit(from: string, to: string, value: number): { ok: boolean; error?: string } {
    if (!Number.isFinite(value) || value <= 0 || value > 1) {
      return { ok: false, error: "probability must be in (0, 1]" };
    }
    this.pendingEdits.set(edgeKey(from, to), { from, to, value });
    this.notify();
    return { ok: true };
  }

  unstageEdit(from: string, to: string): void {
    if (this.pendingEdits.delete(edgeKey(from, to))) this.notify();
  }

  discardEdits(): void {
    this.pendingEdits.clear();
    this.notify();
  }

  stagedPatches(): EdgePatch[] {
    return [...this.pendingEdits.values()].map((edit) => ({
      from: edit.from,
      to: edit.to,
      probability: edit.value,
    }));
  }

  /** Apply staged edits as one atomic PATCH, then re-fetch graph + rank. */
  async apply(): Promise<PatchResponse | null> {
    if (!this.session || this.busy || this.pendingEdits.size === 0) return null;
    this.busy = true;
    this.notify();
    try {
      const delta = await this.api.patchEdges(this.session, this.stagedPatches());
      this.lastDelta = delta;
      this.pendingEdits.clear();
      await this.refreshGraph();
      await this.refreshRank();
      return delta;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
      return null;
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  async reset(): Promise<void> {
    if (!this.session || this.busy) return;
    this.busy = true;
    this.notify();
    try {
      await this.api.reset(this.session);
      this.lastDelta = null;
      this.pendingEdits.clear();
      await this.refreshGraph();
      await this.refreshRank();
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    } finally {
      this.busy = false;
      this.notify();
    }
  }

  focusPath(index: number | null): void {
    this.focusPathIndex = index;
    this.notify();
  }

  setLayoutMode(mode: LayoutMode): void {
    this.layoutMode = mode;
    this.notify();
  }

  setPosition(id: string, position: Position): void {
    this.positions.set(id, position);
    this.notify();
  }
}
