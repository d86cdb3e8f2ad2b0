// Payload shapes of the risk service HTTP API. The UI renders these
// verbatim; it never computes risk numbers itself.

export type VertexKind = "attack_vector" | "location" | "consequence";

export interface GraphVertex {
  id: string;
  kind: VertexKind;
  label: string;
  taxonomy: string[];
  cost: number | null;
}

export interface ExploitMetrics {
  av: number;
  ac: number;
  pr: number;
  ui: number;
  rl: number;
}

export interface GraphEdge {
  from: string;
  to: string;
  probability: number;
  weight: number;
  metrics: ExploitMetrics | null;
}

export interface GraphView {
  session?: string;
  allow_direct_consequence: boolean;
  vertices: GraphVertex[];
  edges: GraphEdge[];
  degree_profile: Record<string, { in: number; out: number }>;
  spec: unknown;
}

export interface RankedPathPayload {
  vertices: string[];
  hop_length: number;
  cumulative_weight: number;
  risk_coefficient: number;
  risk_value: number | null;
  shortest: boolean;
}

export interface RiskReportPayload {
  session?: string;
  start: string;
  target: string;
  consequence_cost: number | null;
  shortest_index: number | null;
  truncated: boolean;
  unreachable: boolean;
  paths: RankedPathPayload[];
}

export interface SessionDescriptor {
  session: string;
  vertices: number;
  edges: number;
  applied_updates: number;
  warnings: string[];
}

export interface EdgePatch {
  from: string;
  to: string;
  probability: number;
}

export interface PairSummary {
  unreachable: boolean;
  shortest_path: string[] | null;
  max_risk_coefficient: number | null;
}

export interface PairDelta {
  from: string;
  to: string;
  before: PairSummary;
  after: PairSummary;
}

export interface PatchResponse {
  session: string;
  applied: number;
  applied_total: number;
  pairs: PairDelta[];
}

export interface ApiError {
  error: string;
  details: string[];
}

export const edgeKey = (from: string, to: string): string => `${from}→${to}`;
