// Mock service payloads shaped like the bundled manufacturing fixture.
// Rendered output must reproduce these numbers exactly: the UI never
// computes its own.

import type {
  GraphView,
  PatchResponse,
  RiskReportPayload,
  SessionDescriptor,
} from "../src/types";

const vertex = (
  id: string,
  kind: "attack_vector" | "location" | "consequence",
  label: string,
): GraphView["vertices"][number] => ({
  id,
  kind,
  label,
  taxonomy: [],
  cost: null,
});

const edge = (
  from: string,
  to: string,
  probability: number,
  weight: number,
): GraphView["edges"][number] => ({ from, to, probability, weight, metrics: null });

export const mockGraph: GraphView = {
  session: "s1",
  allow_direct_consequence: false,
  vertices: [
    vertex("AV1", "attack_vector", "Hardware tampering"),
    vertex("AV2", "attack_vector", "Man-in-the-middle attack"),
    vertex("L1", "location", "Supply chain"),
    vertex("L2", "location", "Network communication system"),
    vertex("L3", "location", "Cloud storage"),
    vertex("L4", "location", "Machine firmware"),
    vertex("L5", "location", "Inspection system"),
    vertex("L6", "location", "Hybrid CNC machine"),
    vertex("L7", "location", "Sensor suite"),
    vertex("L8", "location", "Machine operator"),
    vertex("C1", "consequence", "Degraded product quality"),
  ],
  edges: [
    edge("AV1", "L6", 0.2, 5.0),
    edge("AV2", "L1", 0.35, 2.857142857142857),
    edge("AV2", "L2", 0.6, 1.6666666666666667),
    edge("L1", "L3", 0.15, 6.666666666666667),
    edge("L2", "L3", 0.3, 3.3333333333333335),
    edge("L2", "L4", 0.3, 3.3333333333333335),
    edge("L3", "L5", 0.25, 4.0),
    edge("L4", "L6", 0.9, 1.1111111111111112),
    edge("L5", "L8", 0.05, 20.0),
    edge("L5", "C1", 0.8, 1.25),
    edge("L6", "L7", 0.05, 20.0),
    edge("L7", "L5", 0.6, 1.6666666666666667),
    edge("L8", "L6", 0.3, 3.3333333333333335),
  ],
  degree_profile: {},
  spec: {},
};

export const mockReport: RiskReportPayload = {
  session: "s1",
  start: "AV2",
  target: "C1",
  consequence_cost: null,
  shortest_index: 0,
  truncated: false,
  unreachable: false,
  paths: [
    {
      vertices: ["AV2", "L2", "L3", "L5", "C1"],
      hop_length: 4,
      cumulative_weight: 10.25,
      risk_coefficient: 0.036,
      risk_value: null,
      shortest: true,
    },
    {
      vertices: ["AV2", "L1", "L3", "L5", "C1"],
      hop_length: 4,
      cumulative_weight: 14.773809523809524,
      risk_coefficient: 0.0105,
      risk_value: null,
      shortest: false,
    },
    {
      vertices: ["AV2", "L2", "L4", "L6", "L7", "L5", "C1"],
      hop_length: 6,
      cumulative_weight: 29.02777777777778,
      risk_coefficient: 0.003888,
      risk_value: null,
      shortest: false,
    },
  ],
};

export const mockDescriptor: SessionDescriptor = {
  session: "s1",
  vertices: 11,
  edges: 13,
  applied_updates: 0,
  warnings: [],
};

export const mockDelta: PatchResponse = {
  session: "s1",
  applied: 6,
  applied_total: 6,
  pairs: [
    {
      from: "AV2",
      to: "C1",
      before: {
        unreachable: false,
        shortest_path: ["AV2", "L2", "L3", "L5", "C1"],
        max_risk_coefficient: 0.036,
      },
      after: {
        unreachable: false,
        shortest_path: ["AV2", "L2", "L4", "L6", "L7", "L5", "C1"],
        max_risk_coefficient: 0.007776,
      },
    },
  ],
};

export const defensePatches = [
  { from: "L1", to: "L3", probability: 0.05 },
  { from: "L2", to: "L3", probability: 0.05 },
  { from: "L3", to: "L5", probability: 0.05 },
  { from: "L4", to: "L6", probability: 0.1 },
  { from: "L6", to: "L7", probability: 0.6 },
  { from: "L7", to: "L5", probability: 0.9 },
];
