import type { BoundsPayload, SessionEvent } from "../src/protocol.js";

export const PLOT = { width: 720, height: 480, margin: 36 };

export function mockBounds(): BoundsPayload {
  return {
    lower: [
      { selection: "1100", objectives: [1650, 1500] },
      { selection: "1010", objectives: [1200, 2000] },
    ],
    upper: [
      { weights: [1, 0], value: 2400, point: [2400, 900] },
      { weights: [0.5, 0.5], value: 2100, point: [2000, 2200] },
      { weights: [0, 1], value: 2400, point: [800, 2400] },
    ],
    archive: [
      { selection: "1100", objectives: [1650, 1500], cone: true },
      { selection: "1010", objectives: [1200, 2000], cone: true },
    ],
  };
}

export function boundsEvent(): SessionEvent {
  return { type: "bounds", evaluations: 0, payload: mockBounds() };
}

export function snapshotEvent(
  generation: number,
  points: { selection: string; objectives: number[]; cone: boolean }[],
  evaluations = generation * 100,
): SessionEvent {
  return { type: "snapshot", evaluations, payload: { generation, points } };
}
