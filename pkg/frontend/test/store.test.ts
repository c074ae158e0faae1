import { describe, expect, it } from "vitest";
import {
  applyEvent,
  initialViewState,
  optimisticReference,
  revertReference,
} from "../src/store.js";
import { boundsEvent, snapshotEvent } from "./helpers.js";

describe("applyEvent", () => {
  it("seeds points from the bounds archive only before the first snapshot", () => {
    const state = initialViewState("s1");
    expect(applyEvent(state, boundsEvent())).toBe(true);
    expect(state.points.map((p) => p.selection)).toEqual(["1100", "1010"]);

    applyEvent(state, snapshotEvent(1, [{ selection: "0110", objectives: [6, 7], cone: true }]));
    applyEvent(state, boundsEvent());
    expect(state.points.map((p) => p.selection)).toEqual(["0110"]);
  });

  it("never applies a snapshot with a stale or repeated generation", () => {
    const state = initialViewState("s1");
    const fresh = [{ selection: "11", objectives: [9, 9], cone: true }];
    expect(applyEvent(state, snapshotEvent(4, fresh))).toBe(true);
    expect(state.generation).toBe(4);

    const stale = snapshotEvent(3, [{ selection: "00", objectives: [0, 0], cone: false }]);
    expect(applyEvent(state, stale)).toBe(false);
    expect(applyEvent(state, snapshotEvent(4, []))).toBe(false);
    expect(state.points).toEqual(fresh);
    expect(state.generation).toBe(4);

    expect(applyEvent(state, snapshotEvent(5, []))).toBe(true);
    expect(state.points).toEqual([]);
  });

  it("tracks status, acceptance and the confirmed reference", () => {
    const state = initialViewState("s1");
    applyEvent(state, { type: "state", evaluations: 10, payload: { state: "searching" } });
    expect(state.status).toBe("searching");
    applyEvent(state, {
      type: "refchange",
      evaluations: 50,
      payload: { r: [4, 6], active: true },
    });
    expect(state.reference).toEqual({ r: [4, 6], active: true, optimistic: false });
    applyEvent(state, {
      type: "accepted",
      evaluations: 80,
      payload: { selection: "1100", objectives: [8, 6] },
    });
    expect(state.status).toBe("done");
    expect(state.accepted?.selection).toBe("1100");
  });
});

describe("optimistic reference", () => {
  it("moves the marker immediately and reverts on command failure", () => {
    const state = initialViewState("s1");
    applyEvent(state, {
      type: "refchange",
      evaluations: 0,
      payload: { r: [2, 2], active: true },
    });
    const previous = optimisticReference(state, [7, 8]);
    expect(state.reference).toEqual({ r: [7, 8], active: true, optimistic: true });

    revertReference(state, previous, "setReference failed");
    expect(state.reference).toEqual({ r: [2, 2], active: true, optimistic: false });
    expect(state.toast).toBe("setReference failed");
  });

  it("a confirming refchange clears the optimistic flag", () => {
    const state = initialViewState("s1");
    optimisticReference(state, [7, 8]);
    applyEvent(state, {
      type: "refchange",
      evaluations: 0,
      payload: { r: [7, 8], active: true, origin: "command" },
    });
    expect(state.reference?.optimistic).toBe(false);
  });
});
