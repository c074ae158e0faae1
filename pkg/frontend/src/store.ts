// View state and the event-application rules: snapshot generations must
// strictly increase, the reference marker moves optimistically and is
// reconciled by refchange events.

import type {
  ArchivePoint,
  BoundsPayload,
  SessionEvent,
  SessionState,
} from "./protocol.js";

export interface ReferenceMarker {
  r: number[];
  active: boolean;
  /** true while a setReference command is in flight, before the echo */
  optimistic: boolean;
}

export interface ViewState {
  sessionId: string;
  points: ArchivePoint[];
  generation: number;
  bounds: BoundsPayload | null;
  reference: ReferenceMarker | null;
  status: SessionState;
  evaluations: number;
  accepted: { selection: string; objectives: number[] } | null;
  toast: string | null;
}

export function initialViewState(sessionId: string): ViewState {
  return {
    sessionId,
    points: [],
    generation: -1,
    bounds: null,
    reference: null,
    status: "idle",
    evaluations: 0,
    accepted: null,
    toast: null,
  };
}

/** Apply one event; returns true when the state changed. */
export function applyEvent(state: ViewState, event: SessionEvent): boolean {
  switch (event.type) {
    case "bounds":
      state.bounds = event.payload;
      if (state.generation < 0) {
        state.points = event.payload.archive;
      }
      return true;
    case "snapshot":
      // stale generations are never applied
      if (event.payload.generation <= state.generation) {
        return false;
      }
      state.generation = event.payload.generation;
      state.points = event.payload.points;
      state.evaluations = event.evaluations;
      return true;
    case "refchange":
      state.reference = {
        r: event.payload.r,
        active: event.payload.active,
        optimistic: false,
      };
      state.evaluations = Math.max(state.evaluations, event.evaluations);
      return true;
    case "state":
      state.status = event.payload.state;
      state.evaluations = Math.max(state.evaluations, event.evaluations);
      return true;
    case "accepted":
      state.status = "done";
      state.accepted = event.payload;
      state.evaluations = Math.max(state.evaluations, event.evaluations);
      return true;
  }
}

/** Move the marker before the server confirms; remember what to revert to. */
export function optimisticReference(
  state: ViewState,
  r: number[],
): ReferenceMarker | null {
  const previous = state.reference;
  state.reference = { r, active: true, optimistic: true };
  return previous;
}

export function revertReference(
  state: ViewState,
  previous: ReferenceMarker | null,
  message: string,
): void {
  state.reference = previous;
  state.toast = message;
}
