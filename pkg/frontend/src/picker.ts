// Click-to-set-reference: pixel coordinates are mapped back to integer
// objective coordinates and emitted as a setReference command.

import { Scale, toData } from "./scale.js";
import type { ViewState } from "./store.js";

export interface SetReferenceCommand {
  session_id: string;
  r: number[];
  active: true;
}

/** null when the click is outside the axes or the session is done. */
export function pickReferencePoint(
  state: ViewState,
  scale: Scale,
  px: number,
  py: number,
): SetReferenceCommand | null {
  if (state.status === "done") {
    return null;
  }
  const data = toData(scale, px, py);
  if (data === null) {
    return null;
  }
  return {
    session_id: state.sessionId,
    r: [Math.round(data[0]), Math.round(data[1])],
    active: true,
  };
}

/** The exact pixel a data-space click lands on (for tests and markers). */
export function dataToPixel(scale: Scale, z: [number, number]): [number, number] {
  const { width, height, margin } = scale.area;
  return [
    margin + (z[0] / scale.xMax) * (width - 2 * margin),
    height - margin - (z[1] / scale.yMax) * (height - 2 * margin),
  ];
}
