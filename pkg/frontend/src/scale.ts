// Linear data<->pixel mapping. Axis ranges come from the upper bounds so
// unreachable objective values are visibly outside the plot.

import type { BoundsPayload } from "./protocol.js";

export interface PlotArea {
  width: number;
  height: number;
  margin: number;
}

export interface Scale {
  xMax: number;
  yMax: number;
  area: PlotArea;
}

export function scaleFromBounds(bounds: BoundsPayload, area: PlotArea): Scale {
  let xMax = 1;
  let yMax = 1;
  for (const entry of bounds.upper) {
    const [x, y] = entry.point;
    if (x !== undefined && x > xMax) xMax = x;
    if (y !== undefined && y > yMax) yMax = y;
  }
  return { xMax, yMax, area };
}

export function toPixel(scale: Scale, z: [number, number]): [number, number] {
  const { width, height, margin } = scale.area;
  const px = margin + (z[0] / scale.xMax) * (width - 2 * margin);
  // pixel y grows downward
  const py = height - margin - (z[1] / scale.yMax) * (height - 2 * margin);
  return [px, py];
}

/** Inverse of toPixel; null when the click is outside the axes. */
export function toData(
  scale: Scale,
  px: number,
  py: number,
): [number, number] | null {
  const { width, height, margin } = scale.area;
  if (px < margin || px > width - margin || py < margin || py > height - margin) {
    return null;
  }
  const x = ((px - margin) / (width - 2 * margin)) * scale.xMax;
  const y = ((height - margin - py) / (height - 2 * margin)) * scale.yMax;
  return [x, y];
}
