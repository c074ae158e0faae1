// Outcome-space scene for K=2 sessions: archive scatter, cone shading,
// bound polylines and the reference marker. The scene is a plain data
// structure so it can be tested without a DOM and drawn as SVG.

import type { ArchivePoint } from "./protocol.js";
import { Scale, toPixel } from "./scale.js";
import type { ViewState } from "./store.js";

export interface ScenePoint {
  x: number;
  y: number;
  objectives: number[];
  selection: string;
  cone: boolean;
}

export interface Scene {
  kind: "scene";
  points: ScenePoint[];
  lowerPolyline: [number, number][];
  upperPolyline: [number, number][];
  coneShade: { x: number; y: number; width: number; height: number } | null;
  referenceMarker: { x: number; y: number; optimistic: boolean } | null;
  statusLine: string;
}

export interface UnsupportedScene {
  kind: "unsupported";
  message: string;
}

function sortedByX(points: [number, number][]): [number, number][] {
  return [...points].sort((a, b) => a[0] - b[0]);
}

export function renderOutcomeSpace(
  state: ViewState,
  scale: Scale,
): Scene | UnsupportedScene {
  const k = dimensionOf(state);
  if (k !== null && k !== 2) {
    return { kind: "unsupported", message: `K=${k} sessions are not drawable here` };
  }

  const points: ScenePoint[] = state.points.map((p: ArchivePoint) => {
    const [x, y] = toPixel(scale, [p.objectives[0] ?? 0, p.objectives[1] ?? 0]);
    // objective coordinates are taken verbatim from the snapshot payload
    return { x, y, objectives: p.objectives, selection: p.selection, cone: p.cone };
  });

  const lower = state.bounds
    ? sortedByX(
        state.bounds.lower.map((s) =>
          toPixel(scale, [s.objectives[0] ?? 0, s.objectives[1] ?? 0]),
        ),
      )
    : [];
  const upper = state.bounds
    ? sortedByX(
        state.bounds.upper.map((u) => toPixel(scale, [u.point[0] ?? 0, u.point[1] ?? 0])),
      )
    : [];

  let coneShade: Scene["coneShade"] = null;
  let referenceMarker: Scene["referenceMarker"] = null;
  if (state.reference && state.reference.active) {
    const r = state.reference.r;
    const [rx, ry] = toPixel(scale, [r[0] ?? 0, r[1] ?? 0]);
    referenceMarker = { x: rx, y: ry, optimistic: state.reference.optimistic };
    // the cone covers everything upward-right of R in data space, which is
    // up-and-right of the marker in pixel space (y flipped)
    coneShade = {
      x: rx,
      y: scale.area.margin,
      width: scale.area.width - scale.area.margin - rx,
      height: ry - scale.area.margin,
    };
  }

  return {
    kind: "scene",
    points,
    lowerPolyline: lower,
    upperPolyline: upper,
    coneShade,
    referenceMarker,
    statusLine: `${state.status} | ${state.evaluations} evaluations | generation ${state.generation}`,
  };
}

function dimensionOf(state: ViewState): number | null {
  const sample =
    state.points[0]?.objectives ??
    state.bounds?.lower[0]?.objectives ??
    state.reference?.r ??
    null;
  return sample === null ? null : sample.length;
}

export function sceneToSvg(scene: Scene, scale: Scale): string {
  const { width, height } = scale.area;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#111418"/>`,
  ];
  if (scene.coneShade) {
    const c = scene.coneShade;
    parts.push(
      `<rect x="${c.x}" y="${c.y}" width="${Math.max(0, c.width)}" height="${Math.max(0, c.height)}" fill="#d03d3d22"/>`,
    );
  }
  const poly = (pts: [number, number][], stroke: string) =>
    pts.length > 1
      ? `<polyline fill="none" stroke="${stroke}" stroke-width="1.5" points="${pts
          .map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`)
          .join(" ")}"/>`
      : "";
  parts.push(poly(scene.upperPolyline, "#e8923c"));
  parts.push(poly(scene.lowerPolyline, "#4f86d8"));
  for (const p of scene.points) {
    const fill = p.cone ? "#ffffff" : "#7b828c";
    parts.push(
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="3.5" fill="${fill}"><title>(${p.objectives.join(", ")}) ${p.selection}</title></circle>`,
    );
  }
  if (scene.referenceMarker) {
    const m = scene.referenceMarker;
    const opacity = m.optimistic ? "0.6" : "1";
    parts.push(
      `<path d="M ${m.x - 5} ${m.y} L ${m.x + 5} ${m.y} M ${m.x} ${m.y - 5} L ${m.x} ${m.y + 5}" stroke="#d03d3d" stroke-width="2" opacity="${opacity}"/>`,
    );
  }
  parts.push(
    `<text x="8" y="${height - 6}" fill="#9aa3ad" font-size="11" font-family="monospace">${scene.statusLine}</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}
