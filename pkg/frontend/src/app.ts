// DOM glue: wires the client, mailbox, store and renderer into the page.

import { SessionClient, startApplyLoop } from "./client.js";
import { EventMailbox } from "./mailbox.js";
import { pickReferencePoint } from "./picker.js";
import { renderOutcomeSpace, sceneToSvg } from "./render.js";
import { Scale, scaleFromBounds } from "./scale.js";
import {
  applyEvent,
  initialViewState,
  optimisticReference,
  revertReference,
  ViewState,
} from "./store.js";

const PLOT = { width: 720, height: 480, margin: 36 };

export function mountApp(root: HTMLElement, baseUrl: string): void {
  root.innerHTML = `
    <div class="steering">
      <div class="toolbar">
        <textarea id="instance" rows="4" placeholder="instance file contents"></textarea>
        <button id="create">create</button>
        <button id="start" disabled>start</button>
        <button id="pause" disabled>pause</button>
        <button id="accept" disabled>accept selected</button>
        <span id="toast"></span>
      </div>
      <div id="plot"></div>
      <div id="selection"></div>
    </div>`;

  const client = new SessionClient(baseUrl);
  const mailbox = new EventMailbox();
  let state: ViewState = initialViewState("");
  let scale: Scale | null = null;
  let selectedBitstring: string | null = null;
  let stopLoop: (() => void) | null = null;

  const el = <T extends HTMLElement>(id: string) =>
    root.querySelector<T>(`#${id}`)!;
  const plot = el<HTMLDivElement>("plot");

  function redraw(): void {
    if (scale === null) return;
    const scene = renderOutcomeSpace(state, scale);
    if (scene.kind === "unsupported") {
      plot.textContent = scene.message;
      return;
    }
    plot.innerHTML = sceneToSvg(scene, scale);
    el("toast").textContent = state.toast ?? "";
    el<HTMLButtonElement>("start").disabled = !(
      state.status === "idle" || state.status === "paused"
    );
    el<HTMLButtonElement>("pause").disabled = state.status !== "searching";
    el<HTMLButtonElement>("accept").disabled =
      state.status === "done" || selectedBitstring === null;
    if (state.accepted) {
      el("selection").textContent =
        `accepted x*: (${state.accepted.objectives.join(", ")}) ${state.accepted.selection}`;
    }
  }

  el("create").addEventListener("click", async () => {
    const instance = el<HTMLTextAreaElement>("instance").value;
    const created = await client.createSession(instance, {});
    state = initialViewState(created.session_id);
    mountStream(created.session_id);
  });

  function mountStream(sessionId: string): void {
    stopLoop?.();
    client.subscribe(sessionId, mailbox).catch(() => undefined);
    stopLoop = startApplyLoop(mailbox, (events) => {
      let changed = false;
      for (const event of events) {
        if (event.type === "bounds") {
          scale = scaleFromBounds(event.payload, PLOT);
        }
        changed = applyEvent(state, event) || changed;
      }
      if (changed) redraw();
    });
  }

  el("start").addEventListener("click", () => void client.start(state.sessionId));
  el("pause").addEventListener("click", () => void client.pause(state.sessionId));
  el("accept").addEventListener("click", () => {
    if (selectedBitstring !== null) {
      void client.accept(state.sessionId, selectedBitstring);
    }
  });

  plot.addEventListener("click", (ev: MouseEvent) => {
    if (scale === null) return;
    const rect = plot.getBoundingClientRect();
    const px = ev.clientX - rect.left;
    const py = ev.clientY - rect.top;
    // clicking near a cone point selects it for acceptance; elsewhere the
    // click moves the reference point
    const scene = renderOutcomeSpace(state, scale);
    if (scene.kind === "scene") {
      const hit = scene.points.find(
        (p) => p.cone && Math.hypot(p.x - px, p.y - py) < 6,
      );
      if (hit) {
        selectedBitstring = hit.selection;
        el("selection").textContent =
          `selected (${hit.objectives.join(", ")}) ${hit.selection}`;
        redraw();
        return;
      }
    }
    const command = pickReferencePoint(state, scale, px, py);
    if (command === null) return;
    const previous = optimisticReference(state, command.r);
    redraw();
    client.setReference(command.session_id, command.r).catch((err: Error) => {
      revertReference(state, previous, err.message);
      redraw();
    });
  });
}
