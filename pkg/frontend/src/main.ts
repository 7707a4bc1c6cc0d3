/**
 * Page wiring: form controls in, rendered panels out.
 *
 * The API base URL is the only configuration and can be overridden
 * with an `api` query parameter when the bundle is served away from
 * the engine.
 */

import { ApiClient } from "./api";
import { ExplorerController, RenderSink } from "./controller";
import { ExplorerState, PositionKind, ConventionName } from "./state";
import {
  envelopeWarnings,
  failureBanner,
  formErrorsHtml,
  profilePanel,
  readoutHtml,
  warningsHtml,
} from "./view";

const byId = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
};

const form = byId<HTMLFormElement>("controls");
const readoutEl = byId<HTMLElement>("readout");
const chartEl = byId<HTMLElement>("chart");
const warningsEl = byId<HTMLElement>("warnings");
const errorsEl = byId<HTMLElement>("form-errors");
const bannerEl = byId<HTMLElement>("banner");

const number = (id: string) => Number(byId<HTMLInputElement>(id).value);
const checkedValue = (name: string): string => {
  const input = form.querySelector<HTMLInputElement>(`input[name="${name}"]:checked`);
  return input === null ? "" : input.value;
};

function readState(): ExplorerState {
  return {
    kind: (checkedValue("kind") || "range") as PositionKind,
    p0: number("p0"),
    ratio: number("ratio"),
    lowPct: number("low"),
    highPct: number("high"),
    movePct: number("move"),
    feeTier: Number(byId<HTMLSelectElement>("fee").value),
    convention: (checkedValue("convention") || "virtual") as ConventionName,
  };
}

function syncControls(state: ExplorerState): void {
  byId("v2-controls").hidden = state.kind !== "v2";
  byId("range-controls").hidden = state.kind !== "range";
  byId("ratio-val").textContent = String(state.ratio);
  byId("low-val").textContent = `${state.lowPct}%`;
  byId("high-val").textContent = `${state.highPct}%`;
  byId("move-val").textContent = `${state.movePct > 0 ? "+" : ""}${state.movePct}%`;
}

const panelWarnings: Record<"readout" | "profile", string[]> = {
  readout: [],
  profile: [],
};

function refreshWarnings(): void {
  const merged = [...new Set([...panelWarnings.readout, ...panelWarnings.profile])];
  warningsEl.innerHTML = warningsHtml(merged);
  warningsEl.hidden = merged.length === 0;
}

const sink: RenderSink = {
  renderReadout(res, state) {
    bannerEl.hidden = true;
    readoutEl.innerHTML = readoutHtml(res, state);
    panelWarnings.readout = envelopeWarnings(res);
    refreshWarnings();
  },
  renderProfile(res, state) {
    bannerEl.hidden = true;
    chartEl.innerHTML = profilePanel(res, state);
    panelWarnings.profile = envelopeWarnings(res);
    refreshWarnings();
  },
  renderFormErrors(errors) {
    errorsEl.innerHTML = formErrorsHtml(errors);
    errorsEl.hidden = errors.length === 0;
  },
  renderFailure(message, requestId) {
    bannerEl.innerHTML = failureBanner(message, requestId);
    bannerEl.hidden = false;
  },
};

const apiBase = new URLSearchParams(window.location.search).get("api") ?? "/api/v1";
const controller = new ExplorerController(new ApiClient(apiBase), sink);

form.addEventListener("input", () => {
  const state = readState();
  syncControls(state);
  controller.onInput(state);
});
form.addEventListener("submit", (event) => event.preventDefault());

const initial = readState();
syncControls(initial);
controller.submit(initial);
