/**
 * HTML fragments for the explorer panels.
 *
 * Every loss number in these fragments is a verbatim substring of the
 * response it came from: formatted cells are cut out of the rendered
 * table text, exact values out of the raw JSON bytes.  The page and
 * the tests share these functions, so what is asserted is what is
 * shown.
 */

import { CachedResponse } from "./controller";
import {
  cellLiteral,
  numberLiteral,
  tableCell,
  tableMoveHeader,
  tableRowLabel,
} from "./format";
import { ChartDataError, assertProfile, profileChart } from "./chart";
import { ExplorerState, FieldError } from "./state";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function envelopeField(res: CachedResponse, field: string): unknown {
  if (typeof res.json !== "object" || res.json === null) {
    return undefined;
  }
  return (res.json as Record<string, unknown>)[field];
}

/** Warnings the service attached to a response. */
export function envelopeWarnings(res: CachedResponse): string[] {
  const warnings = envelopeField(res, "warnings");
  if (!Array.isArray(warnings)) {
    return [];
  }
  return warnings.filter((w): w is string => typeof w === "string");
}

export function warningsHtml(warnings: string[]): string {
  if (warnings.length === 0) {
    return "";
  }
  const items = warnings.map((w) => `<li>${escapeHtml(w)}</li>`).join("");
  return `<ul class="warnings">${items}</ul>`;
}

export function failureBanner(message: string, requestId: string): string {
  return (
    `<p class="banner-text"><strong>request ${escapeHtml(requestId)} failed:</strong> ` +
    `${escapeHtml(message)}</p>`
  );
}

export function formErrorsHtml(errors: FieldError[]): string {
  if (errors.length === 0) {
    return "";
  }
  const items = errors
    .map((e) => `<li data-field="${escapeHtml(e.field)}">${escapeHtml(e.message)}</li>`)
    .join("");
  return `<ul class="form-errors">${items}</ul>`;
}

function responseId(res: CachedResponse): string {
  const id = envelopeField(res, "request_id");
  return typeof id === "string" || typeof id === "number" ? String(id) : "unknown";
}

function brokenResponse(res: CachedResponse, what: string): string {
  return failureBanner(`response is missing ${what}`, responseId(res));
}

/** Headline loss panel for the current state. */
export function readoutHtml(res: CachedResponse, state: ExplorerState): string {
  if (state.kind === "v2") {
    const paper = numberLiteral(res.raw, "epsilon_paper");
    const common = numberLiteral(res.raw, "epsilon_common");
    const ratio = numberLiteral(res.raw, "ratio");
    if (paper === null || common === null || ratio === null) {
      return brokenResponse(res, "the loss values");
    }
    return (
      `<div class="readout-main"><span class="il-big">${paper}</span>` +
      `<span class="il-caption">loss vs opening value at R = ${ratio}</span></div>` +
      `<dl class="readout-fine">` +
      `<dt>vs opening value</dt><dd>${paper}</dd>` +
      `<dt>vs held value</dt><dd>${common}</dd>` +
      `</dl>`
    );
  }
  const text = envelopeField(res, "result");
  const rendered =
    typeof text === "object" && text !== null
      ? (text as Record<string, unknown>).text
      : undefined;
  if (typeof rendered !== "string") {
    return brokenResponse(res, "the rendered table");
  }
  const cell = tableCell(rendered, 0, 0);
  const label = tableRowLabel(rendered, 0);
  const move = tableMoveHeader(rendered, 0);
  const exact = cellLiteral(res.raw);
  if (cell === null || label === null || move === null || exact === null) {
    return brokenResponse(res, "the table cell");
  }
  return (
    `<div class="readout-main"><span class="il-big">${escapeHtml(cell)}</span>` +
    `<span class="il-caption">loss vs hold for band ${escapeHtml(label)} at a ` +
    `${escapeHtml(move)} move</span></div>` +
    `<dl class="readout-fine"><dt>share of opening value</dt><dd>${exact}</dd></dl>`
  );
}

/** Chart panel; malformed curve data degrades to an inline banner. */
export function profilePanel(res: CachedResponse, state: ExplorerState): string {
  let svg: string;
  try {
    const profile = assertProfile(envelopeField(res, "result"));
    const bounds =
      state.kind === "range"
        ? {
            pLow: state.p0 * (state.lowPct / 100),
            pHigh: state.p0 * (state.highPct / 100),
          }
        : null;
    svg = profileChart(profile, bounds);
  } catch (err) {
    if (err instanceof ChartDataError) {
      return failureBanner(err.message, responseId(res));
    }
    throw err;
  }
  return svg;
}
