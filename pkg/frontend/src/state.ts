/**
 * Explorer form state and its mapping onto compute requests.
 *
 * The state is a plain snapshot of the controls: position kind, price
 * ratio or band sliders (expressed as percentages of P0), the scenario
 * move, fee tier, and the reserve convention.  buildRequest turns a
 * valid snapshot into the exact JSON body the API expects; the mapping
 * is a pure function, so equal states always produce equal requests
 * and can share one cached response.
 */

export type ConventionName = "virtual" | "quadratic";
export type PositionKind = "v2" | "range";

export interface ExplorerState {
  kind: PositionKind;
  /** Opening price P0 in units of X per Y. */
  p0: number;
  /** Full-range mode: price ratio R = P1 / P0. */
  ratio: number;
  /** Band mode: lower bound as a percentage of P0. */
  lowPct: number;
  /** Band mode: upper bound as a percentage of P0. */
  highPct: number;
  /** Band mode: scenario price move as a percentage of P0. */
  movePct: number;
  /** Carried for scenario panes; the loss queries do not depend on it. */
  feeTier: number;
  convention: ConventionName;
}

export const DEFAULT_STATE: ExplorerState = {
  kind: "range",
  p0: 1.0,
  ratio: 1.0,
  lowPct: 50,
  highPct: 150,
  movePct: 20,
  feeTier: 0.003,
  convention: "virtual",
};

export interface FieldError {
  field: string;
  message: string;
}

/** Client-side checks; any hit means no request is sent. */
export function validateState(s: ExplorerState): FieldError[] {
  const errors: FieldError[] = [];
  const positive = (v: number) => Number.isFinite(v) && v > 0;
  if (!positive(s.p0)) {
    errors.push({ field: "p0", message: "P0 must be a positive number" });
  }
  if (s.kind === "v2") {
    if (!positive(s.ratio)) {
      errors.push({ field: "ratio", message: "price ratio must be a positive number" });
    }
    return errors;
  }
  if (!Number.isFinite(s.lowPct) || s.lowPct < 0) {
    errors.push({ field: "lowPct", message: "lower bound must be zero or more" });
  }
  if (!positive(s.highPct)) {
    errors.push({ field: "highPct", message: "upper bound must be positive" });
  }
  if (errors.length === 0 && s.lowPct >= s.highPct) {
    errors.push({ field: "range", message: "lower bound must be below the upper bound" });
  }
  if (!Number.isFinite(s.movePct) || s.movePct <= -100) {
    errors.push({ field: "movePct", message: "move must keep the price positive" });
  }
  return errors;
}

export interface ComputeRequest {
  /** Path segment under the API base URL. */
  endpoint: string;
  body: Record<string, unknown>;
}

/**
 * Request whose response carries the headline loss numbers.
 *
 * Full-range mode asks the point endpoint directly at the ratio
 * slider; band mode asks for a one-row table so the response includes
 * the server-rendered percentage cell.
 */
export function buildRequest(s: ExplorerState): ComputeRequest {
  if (s.kind === "v2") {
    return { endpoint: "il", body: { kind: "v2", R: s.ratio } };
  }
  return {
    endpoint: "table",
    body: {
      p0: s.p0,
      ranges: [[s.p0 * (s.lowPct / 100), s.p0 * (s.highPct / 100)]],
      moves: [s.movePct / 100],
      convention: s.convention,
    },
  };
}

/** Request for the value-curve samples behind the chart. */
export function buildProfileRequest(s: ExplorerState): ComputeRequest {
  let position: Record<string, unknown>;
  let lo: number;
  let hi: number;
  if (s.kind === "v2") {
    position = { kind: "v2", convention: s.convention };
    lo = s.p0 / 4;
    hi = s.p0 * 4;
  } else {
    const pLow = s.p0 * (s.lowPct / 100);
    const pHigh = s.p0 * (s.highPct / 100);
    position = { kind: "range", p_low: pLow, p_high: pHigh, convention: s.convention };
    // window half a band-width past each edge so the out-of-range legs show
    lo = pLow > 0 ? Math.max(pLow * 0.5, s.p0 / 100) : s.p0 / 4;
    hi = Math.min(pHigh * 1.5, s.p0 * 100);
  }
  return {
    endpoint: "profile",
    body: {
      position,
      p0: s.p0,
      grid: { kind: "log", lo, hi, n: 201 },
    },
  };
}

function canonicalJson(value: unknown): string {
  if (value === null || typeof value !== "object") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  const entries = Object.entries(value as Record<string, unknown>)
    .filter(([key, v]) => v !== undefined && key !== "request_id")
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0));
  return "{" + entries.map(([k, v]) => JSON.stringify(k) + ":" + canonicalJson(v)).join(",") + "}";
}

/**
 * Cache key: endpoint plus the canonical body serialization.
 *
 * Keys are order-insensitive and ignore request_id, so two requests
 * that the service must answer identically always share a cache slot.
 */
export function requestKey(req: ComputeRequest): string {
  return req.endpoint + " " + canonicalJson(req.body);
}
