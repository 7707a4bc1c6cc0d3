/**
 * SVG rendering of a value curve response.
 *
 * Draws LP value and buy-and-hold value against price, shades the gap
 * between them, and marks P0 and the band edges.  Point tooltips carry
 * the response numbers verbatim; axis labels shorten them for layout
 * but are derived from the same response values, never recomputed.
 */

export class ChartDataError extends Error {}

export interface ProfileResult {
  p0: number;
  v0: number;
  price: number[];
  v_lp: number[];
  v_hold: number[];
  il_paper: number[];
  il_common: number[];
}

export interface BandMarks {
  pLow: number;
  pHigh: number;
}

const WIDTH = 640;
const HEIGHT = 360;
const MARGIN = { left: 62, right: 14, top: 14, bottom: 34 };

function numberArray(value: unknown, name: string): number[] {
  if (!Array.isArray(value) || value.some((v) => typeof v !== "number")) {
    throw new ChartDataError(`${name} must be an array of numbers`);
  }
  return value as number[];
}

/** Narrow an untyped result payload, rejecting anything unchartable. */
export function assertProfile(result: unknown): ProfileResult {
  if (typeof result !== "object" || result === null) {
    throw new ChartDataError("result must be an object");
  }
  const r = result as Record<string, unknown>;
  const price = numberArray(r.price, "price");
  const vLp = numberArray(r.v_lp, "v_lp");
  const vHold = numberArray(r.v_hold, "v_hold");
  const ilPaper = numberArray(r.il_paper, "il_paper");
  const ilCommon = numberArray(r.il_common, "il_common");
  if (price.length < 2) {
    throw new ChartDataError("need at least two price samples");
  }
  if (
    vLp.length !== price.length ||
    vHold.length !== price.length ||
    ilPaper.length !== price.length ||
    ilCommon.length !== price.length
  ) {
    throw new ChartDataError("sample arrays must share one length");
  }
  if (typeof r.p0 !== "number" || typeof r.v0 !== "number") {
    throw new ChartDataError("p0 and v0 must be numbers");
  }
  return {
    p0: r.p0,
    v0: r.v0,
    price,
    v_lp: vLp,
    v_hold: vHold,
    il_paper: ilPaper,
    il_common: ilCommon,
  };
}

/** Render the curve overlay as a standalone SVG string. */
export function profileChart(result: ProfileResult, bounds: BandMarks | null): string {
  const { price, v_lp, v_hold } = result;
  const n = price.length;

  const x0 = Math.log(price[0]);
  const x1 = Math.log(price[n - 1]);
  const xSpan = x1 - x0 || 1;
  const toX = (p: number) =>
    MARGIN.left + ((Math.log(p) - x0) / xSpan) * (WIDTH - MARGIN.left - MARGIN.right);

  let yMin = Infinity;
  let yMax = -Infinity;
  for (let i = 0; i < n; i++) {
    yMin = Math.min(yMin, v_lp[i], v_hold[i]);
    yMax = Math.max(yMax, v_lp[i], v_hold[i]);
  }
  const pad = (yMax - yMin || Math.abs(yMax) || 1) * 0.05;
  const yLo = yMin - pad;
  const ySpan = yMax + pad - yLo;
  const toY = (v: number) =>
    HEIGHT - MARGIN.bottom - ((v - yLo) / ySpan) * (HEIGHT - MARGIN.top - MARGIN.bottom);

  const pt = (p: number, v: number) => `${toX(p).toFixed(2)},${toY(v).toFixed(2)}`;
  const line = (values: number[]) => price.map((p, i) => pt(p, values[i])).join(" ");

  const parts: string[] = [];
  parts.push(
    `<svg class="profile-chart" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `xmlns="http://www.w3.org/2000/svg" role="img">`,
  );

  // shaded gap: hold curve forward, LP curve back
  const back = [...price].reverse().map((p, i) => pt(p, v_lp[n - 1 - i]));
  parts.push(`<polygon class="gap" points="${line(v_hold)} ${back.join(" ")}"/>`);

  parts.push(`<polyline class="v-hold" fill="none" points="${line(v_hold)}"/>`);
  parts.push(`<polyline class="v-lp" fill="none" points="${line(v_lp)}"/>`);

  const markY0 = MARGIN.top;
  const markY1 = HEIGHT - MARGIN.bottom;
  const mark = (p: number, cls: string, label: string) => {
    if (p < price[0] || p > price[n - 1]) {
      return;
    }
    const x = toX(p).toFixed(2);
    parts.push(`<line class="${cls}" x1="${x}" y1="${markY0}" x2="${x}" y2="${markY1}"/>`);
    parts.push(`<text class="mark-label" x="${x}" y="${markY0 + 12}">${label}</text>`);
  };
  mark(result.p0, "mark-p0", "P0");
  if (bounds !== null) {
    mark(bounds.pLow, "mark-bound", "low");
    mark(bounds.pHigh, "mark-bound", "high");
  }

  // sparse tooltip points carrying the exact response values
  const stride = Math.max(1, Math.floor(n / 20));
  for (let i = 0; i < n; i += stride) {
    const title =
      `price ${String(price[i])}&#10;` +
      `v_lp ${String(v_lp[i])}&#10;` +
      `v_hold ${String(v_hold[i])}`;
    parts.push(
      `<circle class="pt" cx="${toX(price[i]).toFixed(2)}" ` +
        `cy="${toY(v_lp[i]).toFixed(2)}" r="3"><title>${title}</title></circle>`,
    );
  }

  // axes: three price anchors and the extreme sampled values
  const axisY = HEIGHT - MARGIN.bottom + 16;
  for (const p of [price[0], result.p0, price[n - 1]]) {
    parts.push(
      `<text class="axis" x="${toX(p).toFixed(2)}" y="${axisY}">${p.toPrecision(4)}</text>`,
    );
  }
  for (const v of [yMin, yMax]) {
    parts.push(
      `<text class="axis axis-y" x="${MARGIN.left - 6}" y="${toY(v).toFixed(2)}">` +
        `${v.toPrecision(4)}</text>`,
    );
  }

  parts.push(
    `<text class="legend legend-lp" x="${WIDTH - MARGIN.right}" y="${MARGIN.top + 14}">LP value</text>`,
  );
  parts.push(
    `<text class="legend legend-hold" x="${WIDTH - MARGIN.right}" y="${MARGIN.top + 30}">hold value</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}
