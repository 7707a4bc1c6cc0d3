/**
 * Slicing display strings out of server responses.
 *
 * The explorer never reformats a loss number: what it shows is a
 * substring of a cached response body.  These helpers locate those
 * substrings (a JSON number literal, or a percentage cell inside the
 * server-rendered table text).
 */

const JSON_NUMBER = "-?(?:0|[1-9][0-9]*)(?:\\.[0-9]+)?(?:[eE][-+]?[0-9]+)?";

/**
 * Exact decimal literal stored under `key` in a raw JSON body, or null.
 *
 * Matches the first occurrence, which is enough for the flat result
 * objects the point endpoints return.
 */
export function numberLiteral(raw: string, key: string): string | null {
  const m = raw.match(new RegExp(`"${key}"\\s*:\\s*(${JSON_NUMBER})`));
  return m ? m[1] : null;
}

/**
 * Percentage cell (row, col) of a rendered loss table, or null.
 *
 * Data rows start with a bracketed band label; cells always carry two
 * decimals while labels are integer percentages, so the cell pattern
 * cannot match a label.
 */
export function tableCell(text: string, row: number, col: number): string | null {
  const dataRows = text.split("\n").filter((line) => line.trimStart().startsWith("["));
  if (row < 0 || row >= dataRows.length) {
    return null;
  }
  const cells = dataRows[row].match(/-?\d+\.\d{2}%/g);
  if (cells === null || col < 0 || col >= cells.length) {
    return null;
  }
  return cells[col];
}

/**
 * Exact literal of the first cell in a raw table response, or null.
 *
 * The one-row one-column tables the explorer requests store it as
 * `"cells":[[<number>]]`.
 */
export function cellLiteral(raw: string): string | null {
  const m = raw.match(new RegExp(`"cells"\\s*:\\s*\\[\\s*\\[\\s*(${JSON_NUMBER})`));
  return m ? m[1] : null;
}

/** Band label of a rendered table row, e.g. "[50%, 150%]". */
export function tableRowLabel(text: string, row: number): string | null {
  const dataRows = text.split("\n").filter((line) => line.trimStart().startsWith("["));
  if (row < 0 || row >= dataRows.length) {
    return null;
  }
  const line = dataRows[row];
  const close = line.indexOf("]");
  return close === -1 ? null : line.slice(line.indexOf("["), close + 1);
}

/** Move header of a rendered table, e.g. "+20%" for column 0. */
export function tableMoveHeader(text: string, col: number): string | null {
  const header = text.split("\n", 1)[0] ?? "";
  const moves = header.match(/[-+]\d+%/g);
  if (moves === null || col < 0 || col >= moves.length) {
    return null;
  }
  return moves[col];
}
