import { CELL_GAP, CELL_SIZE, GEOMETRY, GRID_COLS, GRID_ROWS } from "../geometry.js";
import { SummaryPayload } from "../types.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Text shown for a score: the payload's number verbatim, or a dash.
 * Numbers pass through String() untouched, the client does no rounding
 * or arithmetic of its own. */
export function displayNumber(value: number | null): string {
  return value === null ? "—" : String(value);
}

/** The national happiness map: one tile per region, tinted by the
 * server-assigned color bucket. Alarmed regions are gray and carry an
 * alarm marker. Clicking a tile drills into that region's hourly view. */
export function renderSummary(payload: SummaryPayload | null): string {
  if (payload === null) {
    return '<div class="placeholder">waiting for data…</div>';
  }
  const width = GRID_COLS * (CELL_SIZE + CELL_GAP);
  const height = GRID_ROWS * (CELL_SIZE + CELL_GAP);
  const allNull = payload.provinces.every((p) => p.score === null);

  const tiles: string[] = [];
  const chips: string[] = [];
  for (const province of payload.provinces) {
    const cell = GEOMETRY[province.region];
    if (!cell) continue;
    const classes = [
      "cell",
      `bucket-${province.color_bucket}`,
      province.alarm ? "alarm" : "",
    ]
      .filter(Boolean)
      .join(" ");
    const title = `${cell.name} ${displayNumber(province.score)}`;
    if (cell.offMap) {
      chips.push(
        `<span class="chip ${classes}" data-region="${esc(province.region)}"` +
          ` data-score="${esc(displayNumber(province.score))}">` +
          `${esc(cell.name)} ${esc(displayNumber(province.score))}</span>`,
      );
      continue;
    }
    const x = cell.col * (CELL_SIZE + CELL_GAP);
    const y = cell.row * (CELL_SIZE + CELL_GAP);
    tiles.push(
      `<g class="${classes}" data-region="${esc(province.region)}"` +
        ` data-score="${esc(displayNumber(province.score))}">` +
        `<title>${esc(title)}</title>` +
        `<rect x="${x}" y="${y}" width="${CELL_SIZE}" height="${CELL_SIZE}" rx="4"></rect>` +
        `<text class="cell-name" x="${x + CELL_SIZE / 2}" y="${y + CELL_SIZE / 2}">${esc(cell.name)}</text>` +
        (province.alarm
          ? `<text class="alarm-marker" x="${x + CELL_SIZE - 8}" y="${y + 13}">⚠</text>`
          : "") +
        `</g>`,
    );
  }

  const dial =
    `<div class="dial" data-average="${esc(displayNumber(payload.national_average))}">` +
    `national average <strong>${esc(displayNumber(payload.national_average))}</strong></div>`;
  const banner = allNull ? '<div class="empty-state">no data for this date</div>' : "";
  return (
    banner +
    dial +
    `<svg class="map" viewBox="0 0 ${width} ${height}" role="img">${tiles.join("")}</svg>` +
    `<div class="chips">${chips.join("")}</div>`
  );
}
