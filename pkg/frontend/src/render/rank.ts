import { RankPayload } from "../types.js";
import { displayNumber } from "./map.js";

const BAR_WIDTH = 16;
const BAR_GAP = 6;
const PLOT_HEIGHT = 220;
const AXIS_Y = PLOT_HEIGHT / 2;
const LABEL_BAND = 70;

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Global ranker: one signed bar per province around the zero axis,
 * already ordered best-to-worst by the API. Bar length is the only
 * client-side transform; the delta itself is displayed verbatim. */
export function renderRank(payload: RankPayload | null): string {
  if (payload === null) {
    return '<div class="placeholder">waiting for data…</div>';
  }
  if (payload.length === 0) {
    return '<div class="empty-state">no ranked provinces</div>';
  }
  const maxAbs = Math.max(...payload.map((e) => Math.abs(e.delta)), 1e-9);
  const scale = (AXIS_Y - 10) / maxAbs;
  const width = payload.length * (BAR_WIDTH + BAR_GAP) + BAR_GAP;

  const bars = payload
    .map((entry, i) => {
      const x = BAR_GAP + i * (BAR_WIDTH + BAR_GAP);
      const magnitude = Math.abs(entry.delta) * scale;
      const positive = entry.delta >= 0;
      const y = positive ? AXIS_Y - magnitude : AXIS_Y;
      return (
        `<g class="bar ${positive ? "positive" : "negative"}"` +
        ` data-region="${esc(entry.region)}"` +
        ` data-score="${esc(displayNumber(entry.score))}"` +
        ` data-delta="${esc(displayNumber(entry.delta))}">` +
        `<title>${esc(entry.region)} ${esc(displayNumber(entry.score))} (Δ ${esc(displayNumber(entry.delta))})</title>` +
        `<rect x="${x}" y="${y}" width="${BAR_WIDTH}" height="${Math.max(magnitude, 0.5)}"></rect>` +
        `<text class="bar-label" transform="rotate(90 ${x + BAR_WIDTH / 2} ${PLOT_HEIGHT + 8})"` +
        ` x="${x + BAR_WIDTH / 2}" y="${PLOT_HEIGHT + 8}">${esc(entry.region)}</text>` +
        `</g>`
      );
    })
    .join("");

  return (
    `<svg class="rank" viewBox="0 0 ${width} ${PLOT_HEIGHT + LABEL_BAND}" role="img">` +
    `<line class="zero-axis" x1="0" y1="${AXIS_Y}" x2="${width}" y2="${AXIS_Y}"></line>` +
    bars +
    `</svg>`
  );
}
