import { EMOTION_LABELS, EmotionLabel, HourlyPayload } from "../types.js";
import { displayNumber } from "./map.js";

const PLOT_WIDTH = 480;
const PLOT_HEIGHT = 200;
const STEP = PLOT_WIDTH / 23;

export interface SeriesPoint {
  hour: number;
  ratio: number;
}

/** One series per emotion; hours whose row is null are simply absent,
 * so a gap in the data stays a gap in the plot. */
export function seriesPoints(
  payload: HourlyPayload,
): Record<EmotionLabel, SeriesPoint[]> {
  const series = Object.fromEntries(
    EMOTION_LABELS.map((label) => [label, [] as SeriesPoint[]]),
  ) as Record<EmotionLabel, SeriesPoint[]>;
  for (const row of payload.hours) {
    if (row.ratios === null) continue;
    EMOTION_LABELS.forEach((label, i) => {
      series[label].push({ hour: row.hour, ratio: row.ratios![i] });
    });
  }
  return series;
}

/** Contiguous hour runs, so gaps break the line instead of plotting 0. */
export function segments(points: SeriesPoint[]): SeriesPoint[][] {
  const runs: SeriesPoint[][] = [];
  let current: SeriesPoint[] = [];
  let previousHour: number | null = null;
  for (const point of points) {
    if (previousHour !== null && point.hour !== previousHour + 1) {
      if (current.length) runs.push(current);
      current = [];
    }
    current.push(point);
    previousHour = point.hour;
  }
  if (current.length) runs.push(current);
  return runs;
}

function toXY(point: SeriesPoint): string {
  const x = point.hour * STEP;
  const y = PLOT_HEIGHT - point.ratio * PLOT_HEIGHT;
  return `${x},${y}`;
}

/** Five emotion-ratio lines across the 24 hours of one region-day.
 * Happy is the pink line, fear the purple one. */
export function renderHourly(payload: HourlyPayload | null): string {
  if (payload === null) {
    return '<div class="placeholder">pick a province on the map</div>';
  }
  const series = seriesPoints(payload);
  const defined = payload.hours.filter((h) => h.ratios !== null).length;
  if (defined === 0) {
    return `<div class="empty-state">no emotional tweets in ${payload.region} on ${payload.date}</div>`;
  }

  const paths = EMOTION_LABELS.map((label) => {
    const runs = segments(series[label]);
    const pieces = runs
      .map((run) =>
        run.length === 1
          ? `<circle class="dot line-${label}" cx="${run[0].hour * STEP}" cy="${PLOT_HEIGHT - run[0].ratio * PLOT_HEIGHT}" r="2.5"></circle>`
          : `<polyline class="line line-${label}" points="${run.map(toXY).join(" ")}"></polyline>`,
      )
      .join("");
    const markers = series[label]
      .map(
        (p) =>
          `<circle class="marker line-${label}" data-hour="${p.hour}"` +
          ` data-ratio="${displayNumber(p.ratio)}" cx="${p.hour * STEP}"` +
          ` cy="${PLOT_HEIGHT - p.ratio * PLOT_HEIGHT}" r="1.8"></circle>`,
      )
      .join("");
    return `<g class="series" data-label="${label}">${pieces}${markers}</g>`;
  }).join("");

  const legend = EMOTION_LABELS.map(
    (label) => `<span class="legend-item line-${label}">${label}</span>`,
  ).join("");

  return (
    `<div class="hourly-title">${payload.region} · ${payload.date}</div>` +
    `<svg class="hourly" viewBox="-10 -10 ${PLOT_WIDTH + 20} ${PLOT_HEIGHT + 30}" role="img">` +
    `<line class="baseline" x1="0" y1="${PLOT_HEIGHT}" x2="${PLOT_WIDTH}" y2="${PLOT_HEIGHT}"></line>` +
    paths +
    `</svg>` +
    `<div class="legend">${legend}</div>`
  );
}
