// Chart geometry and SVG rendering, all pure functions over the API
// payload. Values are plotted exactly as returned -- pixel scaling only,
// never renormalization -- and missing years break the line into gaps.

import type { AnomalyReport, SeriesEntry, SeriesResponse } from './api.js';

export const CHART_WIDTH = 860;
export const CHART_HEIGHT = 360;
export const MARGIN = { top: 12, right: 16, bottom: 28, left: 64 };

export const LINE_COLORS = [
  '#1f77b4',
  '#d62728',
  '#2ca02c',
  '#9467bd',
  '#ff7f0e',
  '#8c564b',
  '#e377c2',
  '#17becf',
];

export interface ChartPoint {
  year: number;
  value: number;
  x: number;
  y: number;
}

export interface ChartLine {
  phrase: string;
  color: string;
  /** Consecutive runs of non-missing years; gaps between segments. */
  segments: ChartPoint[][];
}

export interface ChartModel {
  startYear: number;
  endYear: number;
  yMax: number;
  lines: ChartLine[];
}

export function innerWidth(): number {
  return CHART_WIDTH - MARGIN.left - MARGIN.right;
}

export function innerHeight(): number {
  return CHART_HEIGHT - MARGIN.top - MARGIN.bottom;
}

export function xForYear(year: number, startYear: number, endYear: number): number {
  const span = Math.max(endYear - startYear, 1);
  return MARGIN.left + ((year - startYear) / span) * innerWidth();
}

export function yearForX(x: number, startYear: number, endYear: number): number {
  const span = Math.max(endYear - startYear, 1);
  const year = startYear + ((x - MARGIN.left) / innerWidth()) * span;
  return Math.max(startYear, Math.min(endYear, Math.round(year)));
}

export function yForValue(value: number, yMax: number): number {
  if (yMax <= 0) return MARGIN.top + innerHeight();
  return MARGIN.top + (1 - value / yMax) * innerHeight();
}

function segmentsOf(
  entry: SeriesEntry,
  startYear: number,
  endYear: number,
  yMax: number,
): ChartPoint[][] {
  const missing = new Set(entry.missing_years);
  const segments: ChartPoint[][] = [];
  let current: ChartPoint[] = [];
  entry.values.forEach((value, i) => {
    const year = startYear + i;
    if (missing.has(year)) {
      if (current.length > 0) segments.push(current);
      current = [];
      return;
    }
    current.push({
      year,
      value,
      x: xForYear(year, startYear, endYear),
      y: yForValue(value, yMax),
    });
  });
  if (current.length > 0) segments.push(current);
  return segments;
}

export function chartModel(payload: SeriesResponse): ChartModel {
  const yMax = Math.max(
    0,
    ...payload.series.flatMap((s) =>
      s.values.filter((_, i) => !s.missing_years.includes(payload.start_year + i)),
    ),
  );
  return {
    startYear: payload.start_year,
    endYear: payload.end_year,
    yMax,
    lines: payload.series.map((entry, i) => ({
      phrase: entry.phrase,
      color: LINE_COLORS[i % LINE_COLORS.length]!,
      segments: segmentsOf(entry, payload.start_year, payload.end_year, yMax),
    })),
  };
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function axisTicks(startYear: number, endYear: number): number[] {
  const span = endYear - startYear;
  const step = span > 400 ? 100 : span > 150 ? 50 : span > 40 ? 20 : span > 12 ? 5 : 1;
  const ticks: number[] = [];
  for (let y = Math.ceil(startYear / step) * step; y <= endYear; y += step) {
    ticks.push(y);
  }
  return ticks;
}

export function renderChartSvg(
  model: ChartModel,
  anomalies: AnomalyReport[] = [],
  brush: [number, number] | null = null,
): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT}" ` +
      `width="${CHART_WIDTH}" height="${CHART_HEIGHT}" class="chart">`,
  );
  const bottom = MARGIN.top + innerHeight();
  const right = MARGIN.left + innerWidth();

  if (brush) {
    const x0 = xForYear(brush[0], model.startYear, model.endYear);
    const x1 = xForYear(brush[1], model.startYear, model.endYear);
    parts.push(
      `<rect class="brush" x="${Math.min(x0, x1).toFixed(1)}" y="${MARGIN.top}" ` +
        `width="${Math.abs(x1 - x0).toFixed(1)}" height="${innerHeight()}" ` +
        `fill="#1f77b4" opacity="0.12"/>`,
    );
  }

  parts.push(
    `<line x1="${MARGIN.left}" y1="${bottom}" x2="${right}" y2="${bottom}" stroke="#444"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${bottom}" stroke="#444"/>`,
  );
  for (const tick of axisTicks(model.startYear, model.endYear)) {
    const x = xForYear(tick, model.startYear, model.endYear);
    parts.push(
      `<line x1="${x.toFixed(1)}" y1="${bottom}" x2="${x.toFixed(1)}" y2="${bottom + 5}" stroke="#444"/>`,
      `<text x="${x.toFixed(1)}" y="${bottom + 18}" text-anchor="middle" class="tick">${tick}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left - 8}" y="${MARGIN.top + 4}" text-anchor="end" class="tick">` +
      `${model.yMax.toExponential(2)}</text>`,
    `<text x="${MARGIN.left - 8}" y="${bottom}" text-anchor="end" class="tick">0</text>`,
  );

  for (const line of model.lines) {
    for (const segment of line.segments) {
      if (segment.length === 1) {
        const p = segment[0]!;
        parts.push(
          `<circle cx="${p.x.toFixed(2)}" cy="${p.y.toFixed(2)}" r="2.5" fill="${line.color}"/>`,
        );
      } else {
        const points = segment
          .map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`)
          .join(' ');
        parts.push(
          `<polyline points="${points}" fill="none" stroke="${line.color}" stroke-width="1.6"/>`,
        );
      }
    }
  }

  for (const report of anomalies) {
    if (report.year < model.startYear || report.year > model.endYear) continue;
    const x = xForYear(report.year, model.startYear, model.endYear);
    parts.push(
      `<circle class="anomaly" data-year="${report.year}" cx="${x.toFixed(2)}" ` +
        `cy="${MARGIN.top + 6}" r="5" fill="#d62728" opacity="0.8">` +
        `<title>${escapeXml(report.note)}</title></circle>`,
    );
  }
  parts.push('</svg>');
  return parts.join('\n');
}

export function renderLegendHtml(model: ChartModel): string {
  return model.lines
    .map(
      (line) =>
        `<span class="legend-item"><span class="swatch" style="background:${line.color}">` +
        `</span>${escapeXml(line.phrase)}</span>`,
    )
    .join('');
}
