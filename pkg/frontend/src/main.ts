// Browser bootstrap: wires the controls, chart, and drill-down table to
// the JSON API. All rendering logic lives in chart.ts; this file only
// moves data and DOM around. In-flight requests are superseded by newer
// ones (latest-wins via AbortController).

import {
  ApiError,
  fetchAnomalies,
  fetchCorpora,
  fetchDocuments,
  fetchSeries,
  type AnomalyReport,
  type SeriesResponse,
} from './api.js';
import { chartModel, renderChartSvg, renderLegendHtml, yearForX } from './chart.js';
import {
  DEFAULT_STATE,
  parseState,
  phrasesOf,
  serializeState,
  type ViewState,
} from './state.js';

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

let state: ViewState = { ...DEFAULT_STATE, ...parseState(location.search) };
let lastSeries: SeriesResponse | null = null;
let lastAnomalies: AnomalyReport[] = [];
let seriesAbort: AbortController | null = null;
let docsAbort: AbortController | null = null;

function pushState(): void {
  history.replaceState(null, '', `?${serializeState(state)}`);
}

function showError(message: string | null): void {
  const banner = $('error-banner');
  banner.textContent = message ?? '';
  banner.style.display = message ? 'block' : 'none';
}

function syncControls(): void {
  ($('query') as HTMLInputElement).value = state.query;
  ($('start') as HTMLInputElement).value = String(state.startYear);
  ($('end') as HTMLInputElement).value = String(state.endYear);
  ($('smoothing') as HTMLInputElement).value = String(state.smoothing);
  $('smoothing-label').textContent = String(state.smoothing);
  ($('case') as HTMLInputElement).checked = state.caseInsensitive;
  ($('normalize') as HTMLSelectElement).value = state.normalization;
  ($('anomaly') as HTMLInputElement).checked = state.anomalyOverlay;
  ($('submit') as HTMLButtonElement).disabled = phrasesOf(state).length === 0;
}

function drawChart(): void {
  if (!lastSeries) return;
  const model = chartModel(lastSeries);
  $('chart-host').innerHTML = renderChartSvg(
    model,
    state.anomalyOverlay ? lastAnomalies : [],
    state.drillInterval,
  );
  $('legend').innerHTML = renderLegendHtml(model);
  wireBrush();
  wireAnomalyMarkers();
}

async function refreshSeries(): Promise<void> {
  if (phrasesOf(state).length === 0 || !state.corpus) return;
  seriesAbort?.abort();
  seriesAbort = new AbortController();
  try {
    lastSeries = await fetchSeries(state, seriesAbort.signal);
    lastAnomalies = state.anomalyOverlay
      ? await fetchAnomalies(state.corpus, phrasesOf(state)[0]!, seriesAbort.signal)
      : [];
    showError(null);
    drawChart();
  } catch (err) {
    if ((err as Error).name === 'AbortError') return;
    // Keep the last good chart; surface the failure inline.
    showError(err instanceof ApiError ? `${err.code}: ${err.message}` : String(err));
  }
}

async function refreshDocuments(): Promise<void> {
  const host = $('documents');
  if (!state.drillInterval) {
    host.innerHTML = '';
    return;
  }
  const phrase = phrasesOf(state)[0];
  if (!phrase) return;
  docsAbort?.abort();
  docsAbort = new AbortController();
  const [d0, d1] = state.drillInterval;
  try {
    const docs = await fetchDocuments(state.corpus, phrase, d0, d1, docsAbort.signal);
    if (docs.length === 0) {
      host.innerHTML = `<p class="empty">No documents matching “${phrase}” in ${d0}–${d1}.</p>`;
      return;
    }
    const rows = docs
      .map((d) => `<tr><td>${d.year}</td><td>${d.title}</td><td>${d.doc_id}</td></tr>`)
      .join('');
    host.innerHTML =
      `<h3>Documents with “${phrase}”, ${d0}–${d1}</h3>` +
      `<table><thead><tr><th>year</th><th>title</th><th>doc id</th></tr></thead>` +
      `<tbody>${rows}</tbody></table>`;
  } catch (err) {
    if ((err as Error).name === 'AbortError') return;
    if (err instanceof ApiError && err.status === 409) {
      host.innerHTML = `<p class="notice">${err.message} — drill-down needs a natively ingested corpus.</p>`;
    } else {
      host.innerHTML = `<p class="notice">${String(err)}</p>`;
    }
  }
}

function wireBrush(): void {
  const svg = $('chart-host').querySelector('svg');
  if (!svg || !lastSeries) return;
  let dragStart: number | null = null;

  const yearAt = (event: MouseEvent): number => {
    const rect = svg.getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * svg.viewBox.baseVal.width;
    return yearForX(x, lastSeries!.start_year, lastSeries!.end_year);
  };

  svg.addEventListener('mousedown', (event) => {
    dragStart = yearAt(event);
  });
  svg.addEventListener('mouseup', (event) => {
    if (dragStart === null) return;
    const end = yearAt(event);
    state.drillInterval = [Math.min(dragStart, end), Math.max(dragStart, end)];
    dragStart = null;
    pushState();
    drawChart();
    void refreshDocuments();
  });
}

function wireAnomalyMarkers(): void {
  for (const marker of $('chart-host').querySelectorAll('.anomaly')) {
    marker.addEventListener('click', () => {
      const year = Number((marker as SVGElement).dataset.year);
      state.drillInterval = [year - 5, year + 5];
      pushState();
      drawChart();
      void refreshDocuments();
    });
  }
}

function readControls(): void {
  state.query = ($('query') as HTMLInputElement).value;
  state.corpus = ($('corpus') as HTMLSelectElement).value;
  state.startYear = Number(($('start') as HTMLInputElement).value);
  state.endYear = Number(($('end') as HTMLInputElement).value);
  state.smoothing = Number(($('smoothing') as HTMLInputElement).value);
  state.caseInsensitive = ($('case') as HTMLInputElement).checked;
  state.normalization = ($('normalize') as HTMLSelectElement).value as ViewState['normalization'];
  state.anomalyOverlay = ($('anomaly') as HTMLInputElement).checked;
}

async function init(): Promise<void> {
  const corpora = await fetchCorpora();
  const select = $('corpus') as HTMLSelectElement;
  select.innerHTML = corpora
    .map((c) => `<option value="${c.corpus_id}">${c.corpus_id}</option>`)
    .join('');
  if (!state.corpus && corpora.length > 0) state.corpus = corpora[0]!.corpus_id;
  select.value = state.corpus;
  syncControls();

  $('controls').addEventListener('submit', (event) => {
    event.preventDefault();
    readControls();
    state.drillInterval = null;
    pushState();
    syncControls();
    void refreshSeries().then(refreshDocuments);
  });
  ($('query') as HTMLInputElement).addEventListener('input', () => {
    readControls();
    syncControls();
  });
  ($('smoothing') as HTMLInputElement).addEventListener('input', () => {
    readControls();
    syncControls();
  });

  if (phrasesOf(state).length > 0) {
    await refreshSeries();
    await refreshDocuments();
  }
}

void init();
