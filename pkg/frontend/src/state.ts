// View state and its URL-query-string round-trip. Shareable links reproduce
// the chart: serialize(parse(s)) === serialize(state) is a fixed point.

export type Normalization = 'tokens' | 'volumes';

export interface ViewState {
  query: string;
  corpus: string;
  startYear: number;
  endYear: number;
  smoothing: number;
  caseInsensitive: boolean;
  normalization: Normalization;
  /** Brushed drill-down interval, inclusive; null when nothing brushed. */
  drillInterval: [number, number] | null;
  anomalyOverlay: boolean;
}

export const DEFAULT_STATE: ViewState = {
  query: '',
  corpus: '',
  startYear: 1500,
  endYear: 2015,
  smoothing: 3,
  caseInsensitive: false,
  normalization: 'tokens',
  drillInterval: null,
  anomalyOverlay: false,
};

function intOr(value: string | null, fallback: number): number {
  if (value === null) return fallback;
  const n = Number.parseInt(value, 10);
  return Number.isFinite(n) ? n : fallback;
}

export function parseState(queryString: string): ViewState {
  const params = new URLSearchParams(queryString);
  const state: ViewState = { ...DEFAULT_STATE };
  state.query = params.get('q') ?? '';
  state.corpus = params.get('corpus') ?? '';
  state.startYear = intOr(params.get('start'), DEFAULT_STATE.startYear);
  state.endYear = intOr(params.get('end'), DEFAULT_STATE.endYear);
  state.smoothing = intOr(params.get('k'), DEFAULT_STATE.smoothing);
  state.caseInsensitive = params.get('ci') === '1';
  state.normalization = params.get('norm') === 'volumes' ? 'volumes' : 'tokens';
  state.anomalyOverlay = params.get('anom') === '1';
  const d0 = params.get('d0');
  const d1 = params.get('d1');
  if (d0 !== null && d1 !== null) {
    state.drillInterval = [intOr(d0, state.startYear), intOr(d1, state.endYear)];
  }
  return state;
}

export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.query) params.set('q', state.query);
  if (state.corpus) params.set('corpus', state.corpus);
  params.set('start', String(state.startYear));
  params.set('end', String(state.endYear));
  params.set('k', String(state.smoothing));
  if (state.caseInsensitive) params.set('ci', '1');
  if (state.normalization !== 'tokens') params.set('norm', state.normalization);
  if (state.anomalyOverlay) params.set('anom', '1');
  if (state.drillInterval) {
    params.set('d0', String(state.drillInterval[0]));
    params.set('d1', String(state.drillInterval[1]));
  }
  return params.toString();
}

/** Comma-separated phrase list with whitespace trimmed; empties dropped. */
export function phrasesOf(state: ViewState): string[] {
  return state.query
    .split(',')
    .map((p) => p.trim())
    .filter((p) => p.length > 0);
}
