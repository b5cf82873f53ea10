// Typed client for the /api/v1 JSON endpoints.

import type { ViewState } from './state.js';

export interface SeriesEntry {
  phrase: string;
  values: number[];
  missing_years: number[];
}

export interface SeriesResponse {
  corpus: string;
  start_year: number;
  end_year: number;
  smoothing: number;
  series: SeriesEntry[];
}

export interface CorpusInfo {
  corpus_id: string;
  year_span: [number, number] | null;
  max_order: number;
  document_count: number;
  has_postings: boolean;
}

export interface CompletionEntry {
  symbol: string;
  probability: number;
}

export interface CompletionResponse {
  history: string[];
  unit: 'word' | 'char';
  entries: CompletionEntry[];
  support_count: number;
}

export interface AnomalyReport {
  phrase: string;
  year: number;
  volume_count: number;
  doc_ids: string[];
  nearest_other_year: number | null;
  gap: number | null;
  note: string;
}

export interface DocumentMeta {
  doc_id: string;
  title: string;
  year: number;
  language: string | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const response = await fetch(url, { signal });
  const body = await response.json();
  if (!response.ok) {
    const err = body?.error ?? { code: 'http_error', message: response.statusText };
    throw new ApiError(response.status, err.code, err.message);
  }
  return body as T;
}

export function seriesUrl(state: ViewState): string {
  const params = new URLSearchParams({
    corpus: state.corpus,
    phrases: state.query,
    start: String(state.startYear),
    end: String(state.endYear),
    smoothing: String(state.smoothing),
    case: state.caseInsensitive ? 'insensitive' : 'sensitive',
    normalize: state.normalization,
  });
  return `/api/v1/series?${params}`;
}

export function fetchCorpora(signal?: AbortSignal): Promise<CorpusInfo[]> {
  return getJson('/api/v1/corpora', signal);
}

export function fetchSeries(state: ViewState, signal?: AbortSignal): Promise<SeriesResponse> {
  return getJson(seriesUrl(state), signal);
}

export function fetchAnomalies(
  corpus: string,
  phrase: string,
  signal?: AbortSignal,
): Promise<AnomalyReport[]> {
  const params = new URLSearchParams({ corpus, phrase });
  return getJson(`/api/v1/anomalies?${params}`, signal);
}

export function fetchDocuments(
  corpus: string,
  phrase: string,
  start: number,
  end: number,
  signal?: AbortSignal,
): Promise<DocumentMeta[]> {
  const params = new URLSearchParams({
    corpus,
    phrase,
    start: String(start),
    end: String(end),
  });
  return getJson(`/api/v1/documents?${params}`, signal);
}
