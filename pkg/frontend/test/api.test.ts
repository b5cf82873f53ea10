import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiError, fetchDocuments, fetchSeries, seriesUrl } from '../src/api.js';
import { DEFAULT_STATE, type ViewState } from '../src/state.js';

const STATE: ViewState = {
  ...DEFAULT_STATE,
  query: 'Frankenstein',
  corpus: 'gothic',
  startYear: 1500,
  endYear: 1796,
  smoothing: 0,
};

function mockFetch(status: number, body: unknown): ReturnType<typeof vi.fn> {
  const fn = vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => body,
  }));
  vi.stubGlobal('fetch', fn);
  return fn;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('seriesUrl', () => {
  it('carries every query parameter the API contract names', () => {
    const url = new URL(seriesUrl(STATE), 'http://localhost');
    expect(url.pathname).toBe('/api/v1/series');
    expect(url.searchParams.get('corpus')).toBe('gothic');
    expect(url.searchParams.get('phrases')).toBe('Frankenstein');
    expect(url.searchParams.get('start')).toBe('1500');
    expect(url.searchParams.get('end')).toBe('1796');
    expect(url.searchParams.get('smoothing')).toBe('0');
    expect(url.searchParams.get('case')).toBe('sensitive');
    expect(url.searchParams.get('normalize')).toBe('tokens');
  });

  it('reflects the case-insensitive flag', () => {
    const url = new URL(seriesUrl({ ...STATE, caseInsensitive: true }), 'http://localhost');
    expect(url.searchParams.get('case')).toBe('insensitive');
  });
});

describe('fetchSeries', () => {
  it('returns the payload untouched', async () => {
    const payload = {
      corpus: 'gothic',
      start_year: 1500,
      end_year: 1796,
      smoothing: 0,
      series: [{ phrase: 'Frankenstein', values: [0.1], missing_years: [] }],
    };
    mockFetch(200, payload);
    expect(await fetchSeries(STATE)).toEqual(payload);
  });

  it('maps API error envelopes to ApiError', async () => {
    mockFetch(400, { error: { code: 'parse_error', message: 'empty query' } });
    await expect(fetchSeries(STATE)).rejects.toMatchObject({
      status: 400,
      code: 'parse_error',
      message: 'empty query',
    });
  });
});

describe('fetchDocuments', () => {
  it('surfaces the 409 capability error distinctly', async () => {
    mockFetch(409, {
      error: { code: 'capability_missing', message: 'postings not available' },
    });
    const err = await fetchDocuments('imported', 'cat', 1500, 1900).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe('capability_missing');
  });
});
